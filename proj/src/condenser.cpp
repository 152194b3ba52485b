#include "svc/condenser.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "svc/sv_models.hpp"

namespace svc {

Bits bits_from_string(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit sequence contains '" + std::string(1, c) + "'");
    }
    bits.push_back(c == '1');
  }
  return bits;
}

std::string to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Bits unpack_bits(std::span<const std::uint8_t> bytes) {
  Bits bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back(((byte >> i) & 1) != 0);
  }
  return bits;
}

std::vector<std::uint8_t> pack_bits(const Bits& bits) {
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bytes.size() * 8; ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return bytes;
}

CondenserMap CondenserMap::structured(int d, int k) {
  HammingCode code(d);
  if (k < 1) throw std::invalid_argument("block count k must be positive");
  return CondenserMap(k * code.block_len(), k * d, Structured{d, k});
}

CondenserMap CondenserMap::structured_for_width(int d, int n) {
  HammingCode code(d);
  if (n <= 0 || n % code.block_len() != 0) {
    throw DimensionError("input width " + std::to_string(n) + " is not a positive multiple of " +
                         std::to_string(code.block_len()));
  }
  return structured(d, n / code.block_len());
}

CondenserMap CondenserMap::table(int n, int m, std::vector<std::uint32_t> outputs) {
  if (n < 1 || n > max_exact_bits()) {
    throw DimensionError("table input width " + std::to_string(n) + " outside [1, " +
                         std::to_string(max_exact_bits()) + "]");
  }
  if (m < 1 || m > kHardMaxBits) {
    throw DimensionError("table output width " + std::to_string(m) + " outside [1, " +
                         std::to_string(kHardMaxBits) + "]");
  }
  if (outputs.size() != (std::size_t{1} << n)) {
    throw DimensionError("table needs 2^" + std::to_string(n) + " entries, got " +
                         std::to_string(outputs.size()));
  }
  for (std::size_t x = 0; x < outputs.size(); ++x) {
    if (outputs[x] >> m) {
      throw DimensionError("table entry " + std::to_string(x) + " = " +
                           std::to_string(outputs[x]) + " exceeds " + std::to_string(m) +
                           " bits");
    }
  }
  return CondenserMap(n, m, Table{std::move(outputs)});
}

std::uint32_t CondenserMap::operator()(std::uint32_t x) const {
  if (const auto* t = table_body()) return t->outputs.at(x);
  const auto& s = std::get<Structured>(body_);
  if (n_ > kHardMaxBits) throw DimensionError("structured map too wide for integer evaluation");
  HammingCode code(s.d);
  const int len = code.block_len();
  const std::uint32_t mask = (1u << len) - 1u;
  std::uint32_t y = 0;
  for (int b = 0; b < s.k; ++b) {
    std::uint32_t block = (x >> ((s.k - 1 - b) * len)) & mask;
    y = (y << s.d) | code.syndrome_of_value(block);
  }
  return y;
}

CondenserMap CondenserMap::tabulate() const {
  if (table_body()) return *this;
  if (n_ > max_exact_bits()) throw DimensionError("map too wide to tabulate");
  std::vector<std::uint32_t> outputs(std::size_t{1} << n_);
  for (std::uint32_t x = 0; x < outputs.size(); ++x) outputs[x] = (*this)(x);
  return table(n_, m_, std::move(outputs));
}

bool CondenserMap::same_function(const CondenserMap& other) const {
  if (n_ != other.n_ || m_ != other.m_) return false;
  if (n_ > max_exact_bits()) throw DimensionError("map too wide to compare exhaustively");
  for (std::uint32_t x = 0; x < (1u << n_); ++x) {
    if ((*this)(x) != other(x)) return false;
  }
  return true;
}

JointDistribution pushforward(const JointDistribution& mu, const CondenserMap& f) {
  if (f.n() != mu.n()) {
    throw DimensionError("map expects " + std::to_string(f.n()) + " input bits, distribution has " +
                         std::to_string(mu.n()));
  }
  return pushforward(mu, f.m(), [&f](std::uint32_t x) { return f(x); });
}

Bits condense(int d, const Bits& input) {
  HammingCode code(d);
  const std::size_t len = static_cast<std::size_t>(code.block_len());
  if (input.empty() || input.size() % len != 0) {
    throw DimensionError("input length " + std::to_string(input.size()) +
                         " is not a positive multiple of " + std::to_string(len));
  }
  Bits out;
  out.reserve(input.size() / len * static_cast<std::size_t>(d));
  for (std::size_t start = 0; start < input.size(); start += len) {
    // M_d x: column j is binary(j), so the syndrome XORs the set positions.
    std::uint32_t syndrome = 0;
    for (std::size_t j = 1; j <= len; ++j) {
      if (input[start + j - 1]) syndrome ^= static_cast<std::uint32_t>(j);
    }
    for (int r = d - 1; r >= 0; --r) out.push_back(((syndrome >> r) & 1u) != 0);
  }
  return out;
}

StreamCondenser::StreamCondenser(int d)
    : code_(d), block_(static_cast<std::size_t>(code_.words_per_block()), 0) {}

void StreamCondenser::emit(std::uint32_t syndrome, std::vector<std::uint8_t>& out) {
  out_acc_ = (out_acc_ << code_.d()) | syndrome;
  out_bits_ += code_.d();
  while (out_bits_ >= 8) {
    out_bits_ -= 8;
    out.push_back(static_cast<std::uint8_t>(out_acc_ >> out_bits_));
    ++stats_.bytes_out;
  }
  out_acc_ &= (std::uint64_t{1} << out_bits_) - 1;
  ++stats_.blocks;
}

void StreamCondenser::feed(std::span<const std::uint8_t> in, std::vector<std::uint8_t>& out) {
  if (finished_) throw std::logic_error("StreamCondenser fed after finish()");
  const int len = code_.block_len();
  for (std::uint8_t byte : in) {
    int avail = 8;
    while (avail > 0) {
      int take = std::min(avail, len - filled_);
      std::uint64_t chunk = (static_cast<std::uint64_t>(byte) >> (avail - take)) &
                            ((std::uint64_t{1} << take) - 1);
      // Place `take` bits at block positions filled_ .. filled_ + take - 1.
      int word = filled_ / 64;
      int offset = filled_ % 64;
      int spill = offset + take - 64;
      if (spill <= 0) {
        block_[static_cast<std::size_t>(word)] |= chunk << (64 - offset - take);
      } else {
        block_[static_cast<std::size_t>(word)] |= chunk >> spill;
        block_[static_cast<std::size_t>(word) + 1] |= chunk << (64 - spill);
      }
      filled_ += take;
      avail -= take;
      if (filled_ == len) {
        emit(code_.syndrome(block_), out);
        std::fill(block_.begin(), block_.end(), 0);
        filled_ = 0;
      }
    }
  }
  stats_.bytes_in += in.size();
}

StreamStats StreamCondenser::finish() {
  finished_ = true;
  stats_.input_tail_bits = filled_;
  stats_.output_tail_bits = out_bits_;
  return stats_;
}

StreamStats condense_stream(int d, std::istream& in, std::ostream& out) {
  StreamCondenser condenser(d);
  std::array<char, 1 << 16> buffer{};
  std::vector<std::uint8_t> produced;
  while (in) {
    in.read(buffer.data(), buffer.size());
    std::streamsize got = in.gcount();
    if (in.bad()) throw std::ios_base::failure("read error on condenser input");
    if (got <= 0) break;
    produced.clear();
    condenser.feed(std::span(reinterpret_cast<const std::uint8_t*>(buffer.data()),
                             static_cast<std::size_t>(got)),
                   produced);
    out.write(reinterpret_cast<const char*>(produced.data()),
              static_cast<std::streamsize>(produced.size()));
    if (!out) throw std::ios_base::failure("write error on condenser output");
  }
  out.flush();
  if (!out) throw std::ios_base::failure("write error on condenser output");
  return condenser.finish();
}

std::vector<std::uint8_t> condense_bytes(int d, std::span<const std::uint8_t> in,
                                         StreamStats* stats) {
  StreamCondenser condenser(d);
  std::vector<std::uint8_t> out;
  out.reserve(in.size() * static_cast<std::size_t>(d) /
              static_cast<std::size_t>(condenser.code().block_len()) + 1);
  condenser.feed(in, out);
  StreamStats s = condenser.finish();
  if (stats) *stats = s;
  return out;
}

double imbalance_ratio(const JointDistribution& nu) {
  auto [lo, hi] = std::minmax_element(nu.probs().begin(), nu.probs().end());
  if (*lo <= 0.0) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

RateBound theoretical_rate(int d, double delta) {
  HammingCode code(d);
  check_delta(delta);
  double compression = static_cast<double>(d) / static_cast<double>(code.block_len());
  double rate = 1.0 - std::log2((1.0 + delta) / (1.0 - delta)) / static_cast<double>(d);
  return RateBound{compression, rate, rate <= 0.0};
}

CondenserReport analyze_condenser(const CondenserMap& h, const JointDistribution& mu,
                                  double delta) {
  SVParams params(mu.n(), delta);
  JointDistribution nu = pushforward(mu, h);
  CondenserReport r{};
  r.input_min_entropy = min_entropy(mu);
  r.input_rate = r.input_min_entropy / mu.n();
  r.output_min_entropy = min_entropy(nu);
  r.output_rate = r.output_min_entropy / h.m();
  r.imbalance_ratio = imbalance_ratio(nu);
  r.source_is_strong_sv = static_cast<bool>(is_strong_sv(mu, delta));

  if (const auto* s = h.structured_body()) {
    r.rate_bound = theoretical_rate(s->d, delta).rate_bound;
    r.min_entropy_bound = *r.rate_bound * h.m();
    if (r.source_is_strong_sv) {
      r.rate_bound_holds = r.output_rate >= *r.rate_bound - kEntropyTolerance;
    }
  }
  const double ratio = params.edge_ratio();
  if (r.imbalance_ratio <= ratio + kEntropyTolerance) {
    r.imbalance_floor = h.m() - std::log2(ratio);
    r.imbalance_floor_holds = r.output_min_entropy >= *r.imbalance_floor - kEntropyTolerance;
  }
  return r;
}

}  // namespace svc
