#include "svc/bitdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "svc/random.hpp"

namespace svc {

int max_exact_bits() {
  if (const char* env = std::getenv("SVC_MAX_N")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<int>(std::min<long>(v, kHardMaxBits));
    }
  }
  return kDefaultMaxExactBits;
}

namespace {

void check_width(int n, int lo, const char* what) {
  if (n < lo || n > kHardMaxBits) {
    throw DimensionError(std::string(what) + ": bit width " + std::to_string(n) +
                         " outside [" + std::to_string(lo) + ", " +
                         std::to_string(kHardMaxBits) + "]");
  }
}

void check_exact(int n) {
  check_width(n, 1, "distribution");
  if (n > max_exact_bits()) {
    throw DimensionError("n = " + std::to_string(n) + " exceeds the exact-analysis cap of " +
                         std::to_string(max_exact_bits()) + " (set SVC_MAX_N to raise it)");
  }
}

}  // namespace

BitString::BitString(int n_bits, std::uint32_t v) : n(n_bits), value(v) {
  check_width(n, 0, "bit string");
  if (n < 32 && (value >> n) != 0) {
    throw DimensionError("value " + std::to_string(value) + " does not fit in " +
                         std::to_string(n) + " bits");
  }
}

BitString BitString::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kHardMaxBits)) {
    throw DimensionError("bit string longer than " + std::to_string(kHardMaxBits));
  }
  std::uint32_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
    }
    v = (v << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return BitString(static_cast<int>(text.size()), v);
}

bool BitString::bit(int i) const {
  if (i < 1 || i > n) throw std::out_of_range("bit index " + std::to_string(i));
  return ((value >> (n - i)) & 1u) != 0;
}

BitString BitString::unit(int n, int i) {
  if (i < 0 || i > n) throw std::out_of_range("unit vector index " + std::to_string(i));
  return i == 0 ? BitString(n, 0) : BitString(n, 1u << (n - i));
}

BitString BitString::operator^(const BitString& other) const {
  if (other.n != n) throw DimensionError("xor of bit strings with different lengths");
  return BitString(n, value ^ other.value);
}

std::string BitString::to_string() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 1; i <= n; ++i) {
    if (bit(i)) s[static_cast<std::size_t>(i - 1)] = '1';
  }
  return s;
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

JointDistribution::JointDistribution(int n, std::vector<double> probs)
    : n_(n), probs_(std::move(probs)) {
  check_exact(n_);
  if (probs_.size() != (std::size_t{1} << n_)) {
    throw DimensionError("expected 2^" + std::to_string(n_) + " probabilities, got " +
                         std::to_string(probs_.size()));
  }
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    if (!(probs_[x] >= 0.0) || !std::isfinite(probs_[x])) {
      throw std::invalid_argument("probability at index " + std::to_string(x) +
                                  " is negative or not finite");
    }
  }
  double total = compensated_sum(probs_);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

JointDistribution JointDistribution::uniform(int n) {
  check_exact(n);
  std::size_t size = std::size_t{1} << n;
  return JointDistribution(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

JointDistribution JointDistribution::point_mass(int n, std::uint32_t x) {
  check_exact(n);
  std::vector<double> p(std::size_t{1} << n, 0.0);
  if (x >= p.size()) throw DimensionError("point mass outside the cube");
  p[x] = 1.0;
  return JointDistribution(n, std::move(p));
}

JointDistribution JointDistribution::from_weights(int n, std::vector<double> weights) {
  double total = compensated_sum(weights);
  if (!(total > 0.0)) throw std::invalid_argument("weights have no positive mass");
  for (double& w : weights) w /= total;
  return JointDistribution(n, std::move(weights));
}

double min_entropy(const JointDistribution& mu) {
  auto probs = mu.probs();
  return -std::log2(*std::max_element(probs.begin(), probs.end()));
}

double shannon_entropy(std::span<const double> probs) {
  std::vector<double> terms;
  terms.reserve(probs.size());
  for (double p : probs) {
    if (p > 0.0) terms.push_back(-p * std::log2(p));
  }
  return compensated_sum(terms);
}

double shannon_entropy(const JointDistribution& mu) { return shannon_entropy(mu.probs()); }

double l1_distance(const JointDistribution& mu, const JointDistribution& nu) {
  if (mu.n() != nu.n()) {
    throw DimensionError("l1 distance between " + std::to_string(mu.n()) + "-bit and " +
                         std::to_string(nu.n()) + "-bit distributions");
  }
  std::vector<double> diff(mu.size());
  for (std::size_t x = 0; x < diff.size(); ++x) diff[x] = std::abs(mu.probs()[x] - nu.probs()[x]);
  return compensated_sum(diff);
}

double l1_distance_to_uniform(std::span<const double> probs) {
  double u = 1.0 / static_cast<double>(probs.size());
  std::vector<double> diff(probs.size());
  for (std::size_t x = 0; x < probs.size(); ++x) diff[x] = std::abs(probs[x] - u);
  return compensated_sum(diff);
}

JointDistribution pushforward(const JointDistribution& mu, int m,
                              const std::function<std::uint32_t(std::uint32_t)>& f) {
  check_exact(m);
  std::vector<double> out(std::size_t{1} << m, 0.0);
  std::vector<double> comp(out.size(), 0.0);
  auto probs = mu.probs();
  for (std::uint32_t x = 0; x < probs.size(); ++x) {
    std::uint32_t y = f(x);
    if (y >= out.size()) {
      throw DimensionError("map output " + std::to_string(y) + " does not fit in " +
                           std::to_string(m) + " bits");
    }
    // Kahan step per output cell.
    double v = probs[x] - comp[y];
    double t = out[y] + v;
    comp[y] = (t - out[y]) - v;
    out[y] = t;
  }
  return JointDistribution(m, std::move(out));
}

JointDistribution condition_on_prefix(const JointDistribution& mu, const BitString& prefix) {
  if (prefix.n >= mu.n()) {
    throw DimensionError("prefix of length " + std::to_string(prefix.n) +
                         " leaves no suffix of a " + std::to_string(mu.n()) + "-bit string");
  }
  int rest = mu.n() - prefix.n;
  std::size_t width = std::size_t{1} << rest;
  auto all = mu.probs();
  auto slice = all.subspan(static_cast<std::size_t>(prefix.value) * width, width);
  double mass = compensated_sum(slice);
  if (!(mass > 0.0)) {
    throw InconsistentConditioning("prefix '" + prefix.to_string() + "' has zero mass");
  }
  return JointDistribution::from_weights(rest, std::vector<double>(slice.begin(), slice.end()));
}

JointDistribution random_distribution(int n, std::uint64_t seed) {
  check_exact(n);
  SeededRng rng(seed);
  std::vector<double> weights(std::size_t{1} << n);
  for (double& w : weights) {
    w = rng.below(8) == 0 ? 0.0 : -std::log(1.0 - rng.uniform01());
  }
  if (compensated_sum(weights) <= 0.0) weights[rng.below(weights.size())] = 1.0;
  return JointDistribution::from_weights(n, std::move(weights));
}

JointDistribution marginal_prefix(const JointDistribution& mu, int bits) {
  if (bits < 1 || bits > mu.n()) throw DimensionError("marginal width out of range");
  int shift = mu.n() - bits;
  return pushforward(mu, bits, [shift](std::uint32_t x) { return x >> shift; });
}

std::uint32_t insert_bit(const BitString& rest, int i, bool b) {
  int n = rest.n + 1;
  if (i < 1 || i > n) throw std::out_of_range("coordinate " + std::to_string(i));
  int low_bits = n - i;
  std::uint32_t low = rest.value & ((1u << low_bits) - 1u);
  std::uint32_t high = rest.value >> low_bits;
  return (((high << 1) | static_cast<std::uint32_t>(b)) << low_bits) | low;
}

std::optional<double> conditional_bit_given_rest(const JointDistribution& mu, int i,
                                                 const BitString& rest) {
  if (rest.n != mu.n() - 1) {
    throw DimensionError("rest assignment must cover the other " + std::to_string(mu.n() - 1) +
                         " coordinates");
  }
  double zero = mu[insert_bit(rest, i, false)];
  double one = mu[insert_bit(rest, i, true)];
  if (!(zero + one > 0.0)) return std::nullopt;
  return one / (zero + one);
}

}  // namespace svc
