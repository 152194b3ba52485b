#pragma once

// The blockwise Hamming-syndrome condenser f_d and its analysis.
//
// f_d splits an input of k(2^d - 1) bits into k blocks and replaces each block
// with its d-bit syndrome, so n bits become k*d bits. For a strong SV source
// of bias delta each syndrome is delta-imbalanced, which yields output
// min-entropy rate at least 1 - log2((1+delta)/(1-delta)) / d.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "svc/bitdist.hpp"
#include "svc/hamming.hpp"

namespace svc {

using Bits = std::vector<bool>;

Bits bits_from_string(std::string_view text);
std::string to_string(const Bits& bits);
/// MSB-first within each byte.
Bits unpack_bits(std::span<const std::uint8_t> bytes);
/// Packs MSB-first; a trailing partial byte is dropped.
std::vector<std::uint8_t> pack_bits(const Bits& bits);

/// A map {0,1}^n -> {0,1}^m, either f_d over k blocks or an explicit table.
class CondenserMap {
 public:
  struct Structured {
    int d;
    int k;
  };
  struct Table {
    std::vector<std::uint32_t> outputs;
  };

  static CondenserMap structured(int d, int k);
  /// f_d sized to consume exactly n input bits; n must be a multiple of 2^d - 1.
  static CondenserMap structured_for_width(int d, int n);
  static CondenserMap table(int n, int m, std::vector<std::uint32_t> outputs);

  int n() const { return n_; }
  int m() const { return m_; }
  const Structured* structured_body() const { return std::get_if<Structured>(&body_); }
  const Table* table_body() const { return std::get_if<Table>(&body_); }

  /// Evaluates the map; requires n <= kHardMaxBits.
  std::uint32_t operator()(std::uint32_t x) const;

  /// Explicit table form of the same function.
  CondenserMap tabulate() const;
  /// True when both maps agree on every input.
  bool same_function(const CondenserMap& other) const;

 private:
  CondenserMap(int n, int m, std::variant<Structured, Table> body)
      : n_(n), m_(m), body_(std::move(body)) {}

  int n_;
  int m_;
  std::variant<Structured, Table> body_;
};

JointDistribution pushforward(const JointDistribution& mu, const CondenserMap& f);

/// g_d(y_1) ... g_d(y_k); the input length must be a positive multiple of 2^d - 1.
Bits condense(int d, const Bits& input);

struct StreamStats {
  std::uint64_t blocks = 0;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  /// Input bits left over after the last complete block.
  int input_tail_bits = 0;
  /// Output syndrome bits that did not fill a final byte.
  int output_tail_bits = 0;

  int dropped_bits() const { return input_tail_bits + output_tail_bits; }
};

/// Incremental f_d over a byte stream. Bits are read MSB-first, grouped into
/// blocks of 2^d - 1, and the syndromes are repacked MSB-first into bytes.
/// Incomplete trailing blocks and bytes are dropped and counted, never padded.
class StreamCondenser {
 public:
  explicit StreamCondenser(int d);

  /// Appends finished output bytes to `out`.
  void feed(std::span<const std::uint8_t> in, std::vector<std::uint8_t>& out);
  /// Ends the stream; the instance must not be fed afterwards.
  StreamStats finish();

  const HammingCode& code() const { return code_; }

 private:
  void emit(std::uint32_t syndrome, std::vector<std::uint8_t>& out);

  HammingCode code_;
  std::vector<std::uint64_t> block_;
  int filled_ = 0;
  std::uint64_t out_acc_ = 0;
  int out_bits_ = 0;
  StreamStats stats_;
  bool finished_ = false;
};

/// Streams `in` to `out` through f_d. Throws std::ios_base::failure on I/O errors.
StreamStats condense_stream(int d, std::istream& in, std::ostream& out);

/// In-memory convenience wrapper around StreamCondenser.
std::vector<std::uint8_t> condense_bytes(int d, std::span<const std::uint8_t> in,
                                         StreamStats* stats = nullptr);

/// max / min entry; +infinity when some entry is zero.
double imbalance_ratio(const JointDistribution& nu);

struct RateBound {
  double compression;  // d / (2^d - 1)
  double rate_bound;   // 1 - log2((1+delta)/(1-delta)) / d
  bool vacuous;        // rate_bound <= 0
};

RateBound theoretical_rate(int d, double delta);

struct CondenserReport {
  double input_min_entropy;
  double input_rate;
  double output_min_entropy;
  double output_rate;
  double imbalance_ratio;
  bool source_is_strong_sv;
  /// Guaranteed output min-entropy rate; structured bodies only.
  std::optional<double> rate_bound;
  /// rate_bound * m, in bits.
  std::optional<double> min_entropy_bound;
  /// m - log2((1+delta)/(1-delta)); set when the output is delta-imbalanced.
  std::optional<double> imbalance_floor;
  /// Checks that apply hold (vacuously true otherwise).
  bool rate_bound_holds = true;
  bool imbalance_floor_holds = true;
};

CondenserReport analyze_condenser(const CondenserMap& h, const JointDistribution& mu,
                                  double delta);

}  // namespace svc
