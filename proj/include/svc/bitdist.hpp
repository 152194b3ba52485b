#pragma once

// Exact probability distributions over fixed-length bit strings.
//
// Bit order convention used everywhere in this library: for an n-bit string
// x = x_1 x_2 ... x_n, x_1 is the MOST significant bit of the integer
// encoding. A prefix x_1..x_i therefore selects a contiguous index range.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svc {

/// Hard ceiling on bit widths the library will represent.
inline constexpr int kHardMaxBits = 24;
/// Default cap on exact (fully enumerated) analysis.
inline constexpr int kDefaultMaxExactBits = 20;

/// Tolerance for probability-mass checks.
inline constexpr double kMassTolerance = 1e-9;
/// Tolerance for entropy identities and bound comparisons.
inline constexpr double kEntropyTolerance = 1e-6;

/// Cap on exact analysis: kDefaultMaxExactBits unless SVC_MAX_N is set
/// (clamped to kHardMaxBits).
int max_exact_bits();

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InconsistentConditioning : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct BitString {
  int n = 0;
  std::uint32_t value = 0;

  BitString() = default;
  BitString(int n, std::uint32_t value);

  /// Parses "0101"-style text; the empty string is the empty prefix.
  static BitString parse(std::string_view text);

  /// x_i, 1-indexed from the most significant bit.
  bool bit(int i) const;
  /// Unit vector e_i of length n; e_0 is the zero vector.
  static BitString unit(int n, int i);

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString&) const = default;

  std::string to_string() const;
};

/// Sum with Neumaier compensation.
double compensated_sum(std::span<const double> values);

class JointDistribution {
 public:
  /// Validates non-negativity and unit total mass (within kMassTolerance).
  JointDistribution(int n, std::vector<double> probs);

  static JointDistribution uniform(int n);
  static JointDistribution point_mass(int n, std::uint32_t x);
  /// Normalizes arbitrary non-negative weights; throws if they sum to zero.
  static JointDistribution from_weights(int n, std::vector<double> weights);

  int n() const { return n_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::uint32_t x) const { return probs_[x]; }

  bool operator==(const JointDistribution&) const = default;

 private:
  int n_;
  std::vector<double> probs_;
};

double min_entropy(const JointDistribution& mu);
double shannon_entropy(const JointDistribution& mu);
/// Shannon entropy of an arbitrary probability vector (0 log 0 = 0).
double shannon_entropy(std::span<const double> probs);

/// Sum of absolute differences; statistical distance is half of this.
double l1_distance(const JointDistribution& mu, const JointDistribution& nu);
/// l1 distance from the uniform distribution on the same cube.
double l1_distance_to_uniform(std::span<const double> probs);

/// Distribution of f(X) over m-bit strings, X ~ mu.
JointDistribution pushforward(const JointDistribution& mu, int m,
                              const std::function<std::uint32_t(std::uint32_t)>& f);

/// Distribution of X_{i..n} given X_1..X_{i-1} = prefix.
JointDistribution condition_on_prefix(const JointDistribution& mu, const BitString& prefix);

/// Seeded random distribution: exponential weights, with roughly one entry in
/// eight zeroed (the result always keeps at least one positive entry).
JointDistribution random_distribution(int n, std::uint64_t seed);

/// Marginal of the first `bits` coordinates.
JointDistribution marginal_prefix(const JointDistribution& mu, int bits);

/// Inserts bit `b` at position i (1-indexed from MSB) of an (n-1)-bit `rest`,
/// yielding an n-bit value.
std::uint32_t insert_bit(const BitString& rest, int i, bool b);

/// Pr[X_i = 1 | all other coordinates = rest]; nullopt when both completions
/// carry zero mass. `rest` lists the other n-1 coordinates in order.
std::optional<double> conditional_bit_given_rest(const JointDistribution& mu, int i,
                                                 const BitString& rest);

}  // namespace svc
