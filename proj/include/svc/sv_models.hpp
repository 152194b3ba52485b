#pragma once

// Santha-Vazirani (SV) and strong SV distribution models.
//
// A distribution is SV with bias delta when every next-bit conditional given
// the preceding bits lies in [p, q] = [(1-delta)/2, (1+delta)/2]. It is strong
// SV when the same holds conditioning on all the other n-1 bits, which is
// equivalent to mu(x ^ e_i) / mu(x) <= q / p on every hypercube edge.
//
// Conditioning events of zero mass are skipped: the conditional is undefined
// there and treated as compliant.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "svc/bitdist.hpp"

namespace svc {

struct SVParams {
  int n;
  double delta;

  SVParams(int n, double delta);

  double p() const { return (1.0 - delta) / 2.0; }
  double q() const { return (1.0 + delta) / 2.0; }
  /// q / p, the largest allowed ratio across a hypercube edge.
  double edge_ratio() const { return q() / p(); }
};

/// Throws std::invalid_argument unless 0 <= delta < 1.
void check_delta(double delta);

/// Next-bit strategy for every prefix of length 0..n-1.
///
/// Prefix u of length L is stored at index (2^L - 1) + value(u), so the root
/// is index 0 and the table has 2^n - 1 entries.
class PrefixAdversary {
 public:
  /// Validates that every probability lies in [p, q] up to kMassTolerance.
  PrefixAdversary(int n, double delta, std::vector<double> prob_one);

  int n() const { return n_; }
  double delta() const { return delta_; }
  /// Pr[next bit = 1 | prefix].
  double prob_one(const BitString& prefix) const;
  std::span<const double> table() const { return prob_one_; }

  static std::size_t index_of(const BitString& prefix) {
    return ((std::size_t{1} << prefix.n) - 1) + prefix.value;
  }

 private:
  int n_;
  double delta_;
  std::vector<double> prob_one_;
};

struct PrefixViolation {
  int i;             // 1-indexed coordinate being predicted
  BitString prefix;  // x_1..x_{i-1}
  double prob_one;
};

struct EdgeViolation {
  int i;
  BitString rest;  // the other n-1 coordinates, in order
  double prob_one;
};

struct SVCheck {
  std::optional<PrefixViolation> violation;
  explicit operator bool() const { return !violation; }
};

struct StrongSVCheck {
  std::optional<EdgeViolation> violation;
  explicit operator bool() const { return !violation; }
};

SVCheck is_sv(const JointDistribution& mu, double delta);
StrongSVCheck is_strong_sv(const JointDistribution& mu, double delta);

JointDistribution iid_biased(int n, double p1);

JointDistribution materialize(const PrefixAdversary& adversary);

/// Reads the next-bit conditionals of mu back into a strategy. Zero-mass
/// prefixes get 1/2. Throws if mu is not SV at bias delta.
PrefixAdversary extract_strategy(const JointDistribution& mu, double delta);

/// Distribution proportional to exp(ln(q/p) * potential(x)). Throws unless
/// |potential(x) - potential(x ^ e_i)| <= 1 on every edge.
JointDistribution from_potential(int n, double delta, std::span<const double> potential);

/// Seeded strong-SV generator: potential(x) = sum_i a_i x_i plus clipped
/// pairwise terms, rescaled so the steepest hypercube edge has difference
/// exactly 1. Deterministic per (n, delta, seed).
JointDistribution random_potential_strong_sv(int n, double delta, std::uint64_t seed);

/// Seeded SV adversary with per-prefix probabilities drawn from [p, q]; about
/// a third of the entries are pinned to the extremes p or q.
PrefixAdversary random_prefix_adversary(int n, double delta, std::uint64_t seed);

}  // namespace svc
