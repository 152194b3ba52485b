#pragma once

// Greedy SV adversary and the attack on arbitrary condensers.
//
// For a target set A the adversary walks the prefix tree and, at every prefix
// u, gives probability q to the branch that keeps more of A reachable (the
// 0-branch on ties). The resulting SV distribution puts mass at least
// q^(n - log2|A|) on A. Applied to the largest fiber of a map F:{0,1}^n ->
// {0,1}^m this forces Pr[F(X) = s] >= q^m, so no map can raise the min-entropy
// rate of every SV source above log2(2/(1+delta)).

#include <cstdint>
#include <span>
#include <vector>

#include "svc/bitdist.hpp"
#include "svc/condenser.hpp"
#include "svc/sv_models.hpp"

namespace svc {

/// A non-empty set of n-bit strings, stored sorted and deduplicated.
class TargetSet {
 public:
  TargetSet(int n, std::vector<std::uint32_t> members);
  /// Subset of {0,1}^n selected by the set bits of `mask` (n <= 6).
  static TargetSet from_mask(int n, std::uint64_t mask);

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  std::span<const std::uint32_t> members() const { return members_; }

 private:
  int n_;
  std::vector<std::uint32_t> members_;
};

PrefixAdversary greedy_sv_for_set(const TargetSet& target, double delta);

double set_mass(const JointDistribution& mu, const TargetSet& target);

/// q^(n - log2|A|) with a real exponent.
double lemma_mass_bound(int n, std::size_t set_size, double delta);

struct LemmaCheck {
  double mass;
  double bound;
  bool holds;
};

LemmaCheck verify_lemma_e1(const TargetSet& target, double delta);

struct AttackResult {
  PrefixAdversary adversary;
  std::uint32_t target_output;
  std::size_t fiber_size;
  double target_set_mass;
  double lemma_bound;
  double achieved_min_entropy;
  double theorem_bound;  // m * log2(2/(1+delta))

  bool holds() const;
};

/// Attacks the largest fiber of F (smallest output value on ties).
AttackResult attack_condenser(const CondenserMap& f, double delta);

}  // namespace svc
