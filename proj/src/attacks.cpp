#include "svc/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svc {

TargetSet::TargetSet(int n, std::vector<std::uint32_t> members)
    : n_(n), members_(std::move(members)) {
  if (n < 1 || n > max_exact_bits()) throw DimensionError("target set width out of range");
  if (members_.empty()) throw std::invalid_argument("target set must be non-empty");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.back() >> n) {
    throw DimensionError("target member " + std::to_string(members_.back()) +
                         " does not fit in " + std::to_string(n) + " bits");
  }
}

TargetSet TargetSet::from_mask(int n, std::uint64_t mask) {
  if (n < 1 || n > 6) throw DimensionError("mask-encoded sets support n <= 6");
  std::vector<std::uint32_t> members;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    if ((mask >> x) & 1u) members.push_back(x);
  }
  return TargetSet(n, std::move(members));
}

PrefixAdversary greedy_sv_for_set(const TargetSet& target, double delta) {
  SVParams params(target.n(), delta);
  const int n = target.n();
  // count[L][u] = |{v : uv in A}| for prefixes u of length L.
  std::vector<std::vector<std::uint32_t>> count(static_cast<std::size_t>(n) + 1);
  count[n].assign(std::size_t{1} << n, 0);
  for (std::uint32_t x : target.members()) count[n][x] = 1;
  for (int len = n - 1; len >= 0; --len) {
    count[len].resize(std::size_t{1} << len);
    for (std::size_t u = 0; u < count[len].size(); ++u) {
      count[len][u] = count[len + 1][2 * u] + count[len + 1][2 * u + 1];
    }
  }
  std::vector<double> table((std::size_t{1} << n) - 1);
  for (int len = 0; len < n; ++len) {
    std::size_t base = (std::size_t{1} << len) - 1;
    const auto& child = count[len + 1];
    for (std::size_t u = 0; u < (std::size_t{1} << len); ++u) {
      bool favor_zero = child[2 * u] >= child[2 * u + 1];
      table[base + u] = favor_zero ? params.p() : params.q();
    }
  }
  return PrefixAdversary(n, delta, std::move(table));
}

double set_mass(const JointDistribution& mu, const TargetSet& target) {
  if (mu.n() != target.n()) throw DimensionError("target set and distribution widths differ");
  std::vector<double> terms;
  terms.reserve(target.size());
  for (std::uint32_t x : target.members()) terms.push_back(mu[x]);
  return compensated_sum(terms);
}

double lemma_mass_bound(int n, std::size_t set_size, double delta) {
  SVParams params(n, delta);
  double exponent = n - std::log2(static_cast<double>(set_size));
  return std::exp(exponent * std::log(params.q()));
}

LemmaCheck verify_lemma_e1(const TargetSet& target, double delta) {
  JointDistribution mu = materialize(greedy_sv_for_set(target, delta));
  LemmaCheck check{set_mass(mu, target), lemma_mass_bound(target.n(), target.size(), delta),
                   false};
  check.holds = check.mass >= check.bound - kMassTolerance;
  return check;
}

bool AttackResult::holds() const {
  return target_set_mass >= lemma_bound - kMassTolerance &&
         achieved_min_entropy <= theorem_bound + kEntropyTolerance;
}

AttackResult attack_condenser(const CondenserMap& f, double delta) {
  SVParams params(f.n(), delta);
  CondenserMap table = f.tabulate();
  const auto& outputs = table.table_body()->outputs;
  std::vector<std::uint32_t> fiber_sizes(std::size_t{1} << f.m(), 0);
  for (std::uint32_t y : outputs) ++fiber_sizes[y];
  // max_element returns the first maximum, i.e. the smallest output value.
  auto best = std::max_element(fiber_sizes.begin(), fiber_sizes.end());
  const auto s = static_cast<std::uint32_t>(best - fiber_sizes.begin());

  std::vector<std::uint32_t> fiber;
  fiber.reserve(*best);
  for (std::uint32_t x = 0; x < outputs.size(); ++x) {
    if (outputs[x] == s) fiber.push_back(x);
  }
  TargetSet target(f.n(), std::move(fiber));
  PrefixAdversary adversary = greedy_sv_for_set(target, delta);
  JointDistribution mu = materialize(adversary);
  double achieved = min_entropy(pushforward(mu, table));
  return AttackResult{adversary,
                      s,
                      target.size(),
                      set_mass(mu, target),
                      lemma_mass_bound(f.n(), target.size(), delta),
                      achieved,
                      f.m() * std::log2(1.0 / params.q())};
}

}  // namespace svc
