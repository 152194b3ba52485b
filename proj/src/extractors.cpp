#include "svc/extractors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace svc {

namespace {

constexpr double kLog2E = std::numbers::log2e;

void check_vse_size(const SeededMap& g, const JointDistribution& mu) {
  if (g.n() != mu.n()) {
    throw DimensionError("seeded map expects " + std::to_string(g.n()) +
                         " input bits, distribution has " + std::to_string(mu.n()));
  }
  if (g.n() > kMaxVseInputBits || g.seeds() * g.m_out() > kMaxVseOutputBits) {
    throw DimensionError("instance too large for exact evaluation (n <= " +
                         std::to_string(kMaxVseInputBits) + ", D*m_out <= " +
                         std::to_string(kMaxVseOutputBits) + ")");
  }
}

// For seed t, joint[key * 2^m_out + y] = Pr[g(X,1..t-1) = key, g(X,t) = y],
// where key concatenates the earlier outputs, seed 1 most significant.
std::vector<double> seed_joint(const SeededMap& g, const JointDistribution& mu, int t) {
  const int m_out = g.m_out();
  std::vector<double> joint(std::size_t{1} << (t * m_out), 0.0);
  for (std::uint32_t x = 0; x < mu.size(); ++x) {
    double p = mu[x];
    if (p == 0.0) continue;
    std::uint32_t key = 0;
    for (int s = 1; s <= t; ++s) key = (key << m_out) | g(x, s);
    joint[key] += p;
  }
  return joint;
}

}  // namespace

SeededMap SeededMap::table(int n, int seeds, int m_out,
                           std::vector<std::vector<std::uint32_t>> outputs) {
  if (seeds < 1) throw std::invalid_argument("seed count D must be positive");
  if (outputs.size() != static_cast<std::size_t>(seeds)) {
    throw DimensionError("table has " + std::to_string(outputs.size()) + " seed rows, expected " +
                         std::to_string(seeds));
  }
  for (auto& row : outputs) {
    // Validates width and entries per seed.
    (void)CondenserMap::table(n, m_out, row);
  }
  return SeededMap(n, seeds, m_out, Table{std::move(outputs)});
}

std::uint32_t SeededMap::operator()(std::uint32_t x, int s) const {
  if (s < 1 || s > seeds_) throw std::out_of_range("seed " + std::to_string(s));
  if (const auto* t = table_body()) return t->outputs[static_cast<std::size_t>(s - 1)].at(x);
  const auto& h = std::get<Sliced>(body_).h;
  const int shift = (seeds_ - s) * m_out_;
  return (h(x) >> shift) & ((1u << m_out_) - 1u);
}

SeededMap vse_from_condenser(const CondenserMap& h, int seeds) {
  if (seeds < 1 || h.m() % seeds != 0) {
    throw std::invalid_argument("seed count " + std::to_string(seeds) +
                                " does not divide output width " + std::to_string(h.m()));
  }
  return SeededMap(h.n(), seeds, h.m() / seeds, SeededMap::Sliced{h});
}

double strong_error(const SeededMap& g, const JointDistribution& mu) {
  if (g.n() != mu.n()) throw DimensionError("seeded map and distribution widths differ");
  std::vector<double> per_seed;
  for (int t = 1; t <= g.seeds(); ++t) {
    JointDistribution nu = pushforward(mu, g.m_out(), [&g, t](std::uint32_t x) { return g(x, t); });
    per_seed.push_back(0.5 * l1_distance_to_uniform(nu.probs()));
  }
  return compensated_sum(per_seed) / g.seeds();
}

double very_strong_error(const SeededMap& g, const JointDistribution& mu) {
  check_vse_size(g, mu);
  const std::size_t width = std::size_t{1} << g.m_out();
  std::vector<double> per_seed;
  for (int t = 1; t <= g.seeds(); ++t) {
    std::vector<double> joint = seed_joint(g, mu, t);
    // Each key is weighted by its probability; zero-mass keys never arise
    // from an input in the support and contribute nothing.
    std::vector<double> terms;
    for (std::size_t base = 0; base < joint.size(); base += width) {
      std::span<const double> row(joint.data() + base, width);
      double key_mass = compensated_sum(row);
      if (!(key_mass > 0.0)) continue;
      std::vector<double> cond(row.begin(), row.end());
      for (double& v : cond) v /= key_mass;
      terms.push_back(key_mass * 0.5 * l1_distance_to_uniform(cond));
    }
    per_seed.push_back(compensated_sum(terms));
  }
  return compensated_sum(per_seed) / g.seeds();
}

double mean_conditional_slice_entropy(const SeededMap& g, const JointDistribution& mu) {
  check_vse_size(g, mu);
  const std::size_t width = std::size_t{1} << g.m_out();
  std::vector<double> per_seed;
  for (int t = 1; t <= g.seeds(); ++t) {
    std::vector<double> joint = seed_joint(g, mu, t);
    std::vector<double> terms;
    for (std::size_t base = 0; base < joint.size(); base += width) {
      std::span<const double> row(joint.data() + base, width);
      double key_mass = compensated_sum(row);
      if (!(key_mass > 0.0)) continue;
      std::vector<double> cond(row.begin(), row.end());
      for (double& v : cond) v /= key_mass;
      terms.push_back(key_mass * shannon_entropy(cond));
    }
    per_seed.push_back(compensated_sum(terms));
  }
  return compensated_sum(per_seed) / g.seeds();
}

ClaimBound claim_bound_cond_extr(double entropy_deficit_rate, int m, int seeds) {
  if (m < 1 || seeds < 1) throw std::invalid_argument("m and D must be positive");
  const double eps = entropy_deficit_rate;
  const double ratio = static_cast<double>(m) / seeds;
  ClaimBound b{std::sqrt(std::numbers::ln2 / 2.0 * std::max(eps, 0.0) * ratio),
               std::numbers::ln2 / 2.0 * eps <= 1.0 / ratio + 1e-12};
  return b;
}

ClaimBound claim_bound_extr_cond(double delta_vse, int m_out) {
  if (m_out < 1) throw std::invalid_argument("m must be positive");
  const bool in_range = delta_vse >= 0.0 && delta_vse <= 1.0;
  const double d = std::max(delta_vse, 0.0);
  double rate = 1.0 - d - std::sqrt(4.0 * kLog2E * d / m_out);
  return ClaimBound{rate, in_range, rate <= 0.0};
}

CondenserMap entropy_condenser_from_vse(const SeededMap& g) {
  const int m = g.seeds() * g.m_out();
  if (m > kDefaultMaxExactBits) {
    throw DimensionError("concatenated output of " + std::to_string(m) + " bits is too wide");
  }
  std::vector<std::uint32_t> outputs(std::size_t{1} << g.n());
  for (std::uint32_t x = 0; x < outputs.size(); ++x) {
    std::uint32_t y = 0;
    for (int s = 1; s <= g.seeds(); ++s) y = (y << g.m_out()) | g(x, s);
    outputs[x] = y;
  }
  return CondenserMap::table(g.n(), m, std::move(outputs));
}

PinskerSandwich pinsker_sandwich(const JointDistribution& mu) {
  const double dist = l1_distance_to_uniform(mu.probs());
  const double log_size = mu.n();
  PinskerSandwich s{};
  s.lower = kLog2E / 2.0 * dist * dist;
  s.deficit = log_size - shannon_entropy(mu);
  s.upper = 0.5 * dist * log_size + std::sqrt(2.0 * kLog2E * dist * log_size);
  return s;
}

VSEReport evaluate_vse(const CondenserMap& h, int seeds, const JointDistribution& mu) {
  SeededMap g = vse_from_condenser(h, seeds);
  check_vse_size(g, mu);
  VSEReport r{};
  r.seeds = seeds;
  r.m_out = g.m_out();
  r.strong_error = strong_error(g, mu);
  r.very_strong_error = very_strong_error(g, mu);
  r.concat_entropy = shannon_entropy(pushforward(mu, entropy_condenser_from_vse(g)));
  r.entropy_deficit_rate = 1.0 - shannon_entropy(pushforward(mu, h)) / h.m();
  r.claim_bound = claim_bound_cond_extr(r.entropy_deficit_rate, h.m(), seeds);
  r.concat_rate_bound = claim_bound_extr_cond(r.very_strong_error, g.m_out());
  r.mean_slice_entropy = mean_conditional_slice_entropy(g, mu);
  return r;
}

}  // namespace svc
