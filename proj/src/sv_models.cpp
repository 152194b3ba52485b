#include "svc/sv_models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "svc/random.hpp"

namespace svc {

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("bias delta must lie in [0, 1), got " + std::to_string(delta));
  }
}

SVParams::SVParams(int n_bits, double d) : n(n_bits), delta(d) {
  check_delta(delta);
  if (n < 1) throw DimensionError("SV source needs at least one bit");
}

PrefixAdversary::PrefixAdversary(int n, double delta, std::vector<double> prob_one)
    : n_(n), delta_(delta), prob_one_(std::move(prob_one)) {
  SVParams params(n, delta);
  if (n > max_exact_bits()) throw DimensionError("adversary width exceeds exact-analysis cap");
  if (prob_one_.size() != (std::size_t{1} << n) - 1) {
    throw DimensionError("adversary over " + std::to_string(n) + " bits needs " +
                         std::to_string((std::size_t{1} << n) - 1) + " entries");
  }
  for (std::size_t k = 0; k < prob_one_.size(); ++k) {
    double v = prob_one_[k];
    if (!(v >= params.p() - kMassTolerance && v <= params.q() + kMassTolerance)) {
      throw std::invalid_argument("strategy entry " + std::to_string(k) + " = " +
                                  std::to_string(v) + " outside [p, q]");
    }
  }
}

double PrefixAdversary::prob_one(const BitString& prefix) const {
  if (prefix.n >= n_) throw DimensionError("prefix too long for adversary");
  return prob_one_[index_of(prefix)];
}

namespace {

bool within(double v, const SVParams& params) {
  return v >= params.p() - kMassTolerance && v <= params.q() + kMassTolerance;
}

}  // namespace

SVCheck is_sv(const JointDistribution& mu, double delta) {
  SVParams params(mu.n(), delta);
  const int n = mu.n();
  // mass[L] holds the total mass of every prefix of length L.
  std::vector<std::vector<double>> mass(static_cast<std::size_t>(n) + 1);
  mass[n].assign(mu.probs().begin(), mu.probs().end());
  for (int len = n - 1; len >= 0; --len) {
    auto& child = mass[len + 1];
    auto& cur = mass[len];
    cur.resize(std::size_t{1} << len);
    for (std::size_t u = 0; u < cur.size(); ++u) cur[u] = child[2 * u] + child[2 * u + 1];
  }
  for (int i = 1; i <= n; ++i) {
    const auto& cur = mass[i - 1];
    const auto& child = mass[i];
    for (std::size_t u = 0; u < cur.size(); ++u) {
      double total = child[2 * u] + child[2 * u + 1];
      if (!(total > 0.0)) continue;
      double one = child[2 * u + 1] / total;
      if (!within(one, params)) {
        return SVCheck{PrefixViolation{i, BitString(i - 1, static_cast<std::uint32_t>(u)), one}};
      }
    }
  }
  return SVCheck{};
}

StrongSVCheck is_strong_sv(const JointDistribution& mu, double delta) {
  SVParams params(mu.n(), delta);
  const int n = mu.n();
  const std::uint32_t rests = 1u << (n - 1);
  for (int i = 1; i <= n; ++i) {
    for (std::uint32_t r = 0; r < rests; ++r) {
      BitString rest(n - 1, r);
      double zero = mu[insert_bit(rest, i, false)];
      double one = mu[insert_bit(rest, i, true)];
      if (!(zero + one > 0.0)) continue;
      double cond = one / (zero + one);
      if (!within(cond, params)) return StrongSVCheck{EdgeViolation{i, rest, cond}};
    }
  }
  return StrongSVCheck{};
}

JointDistribution iid_biased(int n, double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw std::invalid_argument("per-bit probability must lie in [0, 1]");
  }
  if (n < 1 || n > max_exact_bits()) throw DimensionError("iid width out of range");
  std::vector<double> probs(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < probs.size(); ++x) {
    int ones = std::popcount(x);
    probs[x] = std::pow(p1, ones) * std::pow(1.0 - p1, n - ones);
  }
  return JointDistribution::from_weights(n, std::move(probs));
}

JointDistribution materialize(const PrefixAdversary& adversary) {
  const int n = adversary.n();
  // Level-by-level product over the prefix tree.
  std::vector<double> level{1.0};
  for (int len = 0; len < n; ++len) {
    std::vector<double> next(level.size() * 2);
    std::size_t base = (std::size_t{1} << len) - 1;
    for (std::size_t u = 0; u < level.size(); ++u) {
      double one = adversary.table()[base + u];
      next[2 * u] = level[u] * (1.0 - one);
      next[2 * u + 1] = level[u] * one;
    }
    level = std::move(next);
  }
  return JointDistribution(n, std::move(level));
}

PrefixAdversary extract_strategy(const JointDistribution& mu, double delta) {
  const int n = mu.n();
  std::vector<double> table((std::size_t{1} << n) - 1, 0.5);
  std::vector<double> level(mu.probs().begin(), mu.probs().end());
  for (int len = n - 1; len >= 0; --len) {
    std::vector<double> parent(std::size_t{1} << len);
    std::size_t base = (std::size_t{1} << len) - 1;
    for (std::size_t u = 0; u < parent.size(); ++u) {
      parent[u] = level[2 * u] + level[2 * u + 1];
      if (parent[u] > 0.0) table[base + u] = level[2 * u + 1] / parent[u];
    }
    level = std::move(parent);
  }
  return PrefixAdversary(n, delta, std::move(table));
}

JointDistribution from_potential(int n, double delta, std::span<const double> potential) {
  SVParams params(n, delta);
  if (n > max_exact_bits()) throw DimensionError("potential width exceeds exact-analysis cap");
  if (potential.size() != (std::size_t{1} << n)) {
    throw DimensionError("potential needs 2^n entries");
  }
  for (std::uint32_t x = 0; x < potential.size(); ++x) {
    for (int b = 0; b < n; ++b) {
      std::uint32_t y = x ^ (1u << b);
      if (std::abs(potential[x] - potential[y]) > 1.0 + 1e-12) {
        throw std::invalid_argument("potential difference across edge (" + std::to_string(x) +
                                    ", " + std::to_string(y) + ") exceeds 1");
      }
    }
  }
  const double scale = std::log(params.edge_ratio());
  const double top = *std::max_element(potential.begin(), potential.end());
  std::vector<double> weights(potential.size());
  for (std::size_t x = 0; x < weights.size(); ++x) {
    weights[x] = std::exp(scale * (potential[x] - top));
  }
  return JointDistribution::from_weights(n, std::move(weights));
}

JointDistribution random_potential_strong_sv(int n, double delta, std::uint64_t seed) {
  SVParams params(n, delta);
  if (n > max_exact_bits()) throw DimensionError("potential width exceeds exact-analysis cap");
  SeededRng rng(seed);
  std::vector<double> linear(static_cast<std::size_t>(n));
  for (double& a : linear) a = rng.uniform(-1.0, 1.0);
  // Sparse pairwise couplings, clipped to [-1/2, 1/2].
  std::vector<double> pair(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < 0.5) {
        pair[static_cast<std::size_t>(i * n + j)] = std::clamp(rng.uniform(-1.5, 1.5), -0.5, 0.5);
      }
    }
  }
  std::vector<double> potential(std::size_t{1} << n, 0.0);
  for (std::uint32_t x = 0; x < potential.size(); ++x) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!((x >> (n - 1 - i)) & 1u)) continue;
      v += linear[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) {
        if ((x >> (n - 1 - j)) & 1u) v += pair[static_cast<std::size_t>(i * n + j)];
      }
    }
    potential[x] = v;
  }
  double steepest = 0.0;
  for (std::uint32_t x = 0; x < potential.size(); ++x) {
    for (int b = 0; b < n; ++b) {
      steepest = std::max(steepest, std::abs(potential[x] - potential[x ^ (1u << b)]));
    }
  }
  if (steepest > 0.0) {
    for (double& v : potential) v /= steepest;
  }
  return from_potential(n, delta, potential);
}

PrefixAdversary random_prefix_adversary(int n, double delta, std::uint64_t seed) {
  SVParams params(n, delta);
  SeededRng rng(seed);
  std::vector<double> table((std::size_t{1} << n) - 1);
  for (double& v : table) {
    double pick = rng.uniform01();
    if (pick < 1.0 / 6.0) {
      v = params.p();
    } else if (pick < 1.0 / 3.0) {
      v = params.q();
    } else {
      v = rng.uniform(params.p(), params.q());
    }
  }
  return PrefixAdversary(n, delta, std::move(table));
}

}  // namespace svc
