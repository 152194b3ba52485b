#include "svc/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "svc/attacks.hpp"
#include "svc/bitdist.hpp"
#include "svc/condenser.hpp"
#include "svc/extractors.hpp"
#include "svc/hamming.hpp"
#include "svc/random.hpp"
#include "svc/sv_models.hpp"

namespace svc {

namespace {

using Clock = std::chrono::steady_clock;

// Records the first failure and counts cases.
struct Tally {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++cases;
    if (!ok) {
      if (failures == 0) first_failure = describe();
      ++failures;
    }
  }
};

PropertyResult timed(std::string suite, std::string name, const std::function<void(Tally&)>& body) {
  auto start = Clock::now();
  Tally tally;
  body(tally);
  PropertyResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.passed = tally.failures == 0;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream detail;
  detail << tally.cases << " cases";
  if (tally.failures) detail << ", " << tally.failures << " failed; first: " << tally.first_failure;
  r.detail = detail.str();
  return r;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

double edge_ratio(double delta) { return (1.0 + delta) / (1.0 - delta); }

std::vector<PropertyResult> suite_partition(const VerifyOptions&) {
  std::vector<PropertyResult> out;
  for (int d = kMinHammingParam; d <= kMaxEnumerableHammingParam; ++d) {
    out.push_back(timed("partition", "perfect partition d=" + std::to_string(d), [d](Tally& t) {
      HammingCode code(d);
      auto cosets = code.coset_partition();
      t.check(cosets.size() == (std::size_t{1} << d), [] { return std::string("coset count"); });
      std::vector<int> seen(std::size_t{1} << code.block_len(), 0);
      const auto& base = cosets[0];
      for (std::size_t i = 0; i < cosets.size(); ++i) {
        t.check(cosets[i].size() == code.codeword_count(),
                [&] { return "coset " + std::to_string(i) + " has size " +
                             std::to_string(cosets[i].size()); });
        // Coset i is the code shifted by e_i.
        std::vector<std::uint32_t> shifted;
        std::uint32_t e = BitString::unit(code.block_len(), static_cast<int>(i)).value;
        for (std::uint32_t c : base) shifted.push_back(c ^ e);
        std::sort(shifted.begin(), shifted.end());
        t.check(shifted == cosets[i], [&] { return "coset " + std::to_string(i) + " != Ham ^ e_i"; });
        for (std::uint32_t x : cosets[i]) ++seen[x];
      }
      t.check(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }),
              [] { return std::string("cosets do not partition the cube"); });
    }));
    out.push_back(timed("partition", "minimum distance d=" + std::to_string(d), [d](Tally& t) {
      HammingCode code(d);
      const auto cosets = code.coset_partition();
      const auto& words = cosets[0];
      for (std::size_t a = 0; a < words.size(); ++a) {
        for (std::size_t b = a + 1; b < words.size(); ++b) {
          int dist = std::popcount(words[a] ^ words[b]);
          t.check(dist >= 3, [&] { return "codewords at distance " + std::to_string(dist); });
        }
      }
    }));
  }
  return out;
}

std::vector<PropertyResult> suite_lemma_e1(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  const int exhaustive_n = std::min(opt.max_n, 4);
  for (double delta : {0.1, 0.5, 0.9}) {
    out.push_back(timed("lemma-e1", "exhaustive n<=" + std::to_string(exhaustive_n) + " delta=" + fmt(delta),
                        [&](Tally& t) {
      for (int n = 1; n <= exhaustive_n; ++n) {
        const std::uint64_t subsets = std::uint64_t{1} << (1u << n);
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
          TargetSet target = TargetSet::from_mask(n, mask);
          PrefixAdversary adv = greedy_sv_for_set(target, delta);
          JointDistribution mu = materialize(adv);
          double mass = set_mass(mu, target);
          double bound = lemma_mass_bound(n, target.size(), delta);
          t.check(mass >= bound - kMassTolerance && static_cast<bool>(is_sv(mu, delta)), [&] {
            return "n=" + std::to_string(n) + " mask=" + std::to_string(mask) + " mass=" +
                   fmt(mass) + " bound=" + fmt(bound);
          });
        }
      }
    }));
    if (opt.max_n > 4) {
      const int top = std::min(opt.max_n, 12);
      out.push_back(timed("lemma-e1", "random subsets 5<=n<=" + std::to_string(top) + " delta=" + fmt(delta),
                          [&](Tally& t) {
        SeededRng rng(opt.seed);
        for (int n = 5; n <= top; ++n) {
          for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::uint32_t> members;
            std::uint64_t size = 1 + rng.below(std::uint64_t{1} << n);
            for (std::uint64_t k = 0; k < size; ++k) {
              members.push_back(static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n)));
            }
            TargetSet target(n, std::move(members));
            LemmaCheck c = verify_lemma_e1(target, delta);
            t.check(c.holds, [&] { return "n=" + std::to_string(n) + " mass=" + fmt(c.mass); });
          }
        }
      }));
    }
  }
  return out;
}

std::vector<PropertyResult> suite_theorem1(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  const int n_cap = std::clamp(opt.max_n, 1, 12);
  out.push_back(timed("theorem1", "SV min-entropy floor", [&](Tally& t) {
    SeededRng rng(opt.seed);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_cap)));
      double delta = 0.05 + 0.9 * rng.uniform01();
      JointDistribution mu = materialize(random_prefix_adversary(n, delta, rng.next()));
      double h = min_entropy(mu);
      double floor = n * std::log2(2.0 / (1.0 + delta));
      t.check(h >= floor - kEntropyTolerance,
              [&] { return "n=" + std::to_string(n) + " H=" + fmt(h) + " floor=" + fmt(floor); });
    }
  }));
  const int n = std::clamp(opt.max_n, 2, 12);
  const int m = n / 2;
  out.push_back(timed("theorem1", "attack on random tables " + std::to_string(n) + "->" + std::to_string(m),
                      [&](Tally& t) {
    SeededRng rng(opt.seed + 1);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::uint32_t> table(std::size_t{1} << n);
      for (auto& y : table) y = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << m));
      AttackResult r = attack_condenser(CondenserMap::table(n, m, std::move(table)), 0.5);
      t.check(r.holds(), [&] {
        return "achieved " + fmt(r.achieved_min_entropy) + " > bound " + fmt(r.theorem_bound);
      });
    }
  }));
  out.push_back(timed("theorem1", "identity attack is tight", [&](Tally& t) {
    for (double delta : {0.1, 0.5, 0.9}) {
      std::vector<std::uint32_t> id(std::size_t{1} << n);
      for (std::uint32_t x = 0; x < id.size(); ++x) id[x] = x;
      AttackResult r = attack_condenser(CondenserMap::table(n, n, std::move(id)), delta);
      t.check(std::abs(r.achieved_min_entropy - r.theorem_bound) <= kMassTolerance, [&] {
        return "identity achieved " + fmt(r.achieved_min_entropy) + " vs " + fmt(r.theorem_bound);
      });
    }
  }));
  return out;
}

struct CondenserCase {
  int d;
  int k;
};

std::vector<CondenserCase> condenser_cases(int max_n) {
  std::vector<CondenserCase> cases;
  for (CondenserCase c : {CondenserCase{2, 1}, CondenserCase{2, 2}, CondenserCase{3, 1}}) {
    if (c.k * ((1 << c.d) - 1) <= max_n) cases.push_back(c);
  }
  return cases;
}

std::vector<PropertyResult> suite_theorem2(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  for (CondenserCase c : condenser_cases(opt.max_n)) {
    for (double delta : {0.25, 0.5}) {
      std::string name = "f_" + std::to_string(c.d) + " k=" + std::to_string(c.k) + " delta=" + fmt(delta);
      out.push_back(timed("theorem2", name, [&](Tally& t) {
        CondenserMap f = CondenserMap::structured(c.d, c.k);
        const double floor = c.k * c.d - c.k * std::log2(edge_ratio(delta));
        for (int trial = 0; trial < 100; ++trial) {
          JointDistribution mu = random_potential_strong_sv(f.n(), delta, opt.seed * 1000 + trial);
          double h = min_entropy(pushforward(mu, f));
          t.check(h >= floor - kEntropyTolerance && h / f.m() >= theoretical_rate(c.d, delta).rate_bound - kEntropyTolerance,
                  [&] { return "H_inf=" + fmt(h) + " floor=" + fmt(floor); });
        }
      }));
    }
  }
  return out;
}

std::vector<PropertyResult> suite_imbalance(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  for (CondenserCase c : condenser_cases(opt.max_n)) {
    if (c.k != 1) continue;
    for (double delta : {0.25, 0.5}) {
      std::string name = "g_" + std::to_string(c.d) + " delta=" + fmt(delta);
      out.push_back(timed("imbalance", name, [&](Tally& t) {
        CondenserMap g = CondenserMap::structured(c.d, 1);
        const double ratio_cap = edge_ratio(delta);
        for (int trial = 0; trial < 100; ++trial) {
          JointDistribution mu = random_potential_strong_sv(g.n(), delta, opt.seed * 1000 + trial);
          JointDistribution nu = pushforward(mu, g);
          double ratio = imbalance_ratio(nu);
          double h = min_entropy(nu);
          t.check(ratio <= ratio_cap + kEntropyTolerance &&
                      h >= c.d - std::log2(ratio_cap) - kEntropyTolerance,
                  [&] { return "ratio=" + fmt(ratio) + " H_inf=" + fmt(h); });
        }
      }));
    }
  }
  out.push_back(timed("imbalance", "imbalance bounds min-entropy", [&](Tally& t) {
    for (int trial = 0; trial < 500; ++trial) {
      int d = 1 + trial % 6;
      JointDistribution nu = random_distribution(d, opt.seed * 7919 + trial);
      double ratio = imbalance_ratio(nu);
      if (std::isinf(ratio)) continue;
      double h = min_entropy(nu);
      t.check(h >= d - std::log2(ratio) - kEntropyTolerance,
              [&] { return "d=" + std::to_string(d) + " ratio=" + fmt(ratio) + " H=" + fmt(h); });
    }
  }));
  return out;
}

std::vector<PropertyResult> suite_pinsker(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  const int top = std::clamp(opt.max_n, 1, 6);
  out.push_back(timed("pinsker", "sandwich on random distributions", [&](Tally& t) {
    for (int trial = 0; trial < 1000; ++trial) {
      int n = 1 + trial % top;
      PinskerSandwich s = pinsker_sandwich(random_distribution(n, opt.seed * 104729 + trial));
      t.check(s.holds(), [&] {
        return "lower=" + fmt(s.lower) + " deficit=" + fmt(s.deficit) + " upper=" + fmt(s.upper);
      });
    }
  }));
  out.push_back(timed("pinsker", "sandwich edge cases", [&](Tally& t) {
    for (int n = 1; n <= top; ++n) {
      for (const JointDistribution& mu :
           {JointDistribution::uniform(n), JointDistribution::point_mass(n, 0)}) {
        PinskerSandwich s = pinsker_sandwich(mu);
        t.check(s.holds(), [&] { return "n=" + std::to_string(n); });
      }
    }
  }));
  return out;
}

std::vector<PropertyResult> suite_cond_extr(const VerifyOptions& opt, bool reverse) {
  std::vector<PropertyResult> out;
  if (opt.max_n < 6) return out;
  const CondenserMap h = CondenserMap::structured(2, 2);
  const std::string suite = reverse ? "extr-cond" : "cond-extr";
  for (int seeds : {1, 2, 4}) {
    out.push_back(timed(suite, "f_2 n=6 D=" + std::to_string(seeds), [&](Tally& t) {
      SeededMap g = vse_from_condenser(h, seeds);
      for (int trial = 0; trial < 50; ++trial) {
        double delta = trial % 2 ? 0.5 : 0.25;
        JointDistribution mu = random_potential_strong_sv(6, delta, opt.seed * 31 + trial);
        if (!reverse) {
          double eps = 1.0 - shannon_entropy(pushforward(mu, h)) / h.m();
          double vse = very_strong_error(g, mu);
          double bound = claim_bound_cond_extr(eps, h.m(), seeds).value;
          t.check(vse <= bound + kEntropyTolerance,
                  [&] { return "vse=" + fmt(vse) + " bound=" + fmt(bound); });
          double chain = mean_conditional_slice_entropy(g, mu);
          double direct = shannon_entropy(pushforward(mu, h)) / seeds;
          t.check(std::abs(chain - direct) <= kEntropyTolerance,
                  [&] { return "chain rule " + fmt(chain) + " vs " + fmt(direct); });
        } else {
          double vse = very_strong_error(g, mu);
          CondenserMap concat = entropy_condenser_from_vse(g);
          double entropy = shannon_entropy(pushforward(mu, concat));
          double rate = claim_bound_extr_cond(vse, g.m_out()).value;
          t.check(entropy >= seeds * g.m_out() * rate - kEntropyTolerance,
                  [&] { return "H=" + fmt(entropy) + " rate bound=" + fmt(rate); });
          t.check(concat.same_function(h), [] { return std::string("round trip differs"); });
        }
      }
    }));
  }
  return out;
}

std::vector<PropertyResult> suite_stream_equiv(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  SeededRng rng(opt.seed);
  std::vector<std::uint8_t> data(64 * 1024 + 3);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng.next());
  for (int d = kMinHammingParam; d <= kMaxHammingParam; ++d) {
    out.push_back(timed("stream-equiv", "d=" + std::to_string(d), [&](Tally& t) {
      StreamStats stats;
      std::vector<std::uint8_t> streamed = condense_bytes(d, data, &stats);
      Bits bits = unpack_bits(data);
      const std::size_t len = static_cast<std::size_t>((1 << d) - 1);
      bits.resize(bits.size() / len * len);
      Bits blockwise = condense(d, bits);
      t.check(static_cast<std::size_t>(stats.input_tail_bits) == data.size() * 8 % len,
              [&] { return "input tail " + std::to_string(stats.input_tail_bits); });
      t.check(static_cast<std::size_t>(stats.output_tail_bits) == blockwise.size() % 8,
              [&] { return "output tail " + std::to_string(stats.output_tail_bits); });
      t.check(streamed == pack_bits(blockwise), [] { return std::string("streamed bytes differ"); });
    }));
  }
  return out;
}

using SuiteFn = std::function<std::vector<PropertyResult>(const VerifyOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"lemma-e1", suite_lemma_e1},
      {"theorem1", suite_theorem1},
      {"theorem2", suite_theorem2},
      {"imbalance", suite_imbalance},
      {"pinsker", suite_pinsker},
      {"cond-extr", [](const VerifyOptions& o) { return suite_cond_extr(o, false); }},
      {"extr-cond", [](const VerifyOptions& o) { return suite_cond_extr(o, true); }},
      {"partition", suite_partition},
      {"stream-equiv", suite_stream_equiv},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<PropertyResult> run_suite(std::string_view name, const VerifyOptions& options) {
  if (options.max_n < 1 || options.max_n > max_exact_bits()) {
    throw std::invalid_argument("--max-n must lie in [1, " + std::to_string(max_exact_bits()) + "]");
  }
  for (const auto& [suite, fn] : registry()) {
    if (suite == name) return fn(options);
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

}  // namespace svc
