#include "svc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "svc/extractors.hpp"
#include "svc/sv_models.hpp"

namespace svc {

double sv_floor(int n, double delta) {
  check_delta(delta);
  return n * std::log2(2.0 / (1.0 + delta));
}

double theorem2_rate(int d, double delta) { return theoretical_rate(d, delta).rate_bound; }

double el3_floor(int m, double delta) {
  check_delta(delta);
  return m - std::log2((1.0 + delta) / (1.0 - delta));
}

bool EntropyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ReportCheck& c) { return !c.applicable || c.holds; });
}

EntropyReport build_report(const JointDistribution& mu, const ReportContext& context,
                           double delta) {
  check_delta(delta);
  if (context.seeds && !context.condenser) {
    throw std::invalid_argument("a seed count needs a condenser to slice");
  }
  EntropyReport r;
  r.n = mu.n();
  r.delta = delta;

  r.source.min_entropy = min_entropy(mu);
  r.source.shannon_entropy = shannon_entropy(mu);
  r.source.min_rate = r.source.min_entropy / mu.n();
  r.source.entropy_rate = r.source.shannon_entropy / mu.n();
  r.source.is_sv = static_cast<bool>(is_sv(mu, delta));
  r.source.is_strong_sv = static_cast<bool>(is_strong_sv(mu, delta));

  const JointDistribution nu = context.condenser ? pushforward(mu, *context.condenser) : mu;
  r.m = nu.n();
  if (!context.condenser) {
    r.map = "identity";
  } else if (const auto* s = context.condenser->structured_body()) {
    r.map = "f_d(d=" + std::to_string(s->d) + ",k=" + std::to_string(s->k) + ")";
  } else {
    r.map = "table";
  }
  r.min_entropy = min_entropy(nu);
  r.shannon_entropy = shannon_entropy(nu);
  r.min_rate = r.min_entropy / r.m;
  r.entropy_rate = r.shannon_entropy / r.m;
  r.imbalance = imbalance_ratio(nu);

  r.checks.push_back({"is_sv", true, r.source.is_sv});
  r.checks.push_back(
      {"min_rate_le_entropy_rate", true, r.min_rate <= r.entropy_rate + kEntropyTolerance});

  r.bounds.sv_floor = sv_floor(mu.n(), delta);
  r.checks.push_back({"sv_floor", r.source.is_sv,
                      r.source.min_entropy >= *r.bounds.sv_floor - kEntropyTolerance});

  if (context.condenser) {
    if (const auto* s = context.condenser->structured_body()) {
      r.bounds.theorem2_rate = theorem2_rate(s->d, delta);
      r.checks.push_back({"theorem2_rate", r.source.is_strong_sv,
                          r.min_rate >= *r.bounds.theorem2_rate - kEntropyTolerance});
    }
  }

  const double edge_ratio = (1.0 + delta) / (1.0 - delta);
  if (r.imbalance <= edge_ratio + kEntropyTolerance) {
    r.bounds.el3_floor = el3_floor(r.m, delta);
    r.checks.push_back(
        {"el3_floor", true, r.min_entropy >= *r.bounds.el3_floor - kEntropyTolerance});
  }

  PinskerSandwich sandwich = pinsker_sandwich(nu);
  r.bounds.pinsker_lower = sandwich.lower;
  r.bounds.pinsker_upper = sandwich.upper;
  r.checks.push_back({"pinsker", true, sandwich.holds()});

  if (context.seeds) {
    VSEReport v = evaluate_vse(*context.condenser, *context.seeds, mu);
    ExtractorSummary e;
    e.seeds = v.seeds;
    e.m_out = v.m_out;
    e.strong_error = v.strong_error;
    e.very_strong_error = v.very_strong_error;
    e.entropy_deficit_rate = v.entropy_deficit_rate;
    e.claim_bound = v.claim_bound.value;
    e.claim_precondition = v.claim_bound.precondition_ok;
    e.concat_entropy = v.concat_entropy;
    e.concat_rate_bound = v.concat_rate_bound.value;
    e.mean_slice_entropy = v.mean_slice_entropy;
    r.extractor = e;

    r.checks.push_back({"cond_extr_claim", true,
                        e.very_strong_error <= e.claim_bound + kEntropyTolerance});
    r.checks.push_back(
        {"extr_cond_claim", true,
         e.concat_entropy >= r.m * e.concat_rate_bound - kEntropyTolerance});
    r.checks.push_back(
        {"chain_rule", true,
         std::abs(e.mean_slice_entropy - r.shannon_entropy / e.seeds) <= kEntropyTolerance});
  }
  return r;
}

}  // namespace svc
