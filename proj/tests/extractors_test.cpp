#include "svc/extractors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "svc/sv_models.hpp"

namespace svc {
namespace {

const CondenserMap kF2 = CondenserMap::structured(2, 2);

TEST(SeededMap, SlicingExamples) {
  SeededMap one = vse_from_condenser(kF2, 1);
  SeededMap two = vse_from_condenser(kF2, 2);
  SeededMap four = vse_from_condenser(kF2, 4);
  EXPECT_EQ(four.m_out(), 1);
  for (std::uint32_t x = 0; x < 64; ++x) {
    EXPECT_EQ(one(x, 1), kF2(x));
    EXPECT_EQ(two(x, 1), kF2(x) >> 2);
    EXPECT_EQ(two(x, 2), kF2(x) & 3u);
    for (int s = 1; s <= 4; ++s) EXPECT_EQ(four(x, s), (kF2(x) >> (4 - s)) & 1u);
  }
  EXPECT_THROW(vse_from_condenser(kF2, 3), std::invalid_argument);
  EXPECT_THROW(two(0, 3), std::out_of_range);
}

TEST(SeededMap, TableValidation) {
  EXPECT_THROW(SeededMap::table(1, 2, 1, {{0, 1}}), DimensionError);
  EXPECT_THROW(SeededMap::table(1, 1, 1, {{0, 2}}), DimensionError);
  SeededMap g = SeededMap::table(1, 2, 1, {{0, 1}, {1, 0}});
  EXPECT_EQ(g(0, 2), 1u);
}

TEST(StrongError, Examples) {
  for (int seeds : {1, 2, 4}) {
    SeededMap g = vse_from_condenser(kF2, seeds);
    EXPECT_NEAR(strong_error(g, JointDistribution::uniform(6)), 0.0, 1e-12);
    double expect = 1.0 - std::ldexp(1.0, -g.m_out());
    EXPECT_NEAR(strong_error(g, JointDistribution::point_mass(6, 13)), expect, 1e-12);
  }
  SeededMap constant = SeededMap::table(2, 1, 1, {{1, 1, 1, 1}});
  EXPECT_NEAR(strong_error(constant, JointDistribution::uniform(2)), 0.5, 1e-12);
}

TEST(VeryStrongError, Examples) {
  for (int seeds : {1, 2, 4}) {
    SeededMap g = vse_from_condenser(kF2, seeds);
    EXPECT_NEAR(very_strong_error(g, JointDistribution::uniform(6)), 0.0, 1e-12);
  }
  JointDistribution mu = iid_biased(6, 0.75);
  SeededMap g1 = vse_from_condenser(kF2, 1);
  EXPECT_DOUBLE_EQ(very_strong_error(g1, mu), strong_error(g1, mu));
  EXPECT_THROW(very_strong_error(g1, JointDistribution::uniform(5)), DimensionError);
}

TEST(VeryStrongError, IidGoldenValues) {
  JointDistribution mu = iid_biased(6, 0.75);
  const double eps = 1.0 - shannon_entropy(pushforward(mu, kF2)) / 4.0;
  EXPECT_NEAR(eps, 0.059879592527926406, 1e-12);
  struct Row {
    int seeds;
    double error;
    double bound;
  };
  for (Row row : {Row{1, 0.24609375, 0.28811584730385986}, Row{2, 0.1875, 0.2037286693958672},
                  Row{4, 0.125, 0.14405792365192993}}) {
    SeededMap g = vse_from_condenser(kF2, row.seeds);
    EXPECT_NEAR(very_strong_error(g, mu), row.error, 1e-12) << row.seeds;
    EXPECT_NEAR(strong_error(g, mu), row.error, 1e-12) << row.seeds;
    ClaimBound b = claim_bound_cond_extr(eps, 4, row.seeds);
    EXPECT_NEAR(b.value, row.bound, 1e-12);
    EXPECT_TRUE(b.precondition_ok);
  }
}

TEST(VeryStrongError, DiffersFromStrongErrorWhenSlicesCorrelate) {
  // Second slice copies the first: averaging alone looks fine, conditioning
  // on the first output exposes it.
  SeededMap g = SeededMap::table(1, 2, 1, {{0, 1}, {0, 1}});
  JointDistribution u = JointDistribution::uniform(1);
  EXPECT_NEAR(strong_error(g, u), 0.0, 1e-12);
  EXPECT_NEAR(very_strong_error(g, u), 0.25, 1e-12);
}

TEST(ClaimBoundCondExtr, Examples) {
  EXPECT_EQ(claim_bound_cond_extr(0.0, 4, 2).value, 0.0);
  const double boundary = 2.0 * 2 / (std::numbers::ln2 * 4);
  ClaimBound b = claim_bound_cond_extr(boundary, 4, 2);
  EXPECT_NEAR(b.value, 1.0, 1e-12);
  EXPECT_TRUE(b.precondition_ok);
  EXPECT_FALSE(claim_bound_cond_extr(boundary * 1.01, 4, 2).precondition_ok);
  EXPECT_NEAR(claim_bound_cond_extr(0.1, 3, 3).value, std::sqrt(std::numbers::ln2 / 2 * 0.1), 1e-15);
  EXPECT_THROW(claim_bound_cond_extr(0.1, 0, 1), std::invalid_argument);
}

TEST(ClaimBoundExtrCond, Examples) {
  EXPECT_DOUBLE_EQ(claim_bound_extr_cond(0.0, 4).value, 1.0);
  ClaimBound one = claim_bound_extr_cond(1.0, 4);
  EXPECT_LT(one.value, 0.0);
  EXPECT_TRUE(one.vacuous);
  EXPECT_NEAR(claim_bound_extr_cond(0.01, 4).value, 0.869887759121355, 1e-12);
}

TEST(EntropyCondenser, RoundTripAndShape) {
  for (int seeds : {1, 2, 4}) {
    SeededMap g = vse_from_condenser(kF2, seeds);
    CondenserMap h = entropy_condenser_from_vse(g);
    EXPECT_EQ(h.m(), seeds * g.m_out());
    EXPECT_TRUE(h.same_function(kF2));
  }
  SeededMap t = SeededMap::table(2, 3, 2, {{0, 1, 2, 3}, {3, 2, 1, 0}, {1, 1, 1, 1}});
  CondenserMap h = entropy_condenser_from_vse(t);
  EXPECT_EQ(h.m(), 6);
  EXPECT_EQ(h(1), 0b011001u);
}

TEST(ChainRule, SliceEntropiesSumToWholeOutput) {
  for (int seeds : {1, 2, 4}) {
    SeededMap g = vse_from_condenser(kF2, seeds);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      JointDistribution mu = random_potential_strong_sv(6, 0.5, seed);
      EXPECT_NEAR(seeds * mean_conditional_slice_entropy(g, mu), shannon_entropy(pushforward(mu, kF2)),
                  kEntropyTolerance);
    }
  }
}

TEST(ClaimBounds, HoldOnSeededStrongSources) {
  for (int seeds : {1, 2, 4}) {
    SeededMap g = vse_from_condenser(kF2, seeds);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      JointDistribution mu = random_potential_strong_sv(6, seed % 2 ? 0.5 : 0.25, seed);
      VSEReport r = evaluate_vse(kF2, seeds, mu);
      EXPECT_LE(r.very_strong_error, r.claim_bound.value + kEntropyTolerance);
      EXPECT_GE(r.concat_entropy, seeds * r.m_out * r.concat_rate_bound.value - kEntropyTolerance);
      EXPECT_LE(r.strong_error, r.very_strong_error + kEntropyTolerance);
    }
  }
}

TEST(Pinsker, Examples) {
  PinskerSandwich u = pinsker_sandwich(JointDistribution::uniform(4));
  EXPECT_NEAR(u.lower, 0.0, 1e-12);
  EXPECT_NEAR(u.deficit, 0.0, 1e-12);
  EXPECT_NEAR(u.upper, 0.0, 1e-12);
  PinskerSandwich pm = pinsker_sandwich(JointDistribution::point_mass(6, 0));
  EXPECT_NEAR(pm.deficit, 6.0, 1e-12);
  EXPECT_NEAR(pm.lower, 2.7959260826603005, 1e-12);
  EXPECT_NEAR(pm.upper, 11.744372158794022, 1e-12);
  EXPECT_TRUE(pm.holds());
}

TEST(Pinsker, HoldsOnRandomDistributions) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    PinskerSandwich s = pinsker_sandwich(random_distribution(1 + static_cast<int>(seed % 6), seed));
    EXPECT_TRUE(s.holds()) << seed;
  }
}

}  // namespace
}  // namespace svc
