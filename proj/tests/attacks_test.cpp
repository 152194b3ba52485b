#include "svc/attacks.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "svc/random.hpp"

namespace svc {
namespace {

TEST(TargetSet, SortsAndDeduplicates) {
  TargetSet t(2, {3, 1, 3});
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.members()[0], 1u);
  EXPECT_THROW(TargetSet(2, {}), std::invalid_argument);
  EXPECT_THROW(TargetSet(2, {4}), DimensionError);
  EXPECT_EQ(TargetSet::from_mask(2, 0b1001).size(), 2u);
  EXPECT_THROW(TargetSet::from_mask(7, 1), DimensionError);
}

TEST(Greedy, Examples) {
  const double q = 0.75;
  std::vector<std::uint32_t> all(8);
  std::iota(all.begin(), all.end(), 0u);
  TargetSet full(3, all);
  JointDistribution mu = materialize(greedy_sv_for_set(full, 0.5));
  EXPECT_NEAR(set_mass(mu, full), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(lemma_mass_bound(3, 8, 0.5), 1.0);

  TargetSet eleven(2, {0b11});
  EXPECT_NEAR(set_mass(materialize(greedy_sv_for_set(eleven, 0.5)), eleven), q * q, 1e-15);
  EXPECT_NEAR(lemma_mass_bound(2, 1, 0.5), q * q, 1e-15);

  // Tie at the root goes to the 0-branch.
  TargetSet ends(2, {0b00, 0b11});
  PrefixAdversary adv = greedy_sv_for_set(ends, 0.5);
  EXPECT_DOUBLE_EQ(adv.prob_one(BitString()), 0.25);
  EXPECT_NEAR(set_mass(materialize(adv), ends), q, 1e-15);
  EXPECT_NEAR(lemma_mass_bound(2, 2, 0.5), q, 1e-15);
}

TEST(Greedy, UsesOnlyTheTwoExtremes) {
  SeededRng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng.below(8));
    double delta = 0.05 + 0.9 * rng.uniform01();
    std::vector<std::uint32_t> members;
    for (int k = 0; k < 1 + static_cast<int>(rng.below(10)); ++k) {
      members.push_back(static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n)));
    }
    PrefixAdversary adv = greedy_sv_for_set(TargetSet(n, members), delta);
    SVParams s(n, delta);
    for (double v : adv.table()) EXPECT_TRUE(v == s.p() || v == s.q()) << v;
  }
}

TEST(MassBound, MonotoneInDeltaAndSetSize) {
  for (int n = 2; n <= 6; ++n) {
    for (std::size_t size = 1; size < (std::size_t{1} << n); ++size) {
      EXPECT_GE(lemma_mass_bound(n, size + 1, 0.5), lemma_mass_bound(n, size, 0.5));
      EXPECT_GE(lemma_mass_bound(n, size, 0.6), lemma_mass_bound(n, size, 0.5));
    }
  }
}

TEST(GreedyMass, ExhaustiveOverSubsetsOfThreeBits) {
  for (double delta : {0.1, 0.5, 0.9}) {
    for (std::uint64_t mask = 1; mask < 256; ++mask) {
      TargetSet t = TargetSet::from_mask(3, mask);
      LemmaCheck c = verify_lemma_e1(t, delta);
      EXPECT_TRUE(c.holds) << "mask " << mask << " delta " << delta;
      EXPECT_GE(c.mass, c.bound - kMassTolerance);
    }
  }
}

TEST(Attack, XorOfTwoBits) {
  AttackResult r = attack_condenser(CondenserMap::table(2, 1, {0, 1, 1, 0}), 0.5);
  EXPECT_EQ(r.target_output, 0u);
  EXPECT_EQ(r.fiber_size, 2u);
  EXPECT_NEAR(r.target_set_mass, 0.75, 1e-15);
  EXPECT_NEAR(r.achieved_min_entropy, std::log2(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.theorem_bound, std::log2(4.0 / 3.0), 1e-12);
  EXPECT_TRUE(r.holds());
}

TEST(Attack, IdentityIsTight) {
  for (double delta : {0.1, 0.5, 0.9}) {
    std::vector<std::uint32_t> id(64);
    std::iota(id.begin(), id.end(), 0u);
    AttackResult r = attack_condenser(CondenserMap::table(6, 6, id), delta);
    EXPECT_NEAR(r.achieved_min_entropy, 6 * std::log2(2.0 / (1.0 + delta)), 1e-9);
  }
}

TEST(Attack, ConstantMapGivesZero) {
  AttackResult r = attack_condenser(CondenserMap::table(3, 2, std::vector<std::uint32_t>(8, 2)), 0.3);
  EXPECT_EQ(r.achieved_min_entropy, 0.0);
  EXPECT_EQ(r.target_output, 2u);
  EXPECT_TRUE(r.holds());
}

TEST(Attack, StructuredCondenserFallsToo) {
  AttackResult r = attack_condenser(CondenserMap::structured(2, 2), 0.5);
  EXPECT_TRUE(r.holds());
  EXPECT_LE(r.achieved_min_entropy, 4 * std::log2(4.0 / 3.0) + kEntropyTolerance);
}

TEST(Attack, RandomTablesNeverBeatTheBound) {
  SeededRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint32_t> table(256);
    for (auto& y : table) y = static_cast<std::uint32_t>(rng.below(16));
    AttackResult r = attack_condenser(CondenserMap::table(8, 4, table), 0.5);
    EXPECT_LE(r.achieved_min_entropy, 4 * std::log2(4.0 / 3.0) + kEntropyTolerance);
    EXPECT_TRUE(is_sv(materialize(r.adversary), 0.5));
  }
}

}  // namespace
}  // namespace svc
