#include <gtest/gtest.h>

#include <random>

#include "mechkit/mechkit.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

namespace mechkit {
namespace {

const Scalar kTenth(1, 10);

TEST(ScalarTest, CanonicalForm) {
  EXPECT_EQ(Scalar(2, 4).str(), "1/2");
  EXPECT_EQ(Scalar(3, -6).str(), "-1/2");
  EXPECT_EQ(Scalar(4, 2).str(), "2");
  EXPECT_EQ((Scalar(1, 3) + Scalar(1, 6)).str(), "1/2");
  EXPECT_THROW(Scalar(1, 0), InputError);
  EXPECT_THROW(Scalar(1) / Scalar(0), InvariantError);
}

TEST(ScalarTest, ParsesRationalsAndDecimalsExactly) {
  EXPECT_EQ(Scalar::parse("3/12"), Scalar(1, 4));
  EXPECT_EQ(Scalar::parse("-0.125"), Scalar(-1, 8));
  EXPECT_EQ(Scalar::parse("1.5e-3"), Scalar(3, 2000));
  EXPECT_EQ(Scalar::parse("+7"), Scalar(7));
  EXPECT_EQ(Scalar::parse("2E2"), Scalar(200));
  EXPECT_EQ(Scalar::parse("010"), Scalar(10));
  EXPECT_EQ(Scalar::parse("007/08"), Scalar(7, 8));
  EXPECT_EQ(Scalar::parse("0.0625"), Scalar(1, 16));
  EXPECT_EQ(Scalar::parse("123456789012345678901234567890").str(),
            "123456789012345678901234567890");
  for (const char* bad : {"", "abc", "1/", "/2", "1.2.3", "1/0", "1e", "--1", "0x10"}) {
    EXPECT_THROW(Scalar::parse(bad), InputError) << bad;
  }
}

TEST(ScalarTest, FromDoubleRecoversSimpleFractions) {
  EXPECT_EQ(Scalar::from_double(0.1), Scalar(1, 10));
  EXPECT_EQ(Scalar::from_double(1.0 / 3.0), Scalar(1, 3));
  EXPECT_EQ(Scalar::from_double(-2.75), Scalar(-11, 4));
  EXPECT_EQ(Scalar::from_double(0.0), Scalar(0));
  const double pi = 3.14159265358979;
  EXPECT_LE(std::abs(Scalar::from_double(pi).to_double() - pi), 1e-9);
}

TEST(ProfileSpaceTest, RowMajorLastAgentFastest) {
  Instance inst;
  inst.type_spaces = {{"a", "b"}, {"x", "y", "z"}};
  const ProfileSpace space(inst);
  EXPECT_EQ(space.size(), 6u);
  EXPECT_EQ(space.index({0, 1}), 1u);
  EXPECT_EQ(space.index({1, 0}), 3u);
  EXPECT_EQ(space.decode(5), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(space.with_type(5, 0, 0), 2u);
  EXPECT_THROW(space.index({2, 0}), InputError);
}

TEST(ValidateTest, RejectsMalformedInstances) {
  auto f = example_better_result(4, kTenth);
  Instance bad = f.instance;
  bad.distributions[0][0] = Scalar(1, 2);
  EXPECT_THROW(validate(bad), InputError);
  bad = f.instance;
  bad.valuations[0][1][0] = -1;
  EXPECT_THROW(validate(bad), InputError);
  bad = f.instance;
  bad.valuations[0].pop_back();
  EXPECT_THROW(validate(bad), InputError);
  Mechanism m = f.mechanism;
  m.allocation[0] = {Scalar(1, 2), Scalar(1, 3)};
  EXPECT_THROW(validate(f.instance, m), InputError);
}

TEST(ValidateTest, OutcomeCoordinatesMustBeProductAndPrivate) {
  auto f = disjoint_chains({2, 2}, kTenth);
  EXPECT_NO_THROW(validate(f.instance));
  Instance bad = f.instance;
  (*bad.outcome_coordinates)[1] = (*bad.outcome_coordinates)[0];
  EXPECT_THROW(validate(bad), InputError);
  bad = f.instance;
  bad.valuations[0][0][1] = 7;  // depends on agent 2's component
  EXPECT_THROW(validate(bad), InputError);
}

TEST(UtilityTest, ExampleOneValues) {
  const auto f = example_better_result(4, kTenth);
  EXPECT_EQ(utility(f.instance, f.mechanism, 0, 3, {3}), Scalar(0));
  EXPECT_EQ(utility(f.instance, f.mechanism, 0, 3, {0}), kTenth);
  EXPECT_THROW(utility(f.instance, f.mechanism, 1, 0, {0}), InputError);
  EXPECT_THROW(utility(f.instance, f.mechanism, 0, 4, {0}), InputError);
}

TEST(UtilityTest, ZeroEverything) {
  auto f = single_item({0, 0}, {Scalar(1, 2), Scalar(1, 2)});
  EXPECT_EQ(utility(f.instance, f.mechanism, 0, 1, {0}), Scalar(0));
}

TEST(InterimRulesTest, SingleAgentIsIdentity) {
  const auto f = chain_lower_bound(3, kTenth);
  const auto induced = interim_rules(f.instance, f.mechanism);
  ASSERT_EQ(induced.size(), 1u);
  EXPECT_EQ(induced[0].allocation, f.mechanism.allocation);
  for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(induced[0].payment[t], f.mechanism.payment[t][0]);
}

TEST(InterimRulesTest, DegenerateSecondAgent) {
  Instance inst;
  inst.agents = {"a", "b"};
  inst.type_spaces = {{"t1", "t2"}, {"c"}};
  inst.distributions = {{Scalar(1, 3), Scalar(2, 3)}, {Scalar(1)}};
  inst.outcomes = {"o1", "o2"};
  inst.valuations = {{{1, 0}, {0, 1}}, {{2, 3}}};
  Mechanism mech{{{Scalar(1, 4), Scalar(3, 4)}, {1, 0}}, {{1, 2}, {3, 4}}};
  const auto induced = interim_rules(inst, mech);
  EXPECT_EQ(induced[0].allocation[0], mech.allocation[0]);
  EXPECT_EQ(induced[0].allocation[1], mech.allocation[1]);
  EXPECT_EQ(induced[0].payment[1], Scalar(3));
  EXPECT_EQ(induced[1].payment[0], Scalar(1, 3) * 2 + Scalar(2, 3) * 4);
}

TEST(InterimRulesTest, MatchesDirectSummation) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = testing::random_instance(rng, {2, 2, 2, false});
    const auto mech = testing::random_mechanism(rng, inst);
    EXPECT_EQ(interim_rules(inst, mech), testing::brute_interim(inst, mech));
  }
}

TEST(EpsBicTest, ExampleOne) {
  const auto f = example_better_result(4, kTenth);
  EXPECT_EQ(eps_bic(f.instance, f.mechanism), kTenth);
}

TEST(EpsBicTest, PostedPriceIsBic) {
  // Types value the item at 1, 2, 3; posted price 2 is taken by types 2 and 3.
  Fixture f = single_item({1, 2, 3}, {Scalar(1, 3), Scalar(1, 3), Scalar(1, 3)});
  f.mechanism.allocation = {{0, 1}, {1, 0}, {1, 0}};
  f.mechanism.payment = {{0}, {2}, {2}};
  EXPECT_EQ(eps_bic(f.instance, f.mechanism), Scalar(0));
}

TEST(EpsBicTest, EeicFixtureRegretScan) {
  const auto f = eeic_impossibility(4, kTenth);
  // Exhaustive scan over every (true type, report) pair.
  Scalar worst = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      worst = max(worst, utility(f.instance, f.mechanism, 0, a, {b}) -
                             utility(f.instance, f.mechanism, 0, a, {a}));
    }
  }
  EXPECT_EQ(worst, Scalar(4));
  EXPECT_EQ(eps_bic(f.instance, f.mechanism), worst);
}

TEST(EpsBicTest, EqualsMaxOverInducedMechanisms) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto mech = testing::random_mechanism(rng, inst, rep % 2 == 0);
    Scalar best = 0;
    for (const auto& m : interim_rules(inst, mech)) {
      best = max(best, eps_bic(AgentModel::of(inst, m.agent), m));
    }
    EXPECT_EQ(eps_bic(inst, mech), best);
  }
}

TEST(EpsEeicTest, EeicFixtureDefiningExpectation) {
  const auto f = eeic_impossibility(4, kTenth);
  const auto& d = f.instance.distributions[0];
  const Scalar expected = d[1] * Scalar(4) + (d[2] + d[3]) * kTenth;
  EXPECT_EQ(eps_eeic(f.instance, f.mechanism), expected);
  EXPECT_EQ(expected, kTenth);
}

TEST(EpsEeicTest, BicSingleAgentHasZeroEiic) {
  Fixture f = single_item({1, 2}, {Scalar(1, 2), Scalar(1, 2)});
  EXPECT_EQ(eps_eiic(f.instance, f.mechanism), Scalar(0));
}

TEST(EpsEeicTest, InterimBelowExPostOnRandomInstances) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto mech = testing::random_mechanism(rng, inst, rep % 2 == 0);
    const Vec eiic = eps_eiic_per_agent(inst, mech);
    const Vec eeic = eps_eeic_per_agent(inst, mech);
    for (std::size_t i = 0; i < eiic.size(); ++i) EXPECT_LE(eiic[i], eeic[i]);
    const auto r = analyze(inst, mech);
    EXPECT_LE(r.eps_eiic, r.eps_eeic);
    EXPECT_GE(r.eps_bic, Scalar(0));
    EXPECT_GE(r.eps_eeic, Scalar(0));
  }
}

TEST(WelfareRevenueTest, ExampleOne) {
  const auto f = example_better_result(4, kTenth);
  EXPECT_EQ(revenue(f.instance, f.mechanism), Scalar(5, 4));
  EXPECT_EQ(welfare(f.instance, f.mechanism), Scalar(5, 4));
}

TEST(WelfareRevenueTest, ZeroPayments) {
  Fixture f = single_item({1, 2}, {Scalar(1, 2), Scalar(1, 2)});
  EXPECT_EQ(revenue(f.instance, f.mechanism), Scalar(0));
}

TEST(WelfareRevenueTest, LinearInMixtures) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto a = testing::random_mechanism(rng, inst);
    const auto b = testing::random_mechanism(rng, inst);
    Mechanism mix = a;
    for (std::size_t t = 0; t < mix.allocation.size(); ++t) {
      for (std::size_t o = 0; o < mix.allocation[t].size(); ++o) {
        mix.allocation[t][o] = (a.allocation[t][o] + b.allocation[t][o]) / Scalar(2);
      }
      for (std::size_t i = 0; i < mix.payment[t].size(); ++i) {
        mix.payment[t][i] = (a.payment[t][i] + b.payment[t][i]) / Scalar(2);
      }
    }
    EXPECT_EQ(welfare(inst, mix), (welfare(inst, a) + welfare(inst, b)) / Scalar(2));
    EXPECT_EQ(revenue(inst, mix), (revenue(inst, a) + revenue(inst, b)) / Scalar(2));
  }
}

TEST(WelfareRevenueTest, InterimEvaluationEqualsExPost) {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto mech = testing::random_mechanism(rng, inst, false);
    const auto induced = interim_rules(inst, mech);
    EXPECT_EQ(welfare(inst, induced), welfare(inst, mech));
    EXPECT_EQ(revenue(inst, induced), revenue(inst, mech));
  }
}

TEST(IrCheckTest, ExampleOneBothModes) {
  const auto f = example_better_result(4, kTenth);
  EXPECT_TRUE(ir_check(f.instance, f.mechanism, IrMode::kInterim));
  EXPECT_TRUE(ir_check(f.instance, f.mechanism, IrMode::kExPost));
}

TEST(IrCheckTest, ChargingAWorthlessType) {
  Fixture f = single_item({0}, {Scalar(1)});
  f.mechanism.payment = {{1}};
  EXPECT_FALSE(ir_check(f.instance, f.mechanism, IrMode::kInterim));
  EXPECT_FALSE(ir_check(f.instance, f.mechanism, IrMode::kExPost));
}

TEST(IrCheckTest, ExPostImpliesInterim) {
  std::mt19937_64 rng(23);
  int expost_count = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto mech = testing::random_mechanism(rng, inst, rep % 2 == 0);
    if (ir_check(inst, mech, IrMode::kExPost)) {
      ++expost_count;
      EXPECT_TRUE(ir_check(inst, mech, IrMode::kInterim));
    }
  }
  EXPECT_GT(expost_count, 0);
}

TEST(MenuTest, Sizes) {
  Fixture constant = single_item({1, 2, 3}, {Scalar(1, 3), Scalar(1, 3), Scalar(1, 3)});
  EXPECT_EQ(menu_size(constant.instance, constant.mechanism, 0), 1u);
  const auto ex = example_better_result(4, kTenth);
  EXPECT_EQ(menu_size(ex.instance, ex.mechanism, 0), 2u);
  const auto chain = chain_lower_bound(3, kTenth);
  EXPECT_EQ(menu_size(chain.instance, chain.mechanism, 0), 3u);
}

TEST(AllocationSignatureTest, ConstantAndExampleOne) {
  Fixture constant = single_item({1, 2}, {Scalar(1, 2), Scalar(1, 2)});
  EXPECT_EQ(allocation_signature(constant.instance, constant.mechanism)[0], (Vec{1, 0}));
  const auto ex = example_better_result(4, kTenth);
  EXPECT_EQ(allocation_signature(ex.instance, ex.mechanism)[0], (Vec{Scalar(3, 4), Scalar(1, 4)}));
}

TEST(AllocationSignatureTest, MatchesExAnteOutcomeDistribution) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto mech = testing::random_mechanism(rng, inst);
    const ProfileSpace space(inst);
    Vec direct(inst.num_outcomes(), Scalar(0));
    for (std::size_t t = 0; t < space.size(); ++t) {
      for (std::size_t o = 0; o < direct.size(); ++o) {
        direct[o] += profile_probability(inst, space, t) * mech.allocation[t][o];
      }
    }
    for (const auto& sig : allocation_signature(inst, mech)) EXPECT_EQ(sig, direct);
  }
}

}  // namespace
}  // namespace mechkit
