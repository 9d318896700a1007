#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "mechkit/json_io.hpp"
#include "mechkit/mechkit.hpp"
#include "support/expected.hpp"
#include "support/random_instances.hpp"

namespace mechkit {
namespace {

using io::Json;

const Scalar kTenth(1, 10);

TEST(FixtureRegistryTest, NamesAreUniqueAndFindable) {
  std::set<std::string> names;
  for (const auto& spec : fixture_registry()) {
    EXPECT_TRUE(names.insert(spec.name).second) << spec.name;
    EXPECT_EQ(&find_fixture(spec.name), &spec);
    EXPECT_FALSE(spec.description.empty());
  }
  EXPECT_EQ(names.size(), 8u);
  EXPECT_THROW(find_fixture("nope"), InputError);
}

TEST(FixtureRegistryTest, ExpectedQuantitiesHoldAtDefaults) {
  const FixtureParams params;
  for (const auto& spec : fixture_registry()) {
    const Fixture f = spec.build(params);
    EXPECT_NO_THROW(validate(f.instance));
    EXPECT_NO_THROW(validate(f.instance, f.mechanism));
    for (const auto& q : spec.expected(params)) {
      const auto measured = testing::measure(q.name, f);
      ASSERT_TRUE(measured.has_value()) << spec.name << " " << q.name;
      EXPECT_TRUE(testing::holds(*measured, q))
          << spec.name << " " << q.name << " measured " << *measured << " expected " << q.relation
          << " " << q.value;
      EXPECT_TRUE(q.basis == "published" || q.basis == "structural" || q.basis == "computed");
    }
  }
}

TEST(FixtureRegistryTest, ExpectedQuantitiesHoldAcrossParameters) {
  for (std::size_t m : {1u, 9u, 16u}) {
    FixtureParams p;
    p.m = m;
    p.eps = Scalar(1, 7);
    const auto& spec = find_fixture("example_better_result");
    const auto f = spec.build(p);
    for (const auto& q : spec.expected(p)) {
      EXPECT_TRUE(testing::holds(*testing::measure(q.name, f), q)) << m << " " << q.name;
    }
  }
  for (std::size_t m : {2u, 3u, 7u}) {
    FixtureParams p;
    p.m = m;
    const auto& spec = find_fixture("chain_lower_bound");
    const auto f = spec.build(p);
    for (const auto& q : spec.expected(p)) {
      EXPECT_TRUE(testing::holds(*testing::measure(q.name, f), q)) << m << " " << q.name;
    }
  }
}

TEST(FixtureTest, ParameterValidation) {
  EXPECT_THROW(example_better_result(5, kTenth), InputError);
  EXPECT_THROW(example_better_result(4, 0), InputError);
  EXPECT_THROW(eeic_impossibility(2, kTenth), InputError);
  EXPECT_THROW(menu_bound_instance(3, 4, kTenth), InputError);
  EXPECT_THROW(two_type_swap(1), InputError);
  EXPECT_THROW(disjoint_chains({}, kTenth), InputError);
}

TEST(FixtureTest, MenuBoundRegretsStayWithinEps) {
  const auto f = menu_bound_instance(6, 2, kTenth);
  EXPECT_LE(eps_bic(f.instance, f.mechanism), kTenth);
  EXPECT_EQ(menu_size(f.instance, f.mechanism, 0), 2u);
  const auto r = transform_mechanism(f.instance, f.mechanism);
  EXPECT_LE(r.report.revenue_loss, Scalar(2) * kTenth);
}

TEST(FixtureTest, DsicFailureIsNearlyBic) {
  const Scalar eps(1, 16);
  const auto f = dsic_failure(eps);
  EXPECT_EQ(f.instance.num_outcomes(), 9u);
  EXPECT_LE(eps_bic(f.instance, f.mechanism), eps);
  EXPECT_EQ(revenue(f.instance, f.mechanism), Scalar(51, 16) + eps / Scalar(16));
  EXPECT_TRUE(ir_check(f.instance, f.mechanism, IrMode::kInterim));
}

TEST(BruteForceTest, RegretTensorMatchesInterimRegret) {
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_instance(rng);
    const auto mech = testing::random_mechanism(rng, inst);
    const auto tensor = brute_force_regret(inst, mech);
    const auto induced = interim_rules(inst, mech);
    EXPECT_EQ(tensor, brute_force_regret(inst, induced));
    for (const auto& m : induced) {
      EXPECT_EQ(tensor[m.agent], regret_table(AgentModel::of(inst, m.agent), m));
    }
  }
}

TEST(JsonTest, ScalarsFromEveryNumberForm) {
  EXPECT_EQ(io::scalar_at(Json("3/4"), "x"), Scalar(3, 4));
  EXPECT_EQ(io::scalar_at(Json(5), "x"), Scalar(5));
  EXPECT_EQ(io::scalar_at(Json(-5), "x"), Scalar(-5));
  EXPECT_EQ(io::scalar_at(Json(0.25), "x"), Scalar(1, 4));
  EXPECT_EQ(io::scalar_at(Json(18446744073709551615ULL), "x").str(), "18446744073709551615");
  try {
    io::scalar_at(Json("1/0"), "instance.valuations[0][1][0]");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("instance.valuations[0][1][0]"), std::string::npos);
  }
  EXPECT_THROW(io::scalar_at(Json(true), "x"), InputError);
  EXPECT_THROW(io::scalar_at(Json::array(), "x"), InputError);
}

TEST(JsonTest, InstanceAndMechanismRoundTrip) {
  for (const auto& spec : fixture_registry()) {
    const auto f = spec.build(FixtureParams{});
    const Json ij = io::parse_text(io::dump(io::to_json(f.instance)), "instance");
    const Instance inst = io::instance_from_json(ij);
    EXPECT_EQ(io::dump(io::to_json(inst)), io::dump(io::to_json(f.instance)));
    const Mechanism mech =
        io::mechanism_from_json(io::parse_text(io::dump(io::to_json(f.mechanism)), "m"), inst);
    EXPECT_EQ(mech, f.mechanism);
    const auto induced = interim_rules(inst, mech);
    EXPECT_EQ(io::interim_from_json(io::to_json(inst, induced), inst), induced);
  }
}

TEST(JsonTest, ReportsUseStringScalars) {
  const auto f = example_better_result(4, kTenth);
  const Json a = io::to_json(analyze(f.instance, f.mechanism));
  EXPECT_EQ(a["epsBIC"], "1/10");
  EXPECT_EQ(a["revenue"], "5/4");
  EXPECT_EQ(a["expostIR"], true);
  const Json t = io::to_json(transform_mechanism(f.instance, f.mechanism).report);
  EXPECT_EQ(t["revenueLoss"], "1/40");
  EXPECT_EQ(t["certificates"]["bic"], true);
  EXPECT_EQ(t["steps"][0]["kind"], to_string(StepKind::kPaymentReduce));
  EXPECT_EQ(t["steps"][0]["delta"], "1/10");
  const Json interim_only = io::to_json(analyze(f.instance, interim_rules(f.instance, f.mechanism)));
  EXPECT_TRUE(interim_only["expostIR"].is_null());
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(JsonTest, ErrorsNameTheOffendingPath) {
  const auto f = example_better_result(4, kTenth);
  const Json good = io::to_json(f.instance);

  Json j = good;
  j.erase("outcomes");
  EXPECT_NE(error_of([&] { io::instance_from_json(j); }).find("instance.outcomes: missing field"),
            std::string::npos);
  j = good;
  j["valuations"][0][1][0] = "abc";
  EXPECT_NE(error_of([&] { io::instance_from_json(j); }).find("instance.valuations[0][1][0]"),
            std::string::npos);
  j = good;
  j["distributions"][0][0] = "1/2";
  EXPECT_NE(error_of([&] { io::instance_from_json(j); }).find("instance.distributions"),
            std::string::npos);
  j = good;
  j["schema"] = "other";
  EXPECT_NE(error_of([&] { io::instance_from_json(j); }).find("instance.schema"),
            std::string::npos);
  j = good;
  j["typeSpaces"][0][2] = 7;
  EXPECT_NE(error_of([&] { io::instance_from_json(j); }).find("instance.typeSpaces[0][2]"),
            std::string::npos);
  j = good;
  j.erase("schema");
  EXPECT_NO_THROW(io::instance_from_json(j));

  Json m = io::to_json(f.mechanism);
  m["profileOrder"] = "column-major";
  EXPECT_NE(error_of([&] { io::mechanism_from_json(m, f.instance); }).find("profileOrder"),
            std::string::npos);
  m = io::to_json(f.mechanism);
  m["allocation"][2] = Json::array({"1/2", "1/3"});
  EXPECT_NE(error_of([&] { io::mechanism_from_json(m, f.instance); }).find("mechanism.allocation"),
            std::string::npos);
  m = io::to_json(f.mechanism);
  m["payments"].erase(0);
  EXPECT_FALSE(error_of([&] { io::mechanism_from_json(m, f.instance); }).empty());

  EXPECT_NE(error_of([] { io::parse_text("{bad", "input.json"); }).find("input.json"),
            std::string::npos);
  EXPECT_NE(error_of([] { io::read_file("/nonexistent/file.json"); }).find("cannot open"),
            std::string::npos);
}

}  // namespace
}  // namespace mechkit
