#pragma once

#include <optional>
#include <string>

#include "mechkit/mechkit.hpp"

namespace mechkit::testing {

// Recomputes a registry quantity from scratch on the built fixture.
inline std::optional<Scalar> measure(const std::string& name, const Fixture& f) {
  const auto& inst = f.instance;
  const auto& mech = f.mechanism;
  if (name == "epsBIC") return eps_bic(inst, mech);
  if (name == "epsEEIC") return eps_eeic(inst, mech);
  if (name == "revenue") return revenue(inst, mech);
  if (name == "welfare") return welfare(inst, mech);
  if (name == "transformRevenueLoss") return transform_mechanism(inst, mech).report.revenue_loss;
  if (name == "optimalDsicRevenue") return solve_lp(build_lp(inst, 0, IcMode::kDsic)).objective;
  if (name == "optimalBicRevenue") return solve_lp(build_lp(inst, 0, IcMode::kBic)).objective;
  if (name == "optimalBicWelfare") return solve_lp(build_lp(inst, 1, IcMode::kBic)).objective;
  return std::nullopt;
}

inline bool holds(const Scalar& measured, const ExpectedQuantity& q) {
  if (q.relation == "<=") return measured <= q.value;
  if (q.relation == ">=") return measured >= q.value;
  return measured == q.value;
}

}  // namespace mechkit::testing
