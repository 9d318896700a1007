#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mechkit/analysis.hpp"
#include "mechkit/simplex.hpp"
#include "mechkit/transform.hpp"

namespace mechkit {

enum class IcMode { kBic, kDsic };

inline const char* to_string(IcMode m) { return m == IcMode::kBic ? "bic" : "dsic"; }

// Blended objective (1 - lambda) * revenue + lambda * welfare.
inline Scalar mu(const Instance& inst, const Mechanism& mech, const Scalar& lambda) {
  return (Scalar(1) - lambda) * revenue(inst, mech) + lambda * welfare(inst, mech);
}

inline Scalar mu(const Instance& inst, const std::vector<InducedMechanism>& induced,
                 const Scalar& lambda) {
  return (Scalar(1) - lambda) * revenue(inst, induced) + lambda * welfare(inst, induced);
}

// Variables: x(t, o) then p(t, i) for every profile t, profile-major.
struct LPModel {
  Instance instance;
  Scalar lambda;
  IcMode ic = IcMode::kBic;
  LinearProgram lp;
  std::size_t ic_rows = 0;
  std::size_t ir_rows = 0;
  std::size_t simplex_rows = 0;

  std::size_t block() const { return instance.num_outcomes() + instance.num_agents(); }
  std::size_t x_index(std::size_t t, std::size_t o) const { return t * block() + o; }
  std::size_t p_index(std::size_t t, std::size_t i) const {
    return t * block() + instance.num_outcomes() + i;
  }
  std::string var_name(std::size_t v) const {
    const std::size_t t = v / block(), k = v % block();
    if (k < instance.num_outcomes()) return "x_" + std::to_string(t) + "_" + std::to_string(k);
    return "p_" + std::to_string(t) + "_" + std::to_string(k - instance.num_outcomes());
  }
};

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Scalar objective;
  std::optional<Mechanism> mechanism;
  std::size_t pivots = 0;
};

namespace detail {

using Terms = std::vector<std::pair<std::size_t, Scalar>>;

inline void add_term(Terms& terms, std::size_t var, const Scalar& coef) {
  if (coef.is_zero()) return;
  for (auto& [v, c] : terms) {
    if (v == var) {
      c += coef;
      return;
    }
  }
  terms.emplace_back(var, coef);
}

inline void drop_zeros(Terms& terms) {
  std::erase_if(terms, [](const auto& term) { return term.second.is_zero(); });
}

// weight * [u_i(true type, output at profile idx)], as LP terms.
inline void add_utility(Terms& terms, const LPModel& model, std::size_t idx, std::size_t agent,
                        std::size_t true_type, const Scalar& weight) {
  const Instance& inst = model.instance;
  for (std::size_t o = 0; o < inst.num_outcomes(); ++o) {
    add_term(terms, model.x_index(idx, o), weight * inst.valuations[agent][true_type][o]);
  }
  add_term(terms, model.p_index(idx, agent), -weight);
}

}  // namespace detail

inline LPModel build_lp(const Instance& inst, const Scalar& lambda, IcMode ic) {
  validate(inst);
  require(lambda.sign() >= 0 && lambda <= Scalar(1), "lambda must lie in [0, 1]");
  LPModel model{inst, lambda, ic, {}, 0, 0, 0};
  const ProfileSpace space(inst);
  const std::size_t n = inst.num_agents(), k = inst.num_outcomes();
  LinearProgram& lp = model.lp;
  lp.num_vars = space.size() * (k + n);
  lp.objective.assign(lp.num_vars, Scalar(0));
  for (std::size_t t = 0; t < space.size(); ++t) {
    const Scalar pr = profile_probability(inst, space, t);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ti = space.type_of(t, i);
      for (std::size_t o = 0; o < k; ++o) {
        lp.objective[model.x_index(t, o)] += lambda * pr * inst.valuations[i][ti][o];
      }
      lp.objective[model.p_index(t, i)] += (Scalar(1) - lambda) * pr;
    }
  }
  // Incentive rows.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t ti = 0; ti < inst.num_types(i); ++ti) {
      for (std::size_t dev = 0; dev < inst.num_types(i); ++dev) {
        if (dev == ti) continue;
        const std::string base = "ic_" + std::to_string(i) + "_" + std::to_string(ti) + "_" +
                                 std::to_string(dev);
        if (ic == IcMode::kBic) {
          detail::Terms terms;
          for (std::size_t t = 0; t < space.size(); ++t) {
            if (space.type_of(t, i) != ti) continue;
            const Scalar w = others_probability(inst, space, t, i);
            detail::add_utility(terms, model, t, i, ti, w);
            detail::add_utility(terms, model, space.with_type(t, i, dev), i, ti, -w);
          }
          detail::drop_zeros(terms);
          lp.rows.push_back({std::move(terms), Sense::kGe, Scalar(0), base});
          ++model.ic_rows;
        } else {
          for (std::size_t t = 0; t < space.size(); ++t) {
            if (space.type_of(t, i) != ti) continue;
            detail::Terms terms;
            detail::add_utility(terms, model, t, i, ti, Scalar(1));
            detail::add_utility(terms, model, space.with_type(t, i, dev), i, ti, Scalar(-1));
            detail::drop_zeros(terms);
            lp.rows.push_back({std::move(terms), Sense::kGe, Scalar(0),
                               base + "_at_" + std::to_string(t)});
            ++model.ic_rows;
          }
        }
      }
    }
  }
  // Interim IR rows.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t ti = 0; ti < inst.num_types(i); ++ti) {
      detail::Terms terms;
      for (std::size_t t = 0; t < space.size(); ++t) {
        if (space.type_of(t, i) != ti) continue;
        detail::add_utility(terms, model, t, i, ti, others_probability(inst, space, t, i));
      }
      detail::drop_zeros(terms);
      lp.rows.push_back({std::move(terms), Sense::kGe, Scalar(0),
                         "ir_" + std::to_string(i) + "_" + std::to_string(ti)});
      ++model.ir_rows;
    }
  }
  for (std::size_t t = 0; t < space.size(); ++t) {
    detail::Terms terms;
    for (std::size_t o = 0; o < k; ++o) terms.emplace_back(model.x_index(t, o), Scalar(1));
    lp.rows.push_back({std::move(terms), Sense::kEq, Scalar(1), "prob_" + std::to_string(t)});
    ++model.simplex_rows;
  }
  return model;
}

inline Mechanism extract_mechanism(const LPModel& model, const std::vector<Scalar>& x) {
  const ProfileSpace space(model.instance);
  Mechanism mech;
  for (std::size_t t = 0; t < space.size(); ++t) {
    Vec alloc, pay;
    for (std::size_t o = 0; o < model.instance.num_outcomes(); ++o) {
      alloc.push_back(x[model.x_index(t, o)]);
    }
    for (std::size_t i = 0; i < model.instance.num_agents(); ++i) {
      pay.push_back(x[model.p_index(t, i)]);
    }
    mech.allocation.push_back(std::move(alloc));
    mech.payment.push_back(std::move(pay));
  }
  return mech;
}

inline std::vector<Scalar> flatten(const LPModel& model, const Mechanism& mech) {
  validate(model.instance, mech);
  std::vector<Scalar> x(model.lp.num_vars, Scalar(0));
  for (std::size_t t = 0; t < mech.allocation.size(); ++t) {
    for (std::size_t o = 0; o < model.instance.num_outcomes(); ++o) {
      x[model.x_index(t, o)] = mech.allocation[t][o];
    }
    for (std::size_t i = 0; i < model.instance.num_agents(); ++i) {
      x[model.p_index(t, i)] = mech.payment[t][i];
    }
  }
  return x;
}

// Name of the first violated row, if any.
inline std::optional<std::string> first_violation(const LinearProgram& lp,
                                                  const std::vector<Scalar>& x) {
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v].sign() < 0) return "nonnegativity of variable " + std::to_string(v);
  }
  for (const auto& row : lp.rows) {
    Scalar lhs = 0;
    for (const auto& [var, coef] : row.coeffs) lhs += coef * x[var];
    const bool ok = row.sense == Sense::kLe   ? lhs <= row.rhs
                    : row.sense == Sense::kGe ? lhs >= row.rhs
                                              : lhs == row.rhs;
    if (!ok) return row.name;
  }
  return std::nullopt;
}

inline Scalar objective_value(const LinearProgram& lp, const std::vector<Scalar>& x) {
  Scalar s = 0;
  for (std::size_t v = 0; v < x.size(); ++v) s += lp.objective[v] * x[v];
  return s;
}

// Exact optimum. An optional feasible incumbent adds the cut
// objective >= objective(incumbent).
inline LPSolution solve_lp(const LPModel& model, const std::optional<Mechanism>& incumbent = {}) {
  LinearProgram lp = model.lp;
  if (incumbent) {
    const auto x0 = flatten(model, *incumbent);
    if (auto bad = first_violation(model.lp, x0)) {
      throw InputError("incumbent mechanism violates LP row " + *bad);
    }
    detail::Terms terms;
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
      if (!lp.objective[v].is_zero()) terms.emplace_back(v, lp.objective[v]);
    }
    lp.rows.push_back({std::move(terms), Sense::kGe, objective_value(lp, x0), "incumbent"});
  }
  const SimplexResult res = simplex_maximize(lp);
  LPSolution sol;
  sol.status = res.status;
  sol.pivots = res.pivots;
  if (res.status != LPStatus::kOptimal) return sol;
  sol.objective = res.objective;
  if (auto bad = first_violation(lp, res.x)) {
    throw InvariantError("simplex optimum violates LP row " + *bad);
  }
  sol.mechanism = extract_mechanism(model, res.x);
  validate(model.instance, *sol.mechanism);
  return sol;
}

inline std::string dump_lp(const LPModel& model) {
  std::ostringstream os;
  auto terms = [&](const std::vector<std::pair<std::size_t, Scalar>>& ts) {
    if (ts.empty()) {
      os << "0";
      return;
    }
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const auto& [v, c] = ts[j];
      if (j > 0) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      os << abs(c) << " " << model.var_name(v);
    }
  };
  os << "# variables " << model.lp.num_vars << ", rows " << model.lp.rows.size() << ", ic "
     << to_string(model.ic) << ", lambda " << model.lambda << "\n";
  os << "maximize: ";
  std::vector<std::pair<std::size_t, Scalar>> obj;
  for (std::size_t v = 0; v < model.lp.num_vars; ++v) {
    if (!model.lp.objective[v].is_zero()) obj.emplace_back(v, model.lp.objective[v]);
  }
  terms(obj);
  os << "\nsubject to:\n";
  for (const auto& row : model.lp.rows) {
    os << row.name << ": ";
    terms(row.coeffs);
    os << (row.sense == Sense::kLe ? " <= " : row.sense == Sense::kGe ? " >= " : " = ") << row.rhs
       << "\n";
  }
  os << "bounds: all variables >= 0\n";
  return os.str();
}

// Type-space coarsening. grid[i] lists the retained type indices of agent i;
// every fine type maps to the largest retained index not above it (types
// below the first grid point map to the first grid point).
struct Coupling {
  std::vector<std::vector<std::size_t>> type_map;  // [agent][fine type] -> coarse type
  std::vector<std::size_t> profile_map;            // fine profile -> coarse profile
};

struct Discretization {
  Instance coarse;
  Coupling coupling;
};

inline Discretization discretize_and_couple(const Instance& inst,
                                            const std::vector<std::vector<std::size_t>>& grid) {
  validate(inst);
  require(grid.size() == inst.num_agents(), "grid: one index list per agent required");
  Discretization d;
  Instance& c = d.coarse;
  c.agents = inst.agents;
  c.outcomes = inst.outcomes;
  c.outcome_coordinates = inst.outcome_coordinates;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    const auto& g = grid[i];
    require(!g.empty(), "grid for agent " + inst.agents[i] + " is empty");
    for (std::size_t j = 0; j < g.size(); ++j) {
      require(g[j] < inst.num_types(i), "grid index out of range for agent " + inst.agents[i]);
      require(j == 0 || g[j - 1] < g[j], "grid indices must be strictly increasing");
    }
    std::vector<std::string> ids;
    Matrix vals;
    for (auto t : g) {
      ids.push_back(inst.type_spaces[i][t]);
      vals.push_back(inst.valuations[i][t]);
    }
    Vec mass(g.size(), Scalar(0));
    std::vector<std::size_t> map(inst.num_types(i), 0);
    for (std::size_t t = 0; t < inst.num_types(i); ++t) {
      std::size_t slot = 0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[j] <= t) slot = j;
      }
      map[t] = slot;
      mass[slot] += inst.distributions[i][t];
    }
    c.type_spaces.push_back(std::move(ids));
    c.valuations.push_back(std::move(vals));
    c.distributions.push_back(std::move(mass));
    d.coupling.type_map.push_back(std::move(map));
  }
  const ProfileSpace fine(inst), coarse(c);
  for (std::size_t t = 0; t < fine.size(); ++t) {
    std::vector<std::size_t> prof = fine.decode(t);
    for (std::size_t i = 0; i < prof.size(); ++i) prof[i] = d.coupling.type_map[i][prof[i]];
    d.coupling.profile_map.push_back(coarse.index(prof));
  }
  return d;
}

// Fine-space mechanism that runs the coarse mechanism on the coupled profile.
inline Mechanism lift(const Coupling& coupling, const Mechanism& coarse) {
  Mechanism fine;
  for (auto c : coupling.profile_map) {
    fine.allocation.push_back(coarse.allocation.at(c));
    fine.payment.push_back(coarse.payment.at(c));
  }
  return fine;
}

struct AMDReport {
  Scalar lambda;
  IcMode ic = IcMode::kBic;
  Instance coarse;
  LPStatus status = LPStatus::kInfeasible;
  Scalar coarse_optimum;
  Mechanism lifted;
  AnalysisReport lifted_analysis;
  Scalar mu_lifted;
  Scalar mu_final;
  Scalar slack;  // (1 - lambda) * sum_i m_i * eps, eps the lifted eps_bic
  TransformReport transform;
};

struct AMDResult {
  std::vector<InducedMechanism> induced;
  AMDReport report;
};

inline AMDResult amd_pipeline(const Instance& inst, const Scalar& lambda,
                              const std::vector<std::vector<std::size_t>>& grid,
                              IcMode ic = IcMode::kBic) {
  AMDResult out;
  AMDReport& rep = out.report;
  rep.lambda = lambda;
  rep.ic = ic;
  const Discretization d = discretize_and_couple(inst, grid);
  rep.coarse = d.coarse;
  const LPSolution sol = solve_lp(build_lp(d.coarse, lambda, ic));
  rep.status = sol.status;
  if (sol.status != LPStatus::kOptimal) {
    throw InvariantError(std::string("AMD LP is ") + to_string(sol.status) +
                         "; IR and probability rows should make it feasible and bounded");
  }
  rep.coarse_optimum = sol.objective;
  rep.lifted = lift(d.coupling, *sol.mechanism);
  rep.lifted_analysis = analyze(inst, rep.lifted);
  rep.mu_lifted = mu(inst, rep.lifted, lambda);
  auto transformed = transform_mechanism(inst, rep.lifted, Flavor::kBic);
  out.induced = std::move(transformed.induced);
  rep.transform = std::move(transformed.report);
  rep.mu_final = mu(inst, out.induced, lambda);
  Scalar types = 0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) types += Scalar(inst.num_types(i));
  rep.slack = (Scalar(1) - lambda) * types * rep.lifted_analysis.eps_bic;
  return out;
}

}  // namespace mechkit
