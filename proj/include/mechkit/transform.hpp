#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mechkit/analysis.hpp"
#include "mechkit/type_graph.hpp"

namespace mechkit {

enum class StepKind { kRotation, kFractionalRotation, kPaymentReduce };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::kRotation: return "rotation";
    case StepKind::kFractionalRotation: return "fractionalRotation";
    case StepKind::kPaymentReduce: return "paymentReduce";
  }
  return "?";
}

struct TransformStep {
  StepKind kind = StepKind::kRotation;
  std::size_t agent = 0;
  std::vector<std::size_t> cycle;  // rotation steps
  std::size_t source = 0;          // payment steps
  std::vector<std::size_t> ancestor_set;
  Scalar delta;                    // applied payment decrease
  Scalar eps_bar;                  // smallest positive regret out of the source
  std::optional<Scalar> eps_t;     // slack toward the rest; absent when S is everything
  Scalar weight_before;
  Scalar weight_after;
  std::size_t positive_edges_before = 0;
  std::size_t positive_edges_after = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
};

inline std::string describe(const TransformStep& s) {
  std::ostringstream os;
  os << "agent " << s.agent << " " << to_string(s.kind);
  auto list = [&](const std::vector<std::size_t>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
  };
  if (s.kind == StepKind::kPaymentReduce) {
    os << " source=" << s.source << " S=";
    list(s.ancestor_set);
    os << " delta=" << s.delta;
  } else {
    os << " cycle=";
    list(s.cycle);
  }
  os << " weight " << s.weight_before << " -> " << s.weight_after;
  return os.str();
}

inline std::string describe(const std::vector<TransformStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += describe(s) + "\n";
  return out;
}

namespace detail {

inline void check_cycle(const std::vector<std::size_t>& cycle, std::size_t m) {
  require(cycle.size() >= 2, "cycle must contain at least two distinct types");
  std::vector<bool> seen(m, false);
  for (auto t : cycle) {
    require(t < m, "cycle references unknown type " + std::to_string(t));
    require(!seen[t], "cycle repeats type " + std::to_string(t));
    seen[t] = true;
  }
}

}  // namespace detail

// Each cycle member takes its successor's output.
inline InducedMechanism rotate_cycle(const InducedMechanism& induced, const Vec& dist,
                                     const std::vector<std::size_t>& cycle) {
  detail::check_cycle(cycle, induced.payment.size());
  require(dist.size() == induced.payment.size(), "distribution length differs from type count");
  require(is_uniform(dist), "rotation requires a uniform type distribution");
  InducedMechanism out = induced;
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    const std::size_t next = cycle[(j + 1) % cycle.size()];
    out.allocation[cycle[j]] = induced.allocation[next];
    out.payment[cycle[j]] = induced.payment[next];
  }
  return out;
}

// Moves mass f(t_k) of each successor's output onto its predecessor, with
// t_k the least likely cycle member.
inline InducedMechanism fractional_rotate(const InducedMechanism& induced, const Vec& dist,
                                          const std::vector<std::size_t>& cycle) {
  detail::check_cycle(cycle, induced.payment.size());
  require(dist.size() == induced.payment.size(), "distribution length differs from type count");
  std::size_t k = cycle.front();
  for (auto t : cycle) {
    require(dist[t].sign() > 0, "fractional rotation through zero-probability type " +
                                    std::to_string(t));
    if (dist[t] < dist[k] || (dist[t] == dist[k] && t < k)) k = t;
  }
  const Scalar& fk = dist[k];
  InducedMechanism out = induced;
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    const std::size_t cur = cycle[j];
    const std::size_t next = cycle[(j + 1) % cycle.size()];
    const Scalar keep = (dist[cur] - fk) / dist[cur];
    const Scalar take = fk / dist[cur];
    for (std::size_t o = 0; o < out.allocation[cur].size(); ++o) {
      out.allocation[cur][o] = keep * induced.allocation[cur][o] + take * induced.allocation[next][o];
    }
    out.payment[cur] = keep * induced.payment[cur] + take * induced.payment[next];
  }
  return out;
}

struct PaymentReduceResult {
  InducedMechanism induced;
  Scalar delta;
  Scalar eps_bar;
  std::optional<Scalar> eps_t;
  std::vector<std::size_t> ancestor_set;
};

// Lowers the payments of the source and all its ancestors by the largest
// amount that removes no edge into the set and closes a positive edge of the
// source.
inline PaymentReduceResult payment_reduce(const InducedMechanism& induced, const TypeGraph& g,
                                          std::size_t source) {
  require(source < g.size(), "payment_reduce: unknown source " + std::to_string(source));
  require(induced.payment.size() == g.size(), "payment_reduce: graph and mechanism differ in size");
  const Matrix& u = g.utilities();
  PaymentReduceResult r;
  r.ancestor_set = ancestors(g, source);
  std::vector<bool> in_set(g.size(), false);
  for (auto t : r.ancestor_set) in_set[t] = true;

  std::optional<Scalar> eps_bar;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.is_positive(source, k)) continue;
    require(!in_set[k], "payment_reduce: source lies on a positive cycle");
    const Scalar regret = u[source][k] - u[source][source];
    if (!eps_bar || regret < *eps_bar) eps_bar = regret;
  }
  require(eps_bar.has_value(), "payment_reduce: source has no outgoing positive edge");
  for (std::size_t t = 0; t < g.size(); ++t) {
    require(!g.is_positive(t, source), "payment_reduce: source has an incoming positive edge");
  }
  r.eps_bar = *eps_bar;

  for (std::size_t out = 0; out < g.size(); ++out) {
    if (in_set[out]) continue;
    for (auto in : r.ancestor_set) {
      const Scalar slack = u[out][out] - u[out][in];
      if (!r.eps_t || slack < *r.eps_t) r.eps_t = slack;
    }
  }
  r.delta = r.eps_t ? min(*r.eps_t, r.eps_bar) : r.eps_bar;
  if (r.delta.sign() <= 0) {
    throw InvariantError("payment_reduce: non-positive decrease " + r.delta.str() +
                         " at source " + std::to_string(source));
  }
  r.induced = induced;
  for (auto t : r.ancestor_set) r.induced.payment[t] -= r.delta;
  return r;
}

inline std::size_t iteration_cap(std::size_t m, std::size_t initial_positive_edges) {
  return 4 * m * m * (initial_positive_edges + m * m);
}

struct AgentTransform {
  InducedMechanism induced;
  std::vector<TransformStep> steps;
};

// Repeats rotation along the shortest positive cycle while one exists, and a
// payment decrease at the first source otherwise, until no regret remains.
inline AgentTransform transform_agent(const AgentModel& model, const InducedMechanism& induced) {
  require(model.num_types() == induced.payment.size(),
          "transform: distribution and mechanism differ in type count");
  for (std::size_t t = 0; t < model.num_types(); ++t) {
    require(model.distribution[t].sign() > 0,
            "transform: type " + std::to_string(t) + " has zero probability; drop it first");
  }
  const bool uniform = is_uniform(model.distribution);
  const Weighting weighting = uniform ? Weighting::kUniform : Weighting::kDensityWeighted;
  AgentTransform result{induced, {}};
  TypeGraph g = build_graph(model, result.induced, weighting);
  const std::size_t m = model.num_types();
  const std::size_t cap = iteration_cap(m, g.positive_edge_count());
  auto fail = [&](const std::string& what) {
    throw InvariantError(what, describe(result.steps));
  };
  while (g.positive_edge_count() > 0) {
    if (result.steps.size() >= cap) fail("transform: iteration cap exceeded");
    TransformStep step;
    step.agent = induced.agent;
    step.weight_before = total_weight(g);
    step.positive_edges_before = g.positive_edge_count();
    step.edges_before = g.edge_count();
    if (auto cycle = shortest_positive_cycle(g)) {
      step.kind = uniform ? StepKind::kRotation : StepKind::kFractionalRotation;
      step.cycle = *cycle;
      result.induced = uniform ? rotate_cycle(result.induced, model.distribution, *cycle)
                               : fractional_rotate(result.induced, model.distribution, *cycle);
    } else {
      const auto sources = sources_with_positive_out(g);
      if (sources.empty()) fail("transform: positive edges remain but no source exists");
      step.kind = StepKind::kPaymentReduce;
      step.source = sources.front();
      auto reduced = payment_reduce(result.induced, g, step.source);
      step.ancestor_set = std::move(reduced.ancestor_set);
      step.delta = reduced.delta;
      step.eps_bar = reduced.eps_bar;
      step.eps_t = reduced.eps_t;
      result.induced = std::move(reduced.induced);
    }
    TypeGraph next = build_graph(model, result.induced, weighting);
    step.weight_after = total_weight(next);
    step.positive_edges_after = next.positive_edge_count();
    step.edges_after = next.edge_count();
    if (step.kind == StepKind::kPaymentReduce) {
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          if (next.has_edge(a, b) && !g.has_edge(a, b) && !next.weight(a, b).is_zero()) {
            result.steps.push_back(step);
            fail("transform: payment decrease created a positive edge " + std::to_string(a) +
                 " -> " + std::to_string(b));
          }
        }
      }
    }
    result.steps.push_back(step);
    if (!(step.weight_after < step.weight_before)) fail("transform: total weight did not decrease");
    g = std::move(next);
  }
  return result;
}

enum class Flavor { kBic, kEeic };

struct Certificates {
  bool bic = false;
  bool welfare_preserved = false;
  bool ir_preserved = false;
  bool allocation_invariant = false;
  bool revenue_loss_within_bound = false;

  bool all() const {
    return bic && welfare_preserved && ir_preserved && allocation_invariant &&
           revenue_loss_within_bound;
  }
};

struct TransformReport {
  Flavor flavor = Flavor::kBic;
  std::vector<TransformStep> steps;
  AnalysisReport before;
  AnalysisReport after;
  Scalar epsilon;  // eps_bic, or eps_eeic for the eeic flavor
  Scalar revenue_loss;
  Scalar revenue_loss_bound;
  std::vector<Vec> signature_before;
  std::vector<Vec> signature_after;
  Certificates certificates;
  std::optional<Mechanism> materialized;
};

struct TransformResult {
  std::vector<InducedMechanism> induced;
  TransformReport report;
};

// Ex-post table realizing the given interim rules, when one can be written
// down directly: a single agent, or outcomes that are products of per-agent
// components.
inline std::optional<Mechanism> materialize(const Instance& inst,
                                            const std::vector<InducedMechanism>& induced) {
  const ProfileSpace space(inst);
  const std::size_t n = inst.num_agents();
  if (n == 1) return Mechanism{induced[0].allocation, [&] {
                                 Matrix p;
                                 for (const auto& v : induced[0].payment) p.push_back({v});
                                 return p;
                               }()};
  if (!inst.outcome_coordinates) return std::nullopt;
  const auto& coords = *inst.outcome_coordinates;
  std::vector<std::size_t> extent(n, 0);
  for (const auto& c : coords) {
    for (std::size_t i = 0; i < n; ++i) extent[i] = std::max(extent[i], c[i] + 1);
  }
  // marginal[i][t_i][c]: probability agent i's component equals c.
  std::vector<Matrix> marginal(n);
  for (std::size_t i = 0; i < n; ++i) {
    marginal[i].assign(inst.num_types(i), Vec(extent[i], Scalar(0)));
    for (std::size_t t = 0; t < inst.num_types(i); ++t) {
      for (std::size_t o = 0; o < coords.size(); ++o) {
        marginal[i][t][coords[o][i]] += induced[i].allocation[t][o];
      }
    }
  }
  Mechanism mech;
  for (std::size_t t = 0; t < space.size(); ++t) {
    Vec row(coords.size());
    for (std::size_t o = 0; o < coords.size(); ++o) {
      Scalar p = 1;
      for (std::size_t i = 0; i < n && !p.is_zero(); ++i) {
        p *= marginal[i][space.type_of(t, i)][coords[o][i]];
      }
      row[o] = p;
    }
    mech.allocation.push_back(std::move(row));
    Vec pay(n);
    for (std::size_t i = 0; i < n; ++i) pay[i] = induced[i].payment[space.type_of(t, i)];
    mech.payment.push_back(std::move(pay));
  }
  return mech;
}

inline TransformResult transform_mechanism(const Instance& inst, const Mechanism& mech,
                                           Flavor flavor = Flavor::kBic) {
  validate(inst);
  validate(inst, mech);
  if (flavor == Flavor::kEeic) {
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      if (!is_uniform(inst.distributions[i])) {
        throw RefusalError(
            "refusing eeic transform: agent " + inst.agents[i] +
            " has a non-uniform type distribution. Under non-uniform distributions no "
            "incentive-compatible transformation can keep welfare and lose only O(m eps) revenue "
            "from an eps-EEIC mechanism, so no guarantee can be given");
      }
    }
  }
  TransformResult result;
  TransformReport& rep = result.report;
  rep.flavor = flavor;
  rep.before = analyze(inst, mech);
  const auto before = interim_rules(inst, mech);
  for (const auto& m : before) {
    auto agent = transform_agent(AgentModel::of(inst, m.agent), m);
    rep.steps.insert(rep.steps.end(), agent.steps.begin(), agent.steps.end());
    result.induced.push_back(std::move(agent.induced));
  }
  rep.after = analyze(inst, result.induced);
  rep.materialized = materialize(inst, result.induced);
  if (rep.materialized) {
    const auto check = interim_rules(inst, *rep.materialized);
    for (std::size_t i = 0; i < check.size(); ++i) {
      const AgentModel model = AgentModel::of(inst, i);
      if (utility_table(model, check[i]) != utility_table(model, result.induced[i]) ||
          check[i].payment != result.induced[i].payment) {
        throw InvariantError("transform: materialized table disagrees with interim rules",
                             describe(rep.steps));
      }
    }
    rep.after.expost_ir = ir_check(inst, *rep.materialized, IrMode::kExPost);
  }

  rep.epsilon = flavor == Flavor::kBic ? rep.before.eps_bic : rep.before.eps_eeic;
  Scalar total_types = 0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) total_types += Scalar(inst.num_types(i));
  rep.revenue_loss_bound = total_types * rep.epsilon;
  rep.revenue_loss = rep.before.revenue - rep.after.revenue;
  rep.signature_before = allocation_signature(inst, before);
  rep.signature_after = allocation_signature(inst, result.induced);

  Certificates& c = rep.certificates;
  c.bic = true;
  for (const auto& m : result.induced) {
    for (const auto& row : regret_table(AgentModel::of(inst, m.agent), m)) {
      for (const auto& x : row) c.bic = c.bic && x.is_zero();
    }
  }
  c.welfare_preserved = rep.after.welfare >= rep.before.welfare;
  c.ir_preserved = !rep.before.interim_ir || rep.after.interim_ir;
  if (inst.num_agents() == 1 && rep.before.expost_ir.value_or(false)) {
    c.ir_preserved = c.ir_preserved && rep.after.expost_ir.value_or(false);
  }
  c.allocation_invariant = rep.signature_before == rep.signature_after;
  c.revenue_loss_within_bound = rep.revenue_loss <= rep.revenue_loss_bound;
  if (!c.all()) {
    throw InvariantError(std::string("transform: certificate failed:") +
                             (c.bic ? "" : " bic") + (c.welfare_preserved ? "" : " welfare") +
                             (c.ir_preserved ? "" : " ir") +
                             (c.allocation_invariant ? "" : " allocation") +
                             (c.revenue_loss_within_bound ? "" : " revenue-bound"),
                         describe(rep.steps));
  }
  return result;
}

}  // namespace mechkit
