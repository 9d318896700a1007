#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mechkit/instance.hpp"

namespace mechkit {

// Quasilinear utility of `agent` with `true_type` when the reported profile is
// `reported`: v(t_i, x(reported)) - p_i(reported).
inline Scalar utility(const Instance& inst, const Mechanism& mech, std::size_t agent,
                      std::size_t true_type, const std::vector<std::size_t>& reported) {
  require(agent < inst.num_agents(), "unknown agent index " + std::to_string(agent));
  require(true_type < inst.num_types(agent), "unknown type index " + std::to_string(true_type));
  const ProfileSpace space(inst);
  const std::size_t idx = space.index(reported);
  return expected_value(inst.valuations[agent][true_type], mech.allocation[idx]) -
         mech.payment[idx][agent];
}

// X_i(t_i) = E_{t_-i}[x(t_i, t_-i)] and P_i(t_i) likewise, for every agent.
inline std::vector<InducedMechanism> interim_rules(const Instance& inst, const Mechanism& mech) {
  validate(inst, mech);
  const ProfileSpace space(inst);
  std::vector<InducedMechanism> out(inst.num_agents());
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    out[i].agent = i;
    out[i].allocation.assign(inst.num_types(i), Vec(inst.num_outcomes(), Scalar(0)));
    out[i].payment.assign(inst.num_types(i), Scalar(0));
  }
  for (std::size_t t = 0; t < space.size(); ++t) {
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      const Scalar w = others_probability(inst, space, t, i);
      if (w.is_zero()) continue;
      const std::size_t ti = space.type_of(t, i);
      auto& row = out[i].allocation[ti];
      for (std::size_t o = 0; o < inst.num_outcomes(); ++o) {
        if (!mech.allocation[t][o].is_zero()) row[o] += w * mech.allocation[t][o];
      }
      out[i].payment[ti] += w * mech.payment[t][i];
    }
  }
  return out;
}

// Interim regret of every (true type, report) pair, floored at zero.
inline Matrix regret_table(const AgentModel& model, const InducedMechanism& induced) {
  const Matrix u = utility_table(model, induced);
  Matrix r(u.size(), Vec(u.size()));
  for (std::size_t j = 0; j < u.size(); ++j) {
    for (std::size_t k = 0; k < u.size(); ++k) r[j][k] = max(Scalar(0), u[j][k] - u[j][j]);
  }
  return r;
}

// Largest interim regret of each type.
inline Vec type_regrets(const AgentModel& model, const InducedMechanism& induced) {
  const Matrix r = regret_table(model, induced);
  Vec out(r.size(), Scalar(0));
  for (std::size_t j = 0; j < r.size(); ++j) {
    for (const auto& x : r[j]) out[j] = max(out[j], x);
  }
  return out;
}

inline Scalar eps_bic(const AgentModel& model, const InducedMechanism& induced) {
  Scalar best = 0;
  for (const auto& r : type_regrets(model, induced)) best = max(best, r);
  return best;
}

// E_{t_i}[interim regret of t_i] for one induced mechanism.
inline Scalar eps_eiic(const AgentModel& model, const InducedMechanism& induced) {
  const Vec r = type_regrets(model, induced);
  Scalar s = 0;
  for (std::size_t j = 0; j < r.size(); ++j) s += model.distribution[j] * r[j];
  return s;
}

inline Scalar eps_bic(const Instance& inst, const std::vector<InducedMechanism>& induced) {
  Scalar best = 0;
  for (const auto& m : induced) best = max(best, eps_bic(AgentModel::of(inst, m.agent), m));
  return best;
}

inline Scalar eps_bic(const Instance& inst, const Mechanism& mech) {
  return eps_bic(inst, interim_rules(inst, mech));
}

inline Vec eps_eiic_per_agent(const Instance& inst, const Mechanism& mech) {
  Vec out;
  for (const auto& m : interim_rules(inst, mech)) {
    out.push_back(eps_eiic(AgentModel::of(inst, m.agent), m));
  }
  return out;
}

// Per agent: E_t[max_{t'_i} u_i(t_i, M(t'_i; t_-i)) - u_i(t_i, M(t))].
inline Vec eps_eeic_per_agent(const Instance& inst, const Mechanism& mech) {
  validate(inst, mech);
  const ProfileSpace space(inst);
  Vec out(inst.num_agents(), Scalar(0));
  for (std::size_t t = 0; t < space.size(); ++t) {
    const Scalar pr = profile_probability(inst, space, t);
    if (pr.is_zero()) continue;
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      const std::size_t ti = space.type_of(t, i);
      const Vec& v = inst.valuations[i][ti];
      const Scalar truthful = expected_value(v, mech.allocation[t]) - mech.payment[t][i];
      Scalar best = truthful;
      for (std::size_t r = 0; r < inst.num_types(i); ++r) {
        const std::size_t dev = space.with_type(t, i, r);
        best = max(best, expected_value(v, mech.allocation[dev]) - mech.payment[dev][i]);
      }
      out[i] += pr * (best - truthful);
    }
  }
  return out;
}

inline Scalar max_of(const Vec& v) {
  Scalar best = 0;
  for (const auto& x : v) best = max(best, x);
  return best;
}

inline Scalar eps_eeic(const Instance& inst, const Mechanism& mech) {
  return max_of(eps_eeic_per_agent(inst, mech));
}

inline Scalar eps_eiic(const Instance& inst, const Mechanism& mech) {
  return max_of(eps_eiic_per_agent(inst, mech));
}

inline Scalar welfare(const Instance& inst, const Mechanism& mech) {
  validate(inst, mech);
  const ProfileSpace space(inst);
  Scalar total = 0;
  for (std::size_t t = 0; t < space.size(); ++t) {
    const Scalar pr = profile_probability(inst, space, t);
    if (pr.is_zero()) continue;
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      total += pr * expected_value(inst.valuations[i][space.type_of(t, i)], mech.allocation[t]);
    }
  }
  return total;
}

inline Scalar revenue(const Instance& inst, const Mechanism& mech) {
  validate(inst, mech);
  const ProfileSpace space(inst);
  Scalar total = 0;
  for (std::size_t t = 0; t < space.size(); ++t) {
    const Scalar pr = profile_probability(inst, space, t);
    for (std::size_t i = 0; i < inst.num_agents(); ++i) total += pr * mech.payment[t][i];
  }
  return total;
}

// Interim-level evaluation: sum over agents of E_{t_i}[v_i(t_i, X_i(t_i))].
inline Scalar welfare(const Instance& inst, const std::vector<InducedMechanism>& induced) {
  Scalar total = 0;
  for (const auto& m : induced) {
    const auto& f = inst.distributions[m.agent];
    for (std::size_t t = 0; t < f.size(); ++t) {
      total += f[t] * expected_value(inst.valuations[m.agent][t], m.allocation[t]);
    }
  }
  return total;
}

inline Scalar revenue(const Instance& inst, const std::vector<InducedMechanism>& induced) {
  Scalar total = 0;
  for (const auto& m : induced) {
    const auto& f = inst.distributions[m.agent];
    for (std::size_t t = 0; t < f.size(); ++t) total += f[t] * m.payment[t];
  }
  return total;
}

enum class IrMode { kInterim, kExPost };

inline bool ir_check(const Instance& inst, const std::vector<InducedMechanism>& induced) {
  for (const auto& m : induced) {
    const AgentModel model = AgentModel::of(inst, m.agent);
    for (std::size_t t = 0; t < model.num_types(); ++t) {
      if (interim_utility(model, m, t, t).sign() < 0) return false;
    }
  }
  return true;
}

inline bool ir_check(const Instance& inst, const Mechanism& mech, IrMode mode) {
  if (mode == IrMode::kInterim) return ir_check(inst, interim_rules(inst, mech));
  validate(inst, mech);
  const ProfileSpace space(inst);
  for (std::size_t t = 0; t < space.size(); ++t) {
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      const Scalar u =
          expected_value(inst.valuations[i][space.type_of(t, i)], mech.allocation[t]) -
          mech.payment[t][i];
      if (u.sign() < 0) return false;
    }
  }
  return true;
}

using MenuItem = std::pair<Vec, Scalar>;

// Distinct interim outputs, in order of first appearance over the type list.
inline std::vector<MenuItem> menu(const InducedMechanism& induced) {
  std::vector<MenuItem> items;
  for (std::size_t t = 0; t < induced.payment.size(); ++t) {
    MenuItem item{induced.allocation[t], induced.payment[t]};
    bool found = false;
    for (const auto& existing : items) {
      if (existing == item) {
        found = true;
        break;
      }
    }
    if (!found) items.push_back(std::move(item));
  }
  return items;
}

inline std::vector<MenuItem> menu(const Instance& inst, const Mechanism& mech, std::size_t agent) {
  require(agent < inst.num_agents(), "unknown agent index " + std::to_string(agent));
  return menu(interim_rules(inst, mech)[agent]);
}

inline std::size_t menu_size(const Instance& inst, const Mechanism& mech, std::size_t agent) {
  return menu(inst, mech, agent).size();
}

// Ex-ante outcome distribution seen through one agent's interim rule:
// sum_{t_i} f_i(t_i) X_i(t_i).
inline Vec allocation_signature(const Instance& inst, const InducedMechanism& induced) {
  Vec sig(inst.num_outcomes(), Scalar(0));
  const auto& f = inst.distributions[induced.agent];
  for (std::size_t t = 0; t < f.size(); ++t) {
    for (std::size_t o = 0; o < sig.size(); ++o) sig[o] += f[t] * induced.allocation[t][o];
  }
  return sig;
}

inline std::vector<Vec> allocation_signature(const Instance& inst,
                                             const std::vector<InducedMechanism>& induced) {
  std::vector<Vec> out;
  for (const auto& m : induced) out.push_back(allocation_signature(inst, m));
  return out;
}

inline std::vector<Vec> allocation_signature(const Instance& inst, const Mechanism& mech) {
  return allocation_signature(inst, interim_rules(inst, mech));
}

struct AnalysisReport {
  Scalar eps_bic;
  Scalar eps_eeic;
  Scalar eps_eiic;
  Vec eps_eeic_per_agent;
  Vec eps_eiic_per_agent;
  Scalar welfare;
  Scalar revenue;
  bool interim_ir = false;
  std::optional<bool> expost_ir;  // unknown for interim-only mechanisms
  std::vector<std::size_t> menu_sizes;
};

inline AnalysisReport analyze(const Instance& inst, const Mechanism& mech) {
  validate(inst);
  validate(inst, mech);
  const auto induced = interim_rules(inst, mech);
  AnalysisReport r;
  r.eps_bic = eps_bic(inst, induced);
  r.eps_eeic_per_agent = eps_eeic_per_agent(inst, mech);
  r.eps_eeic = max_of(r.eps_eeic_per_agent);
  for (const auto& m : induced) r.eps_eiic_per_agent.push_back(eps_eiic(AgentModel::of(inst, m.agent), m));
  r.eps_eiic = max_of(r.eps_eiic_per_agent);
  r.welfare = welfare(inst, mech);
  r.revenue = revenue(inst, mech);
  r.interim_ir = ir_check(inst, induced);
  r.expost_ir = ir_check(inst, mech, IrMode::kExPost);
  for (const auto& m : induced) r.menu_sizes.push_back(menu(m).size());
  return r;
}

// Analysis of interim rules alone. Each induced mechanism is a single-agent
// mechanism, so its expected ex-post regret coincides with its expected
// interim regret.
inline AnalysisReport analyze(const Instance& inst, const std::vector<InducedMechanism>& induced) {
  AnalysisReport r;
  r.eps_bic = eps_bic(inst, induced);
  for (const auto& m : induced) r.eps_eiic_per_agent.push_back(eps_eiic(AgentModel::of(inst, m.agent), m));
  r.eps_eiic = max_of(r.eps_eiic_per_agent);
  r.eps_eeic_per_agent = r.eps_eiic_per_agent;
  r.eps_eeic = r.eps_eiic;
  r.welfare = welfare(inst, induced);
  r.revenue = revenue(inst, induced);
  r.interim_ir = ir_check(inst, induced);
  for (const auto& m : induced) r.menu_sizes.push_back(menu(m).size());
  return r;
}

}  // namespace mechkit
