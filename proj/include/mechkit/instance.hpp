#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mechkit/errors.hpp"
#include "mechkit/scalar.hpp"

namespace mechkit {

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;

// Finite-type private-value setting. The joint type distribution is the
// product of the per-agent marginals.
struct Instance {
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> type_spaces;  // [agent][type]
  std::vector<Vec> distributions;                      // [agent][type]
  std::vector<std::string> outcomes;
  std::vector<Matrix> valuations;  // [agent][type][outcome], all >= 0

  // Optional product structure of the outcome space: coordinates[o][i] is the
  // component of outcome o that agent i cares about. When present, every
  // outcome is a distinct tuple, the tuples cover the full product of the
  // per-agent component sets, and v_i depends on coordinates[o][i] only.
  std::optional<std::vector<std::vector<std::size_t>>> outcome_coordinates;

  std::size_t num_agents() const { return agents.size(); }
  std::size_t num_types(std::size_t agent) const { return type_spaces.at(agent).size(); }
  std::size_t num_outcomes() const { return outcomes.size(); }
  std::size_t num_profiles() const {
    std::size_t n = 1;
    for (const auto& ts : type_spaces) n *= ts.size();
    return n;
  }
};

// Direct-revelation mechanism. Rows are type profiles in row-major order over
// T_1 x ... x T_n (the last agent's type varies fastest).
struct Mechanism {
  Matrix allocation;  // [profile][outcome], each row a distribution
  Matrix payment;     // [profile][agent]

  friend bool operator==(const Mechanism&, const Mechanism&) = default;
};

// One agent's interim allocation and payment rules.
struct InducedMechanism {
  std::size_t agent = 0;
  Matrix allocation;  // [type][outcome]
  Vec payment;        // [type]

  friend bool operator==(const InducedMechanism&, const InducedMechanism&) = default;
};

// Row-major indexing of type profiles.
class ProfileSpace {
 public:
  explicit ProfileSpace(const Instance& inst) {
    for (const auto& ts : inst.type_spaces) sizes_.push_back(ts.size());
    strides_.assign(sizes_.size(), 1);
    for (std::size_t i = sizes_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * sizes_[i];
    total_ = sizes_.empty() ? 1 : strides_[0] * sizes_[0];
  }

  std::size_t size() const { return total_; }
  std::size_t num_agents() const { return sizes_.size(); }

  std::size_t index(const std::vector<std::size_t>& profile) const {
    require(profile.size() == sizes_.size(), "type profile has wrong number of agents");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      require(profile[i] < sizes_[i], "type index out of range in profile");
      idx += profile[i] * strides_[i];
    }
    return idx;
  }

  std::vector<std::size_t> decode(std::size_t idx) const {
    require(idx < total_, "profile index out of range");
    std::vector<std::size_t> profile(sizes_.size());
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      profile[i] = (idx / strides_[i]) % sizes_[i];
    }
    return profile;
  }

  std::size_t type_of(std::size_t idx, std::size_t agent) const {
    return (idx / strides_[agent]) % sizes_[agent];
  }

  // Profile index with agent i's type replaced by `type`.
  std::size_t with_type(std::size_t idx, std::size_t agent, std::size_t type) const {
    return idx - type_of(idx, agent) * strides_[agent] + type * strides_[agent];
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

// Probability of a full profile under the product distribution.
inline Scalar profile_probability(const Instance& inst, const ProfileSpace& space,
                                  std::size_t idx) {
  Scalar p = 1;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    p *= inst.distributions[i][space.type_of(idx, i)];
  }
  return p;
}

// Probability of t_{-i} (the product over every agent except `agent`).
inline Scalar others_probability(const Instance& inst, const ProfileSpace& space,
                                 std::size_t idx, std::size_t agent) {
  Scalar p = 1;
  for (std::size_t j = 0; j < inst.num_agents(); ++j) {
    if (j != agent) p *= inst.distributions[j][space.type_of(idx, j)];
  }
  return p;
}

inline Scalar expected_value(const Vec& values, const Vec& distribution) {
  Scalar s = 0;
  for (std::size_t o = 0; o < values.size(); ++o) {
    if (!distribution[o].is_zero()) s += values[o] * distribution[o];
  }
  return s;
}

inline bool is_distribution(const Vec& v) {
  Scalar sum = 0;
  for (const auto& p : v) {
    if (p.sign() < 0) return false;
    sum += p;
  }
  return sum == 1;
}

inline bool is_uniform(const Vec& dist) {
  for (const auto& p : dist) {
    if (p != dist.front()) return false;
  }
  return true;
}

inline std::size_t agent_index(const Instance& inst, const std::string& id) {
  for (std::size_t i = 0; i < inst.agents.size(); ++i) {
    if (inst.agents[i] == id) return i;
  }
  throw InputError("unknown agent id \"" + id + "\"");
}

inline std::size_t type_index(const Instance& inst, std::size_t agent, const std::string& id) {
  require(agent < inst.num_agents(), "agent index out of range");
  const auto& ts = inst.type_spaces[agent];
  for (std::size_t t = 0; t < ts.size(); ++t) {
    if (ts[t] == id) return t;
  }
  throw InputError("unknown type id \"" + id + "\" for agent " + inst.agents[agent]);
}

// Structural validation. Messages carry the path of the offending field.
inline void validate(const Instance& inst) {
  const std::size_t n = inst.num_agents();
  require(n >= 1, "instance.agents: at least one agent required");
  require(inst.type_spaces.size() == n, "instance.typeSpaces: one type list per agent required");
  require(inst.distributions.size() == n,
          "instance.distributions: one distribution per agent required");
  require(inst.valuations.size() == n, "instance.valuations: one table per agent required");
  require(!inst.outcomes.empty(), "instance.outcomes: at least one outcome required");
  const std::size_t k = inst.num_outcomes();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string at = "[" + std::to_string(i) + "]";
    const std::size_t m = inst.type_spaces[i].size();
    require(m >= 1, "instance.typeSpaces" + at + ": empty type space");
    require(inst.distributions[i].size() == m,
            "instance.distributions" + at + ": length differs from typeSpaces" + at);
    Scalar sum = 0;
    for (std::size_t t = 0; t < m; ++t) {
      require(inst.distributions[i][t].sign() >= 0,
              "instance.distributions" + at + "[" + std::to_string(t) + "]: negative probability");
      sum += inst.distributions[i][t];
    }
    require(sum == 1, "instance.distributions" + at + ": sums to " + sum.str() + ", not 1");
    require(inst.valuations[i].size() == m,
            "instance.valuations" + at + ": one row per type required");
    for (std::size_t t = 0; t < m; ++t) {
      const std::string row = at + "[" + std::to_string(t) + "]";
      require(inst.valuations[i][t].size() == k,
              "instance.valuations" + row + ": one value per outcome required");
      for (std::size_t o = 0; o < k; ++o) {
        require(inst.valuations[i][t][o].sign() >= 0,
                "instance.valuations" + row + "[" + std::to_string(o) + "]: negative value");
      }
    }
  }
  if (inst.outcome_coordinates) {
    const auto& coords = *inst.outcome_coordinates;
    require(coords.size() == k, "instance.outcomeCoordinates: one tuple per outcome required");
    std::vector<std::size_t> extent(n, 0);
    for (std::size_t o = 0; o < k; ++o) {
      require(coords[o].size() == n, "instance.outcomeCoordinates[" + std::to_string(o) +
                                         "]: one component per agent required");
      for (std::size_t i = 0; i < n; ++i) extent[i] = std::max(extent[i], coords[o][i] + 1);
    }
    std::size_t product = 1;
    for (auto e : extent) product *= e;
    require(product == k, "instance.outcomeCoordinates: outcomes must enumerate the full product");
    std::vector<bool> seen(k, false);
    for (std::size_t o = 0; o < k; ++o) {
      std::size_t code = 0;
      for (std::size_t i = 0; i < n; ++i) code = code * extent[i] + coords[o][i];
      require(!seen[code], "instance.outcomeCoordinates: duplicate tuple at outcome " +
                               std::to_string(o));
      seen[code] = true;
    }
    // v_i(t, o) may depend only on component i of o.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < inst.num_types(i); ++t) {
        std::vector<std::optional<Scalar>> by_component(extent[i]);
        for (std::size_t o = 0; o < k; ++o) {
          auto& slot = by_component[coords[o][i]];
          const auto& v = inst.valuations[i][t][o];
          if (!slot) {
            slot = v;
          } else {
            require(*slot == v, "instance.valuations[" + std::to_string(i) + "][" +
                                    std::to_string(t) + "]: value depends on other agents' "
                                    "outcome coordinates");
          }
        }
      }
    }
  }
}

inline void validate(const Instance& inst, const Mechanism& mech) {
  const std::size_t profiles = inst.num_profiles();
  require(mech.allocation.size() == profiles,
          "mechanism.allocation: expected " + std::to_string(profiles) + " profile rows");
  require(mech.payment.size() == profiles,
          "mechanism.payments: expected " + std::to_string(profiles) + " profile rows");
  for (std::size_t t = 0; t < profiles; ++t) {
    const std::string at = "[" + std::to_string(t) + "]";
    require(mech.allocation[t].size() == inst.num_outcomes(),
            "mechanism.allocation" + at + ": one probability per outcome required");
    require(is_distribution(mech.allocation[t]),
            "mechanism.allocation" + at + ": not a probability distribution");
    require(mech.payment[t].size() == inst.num_agents(),
            "mechanism.payments" + at + ": one payment per agent required");
  }
}

inline void validate(const Instance& inst, const InducedMechanism& induced) {
  require(induced.agent < inst.num_agents(), "induced mechanism: agent out of range");
  const std::size_t m = inst.num_types(induced.agent);
  require(induced.allocation.size() == m && induced.payment.size() == m,
          "induced mechanism: dimension mismatch with agent's type space");
  for (std::size_t t = 0; t < m; ++t) {
    require(induced.allocation[t].size() == inst.num_outcomes() &&
                is_distribution(induced.allocation[t]),
            "induced mechanism: interim allocation of type " + std::to_string(t) +
                " is not a distribution over outcomes");
  }
}

// The data one agent's type graph is built from.
struct AgentModel {
  Matrix valuations;  // [type][outcome]
  Vec distribution;   // [type]

  static AgentModel of(const Instance& inst, std::size_t agent) {
    require(agent < inst.num_agents(), "agent index out of range");
    return AgentModel{inst.valuations[agent], inst.distributions[agent]};
  }

  std::size_t num_types() const { return distribution.size(); }
};

inline Scalar interim_utility(const AgentModel& model, const InducedMechanism& induced,
                              std::size_t true_type, std::size_t report) {
  return expected_value(model.valuations[true_type], induced.allocation[report]) -
         induced.payment[report];
}

// u[j][k] = utility of type j when receiving type k's output.
inline Matrix utility_table(const AgentModel& model, const InducedMechanism& induced) {
  const std::size_t m = model.num_types();
  Matrix u(m, Vec(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) u[j][k] = interim_utility(model, induced, j, k);
  }
  return u;
}

}  // namespace mechkit
