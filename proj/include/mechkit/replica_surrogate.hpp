#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mechkit/analysis.hpp"
#include "mechkit/matching.hpp"

namespace mechkit {

enum class RSMode { kFullTypeSet, kSampled };

struct RSConfig {
  Scalar eta = 0;
  std::size_t r = 1;  // replicas (true type included) and surrogates per draw
  std::uint64_t seed = 0;
  RSMode mode = RSMode::kFullTypeSet;
  std::size_t trials = 200;  // draws per (agent, true type), sampled mode only
};

inline void validate(const RSConfig& cfg) {
  require(cfg.eta.sign() >= 0 && cfg.eta <= Scalar(1), "eta must lie in [0, 1]");
  require(cfg.r >= 1, "r must be at least 1");
  require(cfg.mode == RSMode::kFullTypeSet || cfg.trials >= 2, "sampled mode needs >= 2 trials");
}

struct RSGraph {
  std::vector<std::size_t> replicas;
  std::vector<std::size_t> surrogates;
  Matrix weights;  // [replica][surrogate]
};

// w(r, s) = v(r, X(s)) - (1 - eta) P(s)
inline RSGraph rs_weights(const AgentModel& model, const InducedMechanism& induced,
                          const std::vector<std::size_t>& replicas,
                          const std::vector<std::size_t>& surrogates, const Scalar& eta) {
  const std::size_t m = model.num_types();
  RSGraph g{replicas, surrogates, Matrix(replicas.size(), Vec(surrogates.size()))};
  const Scalar discount = Scalar(1) - eta;
  for (std::size_t a = 0; a < replicas.size(); ++a) {
    require(replicas[a] < m, "replica type out of range");
    for (std::size_t b = 0; b < surrogates.size(); ++b) {
      require(surrogates[b] < m, "surrogate type out of range");
      g.weights[a][b] = expected_value(model.valuations[replicas[a]],
                                       induced.allocation[surrogates[b]]) -
                        discount * induced.payment[surrogates[b]];
    }
  }
  return g;
}

// What a report of one type receives. An empty surrogate means the type was
// left unmatched: it receives nothing and pays nothing.
struct RSTypeOutcome {
  std::optional<std::size_t> surrogate;
  Scalar value;
  Scalar payment;
  Scalar vcg_price;
};

struct RSAgentReport {
  std::size_t agent = 0;
  std::vector<RSTypeOutcome> types;  // fullTypeSet mode only
  Vec vcg_prices;                    // fullTypeSet mode only
  std::optional<Scalar> eps_bic;     // fullTypeSet mode only
};

struct Estimate {
  double mean = 0;
  double stderr_ = 0;
};

struct RSReport {
  std::string method;
  RSConfig config;
  std::vector<RSAgentReport> agents;
  Scalar welfare_before;
  Scalar revenue_before;
  // Exact in fullTypeSet mode.
  std::optional<Scalar> welfare;
  std::optional<Scalar> revenue;
  std::optional<Scalar> eps_bic;
  // Monte-Carlo estimates in sampled mode.
  std::optional<Estimate> welfare_estimate;
  std::optional<Estimate> revenue_estimate;
  std::size_t trials = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t agent, std::size_t type,
                                std::size_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ agent);
  h = splitmix64(h ^ type);
  return splitmix64(h ^ trial);
}

struct RunningMean {
  double sum = 0;
  double sum_sq = 0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  Estimate estimate() const {
    const double mean = sum / static_cast<double>(n);
    const double var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    return {mean, std::sqrt(std::max(0.0, var) / static_cast<double>(n))};
  }
};

inline RSAgentReport full_type_set_agent(const AgentModel& model, const InducedMechanism& induced,
                                         const Scalar& eta) {
  const std::size_t m = model.num_types();
  const auto all = iota(m);
  const RSGraph g = rs_weights(model, induced, all, all, eta);
  const Matching matching = max_weight_matching(g.weights);
  RSAgentReport rep;
  rep.agent = induced.agent;
  rep.vcg_prices = vcg_prices(g.weights, matching);
  const Scalar discount = Scalar(1) - eta;
  for (std::size_t t = 0; t < m; ++t) {
    RSTypeOutcome o;
    if (matching.mate[t]) {
      const std::size_t s = *matching.mate[t];
      o.surrogate = s;
      o.value = expected_value(model.valuations[t], induced.allocation[s]);
      o.vcg_price = rep.vcg_prices[t];
      o.payment = discount * induced.payment[s] + o.vcg_price;
    }
    rep.types.push_back(std::move(o));
  }
  // Regret of the resulting menu: a report of k hands over k's result.
  Scalar eps = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const Scalar truthful = rep.types[j].value - rep.types[j].payment;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& out = rep.types[k];
      const Scalar value = out.surrogate
                               ? expected_value(model.valuations[j], induced.allocation[*out.surrogate])
                               : Scalar(0);
      eps = max(eps, value - out.payment - truthful);
    }
  }
  rep.eps_bic = eps;
  return rep;
}

inline std::discrete_distribution<std::size_t> sampler(const Vec& dist) {
  std::vector<double> w;
  for (const auto& p : dist) w.push_back(p.to_double());
  return std::discrete_distribution<std::size_t>(w.begin(), w.end());
}

}  // namespace detail

inline RSReport rs_transform(const Instance& inst, const Mechanism& mech, const RSConfig& cfg) {
  validate(inst);
  validate(inst, mech);
  validate(cfg);
  const auto induced = interim_rules(inst, mech);
  RSReport rep;
  rep.method = "replica-surrogate";
  rep.config = cfg;
  rep.welfare_before = welfare(inst, mech);
  rep.revenue_before = revenue(inst, mech);
  if (cfg.mode == RSMode::kFullTypeSet) {
    Scalar w = 0, r = 0, eps = 0;
    for (const auto& m : induced) {
      const AgentModel model = AgentModel::of(inst, m.agent);
      auto agent = detail::full_type_set_agent(model, m, cfg.eta);
      for (std::size_t t = 0; t < model.num_types(); ++t) {
        w += model.distribution[t] * agent.types[t].value;
        r += model.distribution[t] * agent.types[t].payment;
      }
      eps = max(eps, *agent.eps_bic);
      rep.agents.push_back(std::move(agent));
    }
    rep.welfare = w;
    rep.revenue = r;
    rep.eps_bic = eps;
    return rep;
  }

  // Sampled: for each true type, draw r-1 further replicas and r surrogates,
  // place the true type at a random replica slot, and record its result.
  const Scalar discount = Scalar(1) - cfg.eta;
  std::vector<double> welfare_trials(cfg.trials, 0.0), revenue_trials(cfg.trials, 0.0);
  for (const auto& m : induced) {
    const AgentModel model = AgentModel::of(inst, m.agent);
    RSAgentReport agent_rep;
    agent_rep.agent = m.agent;
    rep.agents.push_back(agent_rep);
    for (std::size_t t = 0; t < model.num_types(); ++t) {
      const double ft = model.distribution[t].to_double();
      if (ft == 0.0) continue;
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        std::mt19937_64 rng(detail::trial_seed(cfg.seed, m.agent, t, trial));
        auto draw = detail::sampler(model.distribution);
        std::vector<std::size_t> replicas(cfg.r), surrogates(cfg.r);
        const std::size_t slot = std::uniform_int_distribution<std::size_t>(0, cfg.r - 1)(rng);
        for (std::size_t a = 0; a < cfg.r; ++a) replicas[a] = a == slot ? t : draw(rng);
        for (std::size_t b = 0; b < cfg.r; ++b) surrogates[b] = draw(rng);
        const RSGraph g = rs_weights(model, m, replicas, surrogates, cfg.eta);
        const Matching matching = max_weight_matching(g.weights);
        if (!matching.mate[slot]) continue;
        const std::size_t s = surrogates[*matching.mate[slot]];
        const Vec prices = vcg_prices(g.weights, matching);
        const Scalar value = expected_value(model.valuations[t], m.allocation[s]);
        const Scalar pay = discount * m.payment[s] + prices[slot];
        welfare_trials[trial] += ft * value.to_double();
        revenue_trials[trial] += ft * pay.to_double();
      }
    }
  }
  detail::RunningMean w, r;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    w.add(welfare_trials[trial]);
    r.add(revenue_trials[trial]);
  }
  rep.welfare_estimate = w.estimate();
  rep.revenue_estimate = r.estimate();
  rep.trials = cfg.trials;
  return rep;
}

// Welfare-only special case: eta = 1 over the full type set.
inline RSReport bei_huang(const Instance& inst, const Mechanism& mech) {
  RSConfig cfg;
  cfg.eta = 1;
  cfg.mode = RSMode::kFullTypeSet;
  RSReport rep = rs_transform(inst, mech, cfg);
  rep.method = "bei-huang";
  return rep;
}

}  // namespace mechkit
