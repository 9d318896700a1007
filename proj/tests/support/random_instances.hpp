#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mechkit/mechkit.hpp"

namespace mechkit::testing {

struct RandomShape {
  std::size_t max_agents = 3;
  std::size_t max_types = 5;
  std::size_t max_outcomes = 4;
  bool force_uniform = false;
};

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Scalar random_rational(std::mt19937_64& rng, long long max_num, long long max_den) {
  const auto num = static_cast<long long>(pick(rng, 0, static_cast<std::size_t>(max_num)));
  const auto den = static_cast<long long>(pick(rng, 1, static_cast<std::size_t>(max_den)));
  return Scalar(num, den);
}

// Strictly positive weights normalized to a distribution.
inline Vec random_distribution(std::mt19937_64& rng, std::size_t size, bool uniform,
                               bool allow_zero = false) {
  if (uniform) return Vec(size, Scalar(1, static_cast<long long>(size)));
  Vec w(size);
  Scalar total = 0;
  for (auto& x : w) {
    x = Scalar(static_cast<long long>(pick(rng, allow_zero ? 0 : 1, 4)));
    total += x;
  }
  if (total.is_zero()) {
    w[0] = 1;
    total = 1;
  }
  for (auto& x : w) x = x / total;
  return w;
}

inline Instance random_instance(std::mt19937_64& rng, const RandomShape& shape = {}) {
  Instance inst;
  const std::size_t n = pick(rng, 1, shape.max_agents);
  const std::size_t k = pick(rng, 1, shape.max_outcomes);
  for (std::size_t o = 0; o < k; ++o) inst.outcomes.push_back("o" + std::to_string(o + 1));
  for (std::size_t i = 0; i < n; ++i) {
    inst.agents.push_back("agent" + std::to_string(i + 1));
    const std::size_t m = pick(rng, 1, shape.max_types);
    std::vector<std::string> ids;
    for (std::size_t t = 0; t < m; ++t) ids.push_back("t" + std::to_string(t + 1));
    inst.type_spaces.push_back(std::move(ids));
    const bool uniform = shape.force_uniform || pick(rng, 0, 1) == 0;
    inst.distributions.push_back(random_distribution(rng, m, uniform));
    Matrix vals(m, Vec(k));
    for (auto& row : vals) {
      for (auto& v : row) v = random_rational(rng, 8, 4);
    }
    inst.valuations.push_back(std::move(vals));
  }
  return inst;
}

// Random allocation rows. With `ir`, each payment is a random fraction of the
// agent's value for the allocated lottery, so the mechanism is ex-post IR.
inline Mechanism random_mechanism(std::mt19937_64& rng, const Instance& inst, bool ir = true) {
  const ProfileSpace space(inst);
  Mechanism mech;
  for (std::size_t t = 0; t < space.size(); ++t) {
    Vec row = random_distribution(rng, inst.num_outcomes(), false, true);
    if (pick(rng, 0, 2) == 0) {
      row.assign(inst.num_outcomes(), Scalar(0));
      row[pick(rng, 0, inst.num_outcomes() - 1)] = 1;
    }
    Vec pay;
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      const Scalar value = expected_value(inst.valuations[i][space.type_of(t, i)], row);
      const Scalar frac = random_rational(rng, 4, 4);
      pay.push_back(ir ? min(frac, Scalar(1)) * value : frac * Scalar(3));
    }
    mech.allocation.push_back(std::move(row));
    mech.payment.push_back(std::move(pay));
  }
  return mech;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            bool allow_negative = true) {
  Matrix w(rows, Vec(cols));
  for (auto& row : w) {
    for (auto& x : row) {
      x = random_rational(rng, 9, 3);
      if (allow_negative && pick(rng, 0, 3) == 0) x = -x;
    }
  }
  return w;
}

}  // namespace mechkit::testing
