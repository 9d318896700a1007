#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mechkit/amd_lp.hpp"
#include "mechkit/analysis.hpp"

namespace mechkit {

struct Fixture {
  Instance instance;
  Mechanism mechanism;
};

namespace detail {

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= count; ++j) out.push_back(prefix + std::to_string(j));
  return out;
}

inline Vec uniform(std::size_t m) { return Vec(m, Scalar(1, static_cast<long long>(m))); }

inline Vec point_mass(std::size_t size, std::size_t at) {
  Vec v(size, Scalar(0));
  v[at] = 1;
  return v;
}

inline std::optional<Scalar> exact_sqrt(std::size_t m) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= m) ++r;
  if (r * r != m) return std::nullopt;
  return Scalar(static_cast<long long>(r));
}

// Single agent; type j receives outcome out[j] at price pay[j].
inline Fixture single_agent(Matrix values, Vec dist, std::size_t outcomes,
                            const std::vector<std::size_t>& out, const Vec& pay) {
  Fixture f;
  f.instance.agents = {"agent1"};
  f.instance.type_spaces = {numbered("t", values.size())};
  f.instance.distributions = {std::move(dist)};
  f.instance.outcomes = numbered("o", outcomes);
  f.instance.valuations = {std::move(values)};
  for (std::size_t j = 0; j < out.size(); ++j) {
    f.mechanism.allocation.push_back(point_mass(outcomes, out[j]));
    f.mechanism.payment.push_back({pay[j]});
  }
  return f;
}

}  // namespace detail

// m uniform types. Types 1..m-1 value outcome 1 at 1; type m values outcome 1
// at 1 + eps and outcome 2 at sqrt(m). Types 1..m-1 get outcome 1 at price 1
// and type m gets outcome 2 at price sqrt(m).
inline Fixture example_better_result(std::size_t m, const Scalar& eps) {
  require(m >= 1, "example_better_result: m >= 1 required");
  require(eps.sign() > 0, "example_better_result: eps > 0 required");
  const auto root = detail::exact_sqrt(m);
  require(root.has_value(), "example_better_result: m must be a perfect square");
  Matrix values(m, Vec{Scalar(1), Scalar(0)});
  values[m - 1] = {Scalar(1) + eps, *root};
  std::vector<std::size_t> out(m, 0);
  Vec pay(m, Scalar(1));
  out[m - 1] = 1;
  pay[m - 1] = *root;
  return detail::single_agent(std::move(values), detail::uniform(m), 2, out, pay);
}

// m uniform types and m outcomes. Type 1 values outcome 1 at eps; type j >= 2
// values outcomes j-1 and j at j*eps. Type j gets outcome j at price j*eps.
inline Fixture chain_lower_bound(std::size_t m, const Scalar& eps) {
  require(m >= 1, "chain_lower_bound: m >= 1 required");
  require(eps.sign() > 0, "chain_lower_bound: eps > 0 required");
  Matrix values(m, Vec(m, Scalar(0)));
  std::vector<std::size_t> out(m);
  Vec pay(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Scalar level = Scalar(static_cast<long long>(j + 1)) * eps;
    values[j][j] = level;
    if (j > 0) values[j][j - 1] = level;
    out[j] = j;
    pay[j] = level;
  }
  return detail::single_agent(std::move(values), detail::uniform(m), m, out, pay);
}

// Chain-shaped mechanism that is eps-EEIC but far from BIC under a skewed
// distribution: f1 = 1/2 - eps/(2m), f2 = eps/(2m), f_j = 1/(2(m-2)).
inline Fixture eeic_impossibility(std::size_t m, const Scalar& eps) {
  require(m >= 3, "eeic_impossibility: m >= 3 required");
  require(eps.sign() > 0 && eps < Scalar(static_cast<long long>(m)),
          "eeic_impossibility: 0 < eps < m required");
  const Scalar mm = Scalar(static_cast<long long>(m));
  Vec dist(m, Scalar(1) / (Scalar(2) * (mm - Scalar(2))));
  dist[0] = Scalar(1, 2) - eps / (Scalar(2) * mm);
  dist[1] = eps / (Scalar(2) * mm);
  Matrix values(m, Vec(m, Scalar(0)));
  std::vector<std::size_t> out(m);
  Vec pay(m);
  values[0][0] = eps;
  out[0] = 0;
  pay[0] = eps;
  for (std::size_t j = 1; j < m; ++j) {
    const Scalar level = mm + Scalar(static_cast<long long>(j)) * eps;
    values[j][j - 1] = level;
    values[j][j] = level;
    out[j] = j;
    pay[j] = level;
  }
  return detail::single_agent(std::move(values), std::move(dist), m, out, pay);
}

// Two agents, two items, item values i.i.d. uniform on {1, 2}. Types are
// (value of item 1, value of item 2) in the order 11, 12, 21, 22. Outcome
// 3*a + b gives item 1 to owner a and item 2 to owner b, where owner 0 is
// agent 1, owner 1 is agent 2 and owner 2 means the item is withheld.
inline Fixture dsic_failure(const Scalar& eps) {
  require(eps.sign() >= 0, "dsic_failure: eps >= 0 required");
  using Pair = std::pair<int, int>;
  const std::vector<Pair> types = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  constexpr int kNone = 2;
  auto outcome = [](int a, int b) { return static_cast<std::size_t>(3 * a + b); };
  Fixture f;
  Instance& inst = f.instance;
  inst.agents = {"agent1", "agent2"};
  inst.type_spaces = {{"11", "12", "21", "22"}, {"11", "12", "21", "22"}};
  inst.distributions = {detail::uniform(4), detail::uniform(4)};
  const char* owner[] = {"a1", "a2", "none"};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) inst.outcomes.push_back(std::string(owner[a]) + "." + owner[b]);
  }
  inst.valuations.assign(2, Matrix(4, Vec(9, Scalar(0))));
  for (int i = 0; i < 2; ++i) {
    for (std::size_t t = 0; t < 4; ++t) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          int v = (a == i ? types[t].first : 0) + (b == i ? types[t].second : 0);
          inst.valuations[i][t][outcome(a, b)] = v;
        }
      }
    }
  }
  struct Row {
    std::map<std::size_t, Scalar> alloc;
    Scalar pay1, pay2;
  };
  // The stated cases, before symmetrization.
  auto base = [&](Pair a, Pair b) -> std::optional<Row> {
    const Pair p11{1, 1}, p12{1, 2}, p21{2, 1}, p22{2, 2};
    if (a == p11 && b == p11) return Row{{{outcome(kNone, kNone), 1}}, 0, 0};
    if (b == p11) return Row{{{outcome(0, 0), 1}}, 3, 0};
    if (a == p12 && b == p12) {
      return Row{{{outcome(0, 0), Scalar(1, 2)}, {outcome(1, 1), Scalar(1, 2)}},
                 Scalar(3, 2), Scalar(3, 2)};
    }
    if (a == p21 && b == p12) return Row{{{outcome(0, 1), 1}}, 2, 2};
    if (a == p22 && b == p12) return Row{{{outcome(0, 0), 1}}, Scalar(15, 4), 0};
    if (a == p22 && b == p22) {
      return Row{{{outcome(0, 0), Scalar(1, 2)}, {outcome(1, 1), Scalar(1, 2)}}, 2, 2};
    }
    return std::nullopt;
  };
  auto swap_items = [](Pair p) { return Pair{p.second, p.first}; };
  const ProfileSpace space(inst);
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const auto prof = space.decode(idx);
    const Pair t1 = types[prof[0]], t2 = types[prof[1]];
    std::optional<Row> found;
    // Try the four images under item swap and agent swap.
    for (int si = 0; si < 2 && !found; ++si) {
      for (int sa = 0; sa < 2 && !found; ++sa) {
        Pair a = si ? swap_items(t1) : t1;
        Pair b = si ? swap_items(t2) : t2;
        if (sa) std::swap(a, b);
        auto r = base(a, b);
        if (!r) continue;
        Row mapped;
        for (const auto& [o, pr] : r->alloc) {
          int oa = static_cast<int>(o) / 3, ob = static_cast<int>(o) % 3;
          if (sa) {
            oa = oa == kNone ? kNone : 1 - oa;
            ob = ob == kNone ? kNone : 1 - ob;
          }
          if (si) std::swap(oa, ob);
          mapped.alloc[outcome(oa, ob)] += pr;
        }
        mapped.pay1 = sa ? r->pay2 : r->pay1;
        mapped.pay2 = sa ? r->pay1 : r->pay2;
        found = std::move(mapped);
      }
    }
    ensure(found.has_value(), "dsic_failure: profile not covered");
    Vec row(9, Scalar(0));
    for (const auto& [o, pr] : found->alloc) row[o] = pr;
    f.mechanism.allocation.push_back(std::move(row));
    f.mechanism.payment.push_back({found->pay1, found->pay2});
  }
  // The surcharge applies to the literally stated profile only.
  const std::size_t literal = space.index({3, 1});
  f.mechanism.payment[literal][0] += eps;
  return f;
}

// m uniform types split into C contiguous classes (sizes differ by at most
// one). Class c gets outcome c at price c*eps and values it at c*eps; its
// r-th member (r from 0) values outcome c-1 at c*eps - r*eps/size, so every
// type's regret is at most eps and only toward the class below.
inline Fixture menu_bound_instance(std::size_t m, std::size_t classes, const Scalar& eps) {
  require(classes >= 1 && classes <= m, "menu_bound_instance: 1 <= C <= m required");
  require(eps.sign() > 0, "menu_bound_instance: eps > 0 required");
  Matrix values(m, Vec(classes, Scalar(0)));
  std::vector<std::size_t> out(m);
  Vec pay(m);
  std::size_t t = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    const std::size_t size = m / classes + (c < m % classes ? 1 : 0);
    const Scalar level = Scalar(static_cast<long long>(c + 1)) * eps;
    for (std::size_t r = 0; r < size; ++r, ++t) {
      values[t][c] = level;
      if (c > 0) {
        values[t][c - 1] =
            level - Scalar(static_cast<long long>(r)) * eps / Scalar(static_cast<long long>(size));
      }
      out[t] = c;
      pay[t] = level;
    }
  }
  return detail::single_agent(std::move(values), detail::uniform(m), classes, out, pay);
}

// One chain per agent over its own outcome component; outcomes are all
// combinations of components.
inline Fixture disjoint_chains(const std::vector<std::size_t>& ms, const Scalar& eps) {
  require(!ms.empty(), "disjoint_chains: at least one chain required");
  std::vector<Fixture> chains;
  for (auto m : ms) chains.push_back(chain_lower_bound(m, eps));
  Fixture f;
  Instance& inst = f.instance;
  const std::size_t n = ms.size();
  inst.agents = detail::numbered("agent", n);
  std::vector<std::vector<std::size_t>> coords{{}};
  for (std::size_t i = 0; i < n; ++i) {
    inst.type_spaces.push_back(chains[i].instance.type_spaces[0]);
    inst.distributions.push_back(chains[i].instance.distributions[0]);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : coords) {
      for (std::size_t c = 0; c < ms[i]; ++c) {
        auto tuple = prefix;
        tuple.push_back(c);
        next.push_back(std::move(tuple));
      }
    }
    coords = std::move(next);
  }
  for (const auto& tuple : coords) {
    std::string name = "o";
    for (std::size_t i = 0; i < n; ++i) name += (i ? "." : "") + std::to_string(tuple[i] + 1);
    inst.outcomes.push_back(name);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Matrix vals(ms[i], Vec(coords.size()));
    for (std::size_t t = 0; t < ms[i]; ++t) {
      for (std::size_t o = 0; o < coords.size(); ++o) {
        vals[t][o] = chains[i].instance.valuations[0][t][coords[o][i]];
      }
    }
    inst.valuations.push_back(std::move(vals));
  }
  inst.outcome_coordinates = coords;
  const ProfileSpace space(inst);
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const auto prof = space.decode(idx);
    std::size_t o = 0;
    for (std::size_t i = 0; i < n; ++i) o = o * ms[i] + prof[i];
    f.mechanism.allocation.push_back(detail::point_mass(coords.size(), o));
    Vec pay;
    for (std::size_t i = 0; i < n; ++i) pay.push_back(chains[i].mechanism.payment[prof[i]][0]);
    f.mechanism.payment.push_back(std::move(pay));
  }
  return f;
}

// Two types that prefer each other's outputs: v(t1) = (1, 2), v(t2) = (2, 1),
// t1 -> (o1, 1), t2 -> (o2, 1).
inline Fixture two_type_swap(const Scalar& f1 = Scalar(1, 2)) {
  require(f1.sign() > 0 && f1 < Scalar(1), "two_type_swap: 0 < f1 < 1 required");
  return detail::single_agent({{1, 2}, {2, 1}}, {f1, Scalar(1) - f1}, 2, {0, 1},
                              {Scalar(1), Scalar(1)});
}

// One item, outcomes {win, lose}, scalar values; the mechanism always
// allocates and charges nothing.
inline Fixture single_item(const Vec& values, const Vec& dist) {
  require(values.size() == dist.size() && !values.empty(), "single_item: size mismatch");
  Matrix vals;
  for (const auto& v : values) vals.push_back({v, Scalar(0)});
  Fixture f = detail::single_agent(std::move(vals), dist, 2,
                                   std::vector<std::size_t>(values.size(), 0),
                                   Vec(values.size(), Scalar(0)));
  f.instance.outcomes = {"win", "lose"};
  return f;
}

// regret[agent][true type][report], floored at zero, summed straight from the
// ex-post table.
using RegretTensor = std::vector<Matrix>;

inline RegretTensor brute_force_regret(const Instance& inst, const Mechanism& mech) {
  validate(inst, mech);
  const ProfileSpace space(inst);
  RegretTensor out;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    const std::size_t m = inst.num_types(i);
    Matrix u(m, Vec(m, Scalar(0)));
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      const std::size_t ti = space.type_of(idx, i);
      Scalar w = 1;
      for (std::size_t j = 0; j < inst.num_agents(); ++j) {
        if (j != i) w *= inst.distributions[j][space.type_of(idx, j)];
      }
      for (std::size_t truth = 0; truth < m; ++truth) {
        Scalar v = 0;
        for (std::size_t o = 0; o < inst.num_outcomes(); ++o) {
          v += inst.valuations[i][truth][o] * mech.allocation[idx][o];
        }
        u[truth][ti] += w * (v - mech.payment[idx][i]);
      }
    }
    Matrix r(m, Vec(m, Scalar(0)));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (u[a][b] > u[a][a]) r[a][b] = u[a][b] - u[a][a];
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline RegretTensor brute_force_regret(const Instance& inst,
                                       const std::vector<InducedMechanism>& induced) {
  RegretTensor out;
  for (const auto& mech : induced) {
    const std::size_t i = mech.agent;
    const std::size_t m = inst.num_types(i);
    Matrix r(m, Vec(m, Scalar(0)));
    for (std::size_t a = 0; a < m; ++a) {
      auto u = [&](std::size_t b) {
        Scalar v = 0;
        for (std::size_t o = 0; o < inst.num_outcomes(); ++o) {
          v += inst.valuations[i][a][o] * mech.allocation[b][o];
        }
        return v - mech.payment[b];
      };
      const Scalar truthful = u(a);
      for (std::size_t b = 0; b < m; ++b) {
        const Scalar d = u(b) - truthful;
        if (d.sign() > 0) r[a][b] = d;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline bool all_zero(const RegretTensor& t) {
  for (const auto& m : t) {
    for (const auto& row : m) {
      for (const auto& x : row) {
        if (!x.is_zero()) return false;
      }
    }
  }
  return true;
}

namespace detail {

// Unique solution of the square system a x = b, if any.
inline std::optional<Vec> solve_square(Matrix a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Scalar f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  Vec x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = b[r] / a[r][r];
  return x;
}

}  // namespace detail

// Optimal blended objective over BIC, interim-IR mechanisms by enumerating
// every vertex of the feasible polytope. Only for tiny instances.
inline Scalar brute_force_best_bic(const Instance& inst, const Scalar& lambda) {
  const LPModel model = build_lp(inst, lambda, IcMode::kBic);
  const std::size_t n = model.lp.num_vars;
  struct Constraint {
    Vec a;
    Scalar b;
    bool equality;
  };
  std::vector<Constraint> eqs, ineqs;
  for (const auto& row : model.lp.rows) {
    Vec a(n, Scalar(0));
    for (const auto& [v, c] : row.coeffs) a[v] += c;
    Scalar b = row.rhs;
    if (row.sense == Sense::kLe) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    (row.sense == Sense::kEq ? eqs : ineqs).push_back({std::move(a), std::move(b), false});
  }
  for (std::size_t v = 0; v < n; ++v) {
    Vec a(n, Scalar(0));
    a[v] = 1;
    ineqs.push_back({std::move(a), Scalar(0), false});
  }
  require(eqs.size() <= n, "brute_force_best_bic: too many equalities");
  const std::size_t pick = n - eqs.size();
  require(ineqs.size() <= 24, "brute_force_best_bic: instance too large for vertex enumeration");
  std::optional<Scalar> best;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (chosen.size() == pick) {
      Matrix a;
      Vec b;
      for (const auto& e : eqs) {
        a.push_back(e.a);
        b.push_back(e.b);
      }
      for (auto c : chosen) {
        a.push_back(ineqs[c].a);
        b.push_back(ineqs[c].b);
      }
      auto x = detail::solve_square(std::move(a), std::move(b));
      if (!x) return;
      for (const auto& c : ineqs) {
        Scalar lhs = 0;
        for (std::size_t v = 0; v < n; ++v) lhs += c.a[v] * (*x)[v];
        if (lhs < c.b) return;
      }
      Scalar obj = 0;
      for (std::size_t v = 0; v < n; ++v) obj += model.lp.objective[v] * (*x)[v];
      if (!best || obj > *best) best = obj;
      return;
    }
    for (std::size_t c = from; c + (pick - chosen.size()) <= ineqs.size(); ++c) {
      chosen.push_back(c);
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  ensure(best.has_value(), "brute_force_best_bic: no feasible vertex");
  return *best;
}

// Named fixture with the quantities it is known to produce. `basis` records
// where an expected value comes from: "published" (a claim worked out in the
// literature), "structural" (immediate from the construction) or "computed"
// (obtained independently, by hand or by an oracle).
struct ExpectedQuantity {
  std::string name;
  Scalar value;
  std::string basis;
  std::string relation = "==";  // or "<=" / ">="
};

struct FixtureParams {
  std::size_t m = 4;
  std::size_t classes = 2;
  Scalar eps = Scalar(1, 10);
  std::vector<std::size_t> ms = {3, 3};
  Scalar f1 = Scalar(1, 2);
};

struct FixtureSpec {
  std::string name;
  std::string description;
  std::function<Fixture(const FixtureParams&)> build;
  std::function<std::vector<ExpectedQuantity>(const FixtureParams&)> expected;
};

inline const std::vector<FixtureSpec>& fixture_registry() {
  static const std::vector<FixtureSpec> registry = {
      {"example_better_result", "single agent, sqrt(m) premium type with eps regret (--m square, --eps)",
       [](const FixtureParams& p) { return example_better_result(p.m, p.eps); },
       [](const FixtureParams& p) {
         const Scalar m = Scalar(static_cast<long long>(p.m));
         const Scalar root = *detail::exact_sqrt(p.m);
         const Scalar rev = Scalar(1) + (root - Scalar(1)) / m;
         if (p.m == 1) {
           return std::vector<ExpectedQuantity>{{"epsBIC", Scalar(0), "structural"}};
         }
         return std::vector<ExpectedQuantity>{{"epsBIC", p.eps, "published"},
                                              {"revenue", rev, "published"},
                                              {"welfare", rev, "published"},
                                              {"transformRevenueLoss", p.eps / m, "published"}};
       }},
      {"chain_lower_bound", "single agent chain, each type envies the one below (--m, --eps)",
       [](const FixtureParams& p) { return chain_lower_bound(p.m, p.eps); },
       [](const FixtureParams& p) {
         const Scalar m = Scalar(static_cast<long long>(p.m));
         return std::vector<ExpectedQuantity>{
             {"epsBIC", p.m > 1 ? p.eps : Scalar(0), "structural"},
             {"transformRevenueLoss", (m - Scalar(1)) * p.eps / Scalar(2), "published"}};
       }},
      {"eeic_impossibility", "eps-EEIC chain on a skewed distribution (--m >= 3, --eps)",
       [](const FixtureParams& p) { return eeic_impossibility(p.m, p.eps); },
       [](const FixtureParams& p) {
         const Scalar m = Scalar(static_cast<long long>(p.m));
         return std::vector<ExpectedQuantity>{{"epsBIC", m, "computed"},
                                              {"epsEEIC", p.eps, "computed"},
                                              {"epsEEIC", p.eps, "published", "<="}};
       }},
      {"dsic_failure", "two agents, two items, eps-BIC table beating every DSIC mechanism (--eps)",
       [](const FixtureParams& p) { return dsic_failure(p.eps); },
       [](const FixtureParams& p) {
         return std::vector<ExpectedQuantity>{
             {"revenue", Scalar(51, 16) + p.eps / Scalar(16), "published"},
             {"epsBIC", p.eps, "computed", "<="},
             {"optimalDsicRevenue", Scalar(25, 8), "published"}};
       }},
      {"menu_bound_instance", "single agent, C menu classes, cross-class regret <= eps (--m, --C, --eps)",
       [](const FixtureParams& p) { return menu_bound_instance(p.m, p.classes, p.eps); },
       [](const FixtureParams& p) {
         const Scalar c = Scalar(static_cast<long long>(p.classes));
         return std::vector<ExpectedQuantity>{
             {"transformRevenueLoss", c * p.eps, "published", "<="}};
       }},
      {"disjoint_chains", "one chain per agent on disjoint outcome components (--ms, --eps)",
       [](const FixtureParams& p) { return disjoint_chains(p.ms, p.eps); },
       [](const FixtureParams& p) {
         Scalar loss = 0;
         for (auto m : p.ms) loss += Scalar(static_cast<long long>(m) - 1) * p.eps / Scalar(2);
         return std::vector<ExpectedQuantity>{{"transformRevenueLoss", loss, "published"}};
       }},
      {"two_type_swap", "two types preferring each other's outputs (--f1)",
       [](const FixtureParams& p) { return two_type_swap(p.f1); },
       [](const FixtureParams&) {
         return std::vector<ExpectedQuantity>{{"epsBIC", Scalar(1), "computed"}};
       }},
      {"single_item", "one item, values {1, 2} uniform, always allocated for free",
       [](const FixtureParams&) { return single_item({1, 2}, {Scalar(1, 2), Scalar(1, 2)}); },
       [](const FixtureParams&) {
         return std::vector<ExpectedQuantity>{{"optimalBicRevenue", Scalar(1), "computed"},
                                              {"optimalBicWelfare", Scalar(3, 2), "structural"}};
       }},
  };
  return registry;
}

inline const FixtureSpec& find_fixture(const std::string& name) {
  for (const auto& spec : fixture_registry()) {
    if (spec.name == name) return spec;
  }
  throw InputError("unknown fixture \"" + name + "\"");
}

}  // namespace mechkit
