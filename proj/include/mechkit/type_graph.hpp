#pragma once

#include <deque>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mechkit/instance.hpp"

namespace mechkit {

enum class Weighting { kUniform, kDensityWeighted };

// Regret graph over one agent's types. Edge j -> k exists iff type j weakly
// prefers type k's output to its own; zero-weight edges are kept.
class TypeGraph {
 public:
  TypeGraph() = default;
  TypeGraph(Weighting weighting, Matrix utilities, Vec distribution)
      : weighting_(weighting), utilities_(std::move(utilities)), dist_(std::move(distribution)) {
    const std::size_t m = utilities_.size();
    weights_.assign(m, std::vector<std::optional<Scalar>>(m));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (j == k) continue;
        Scalar gain = utilities_[j][k] - utilities_[j][j];
        if (gain.sign() < 0) continue;
        if (weighting_ == Weighting::kDensityWeighted) gain *= dist_[j] * dist_[k];
        weights_[j][k] = std::move(gain);
      }
    }
  }

  std::size_t size() const { return weights_.size(); }
  Weighting weighting() const { return weighting_; }

  bool has_edge(std::size_t j, std::size_t k) const { return weights_[j][k].has_value(); }
  bool is_positive(std::size_t j, std::size_t k) const {
    return weights_[j][k] && weights_[j][k]->sign() > 0;
  }
  const Scalar& weight(std::size_t j, std::size_t k) const { return *weights_[j][k]; }

  // u[j][k]: utility of type j for type k's output, at the time of building.
  const Matrix& utilities() const { return utilities_; }
  const Vec& distribution() const { return dist_; }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (std::size_t j = 0; j < size(); ++j) {
      for (std::size_t k = 0; k < size(); ++k) n += has_edge(j, k) ? 1 : 0;
    }
    return n;
  }

  std::size_t positive_edge_count() const {
    std::size_t n = 0;
    for (std::size_t j = 0; j < size(); ++j) {
      for (std::size_t k = 0; k < size(); ++k) n += is_positive(j, k) ? 1 : 0;
    }
    return n;
  }

 private:
  Weighting weighting_ = Weighting::kUniform;
  Matrix utilities_;
  Vec dist_;
  std::vector<std::vector<std::optional<Scalar>>> weights_;
};

inline TypeGraph build_graph(const AgentModel& model, const InducedMechanism& induced,
                             Weighting weighting) {
  const std::size_t m = model.num_types();
  require(induced.allocation.size() == m && induced.payment.size() == m,
          "type graph: induced mechanism and distribution have different type counts");
  for (std::size_t t = 0; t < m; ++t) {
    require(induced.allocation[t].size() == model.valuations[t].size(),
            "type graph: allocation of type " + std::to_string(t) + " has wrong outcome count");
  }
  return TypeGraph(weighting, utility_table(model, induced), model.distribution);
}

inline Scalar total_weight(const TypeGraph& g) {
  Scalar s = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.has_edge(j, k)) s += g.weight(j, k);
    }
  }
  return s;
}

namespace detail {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Hop distances over all edges, any weight.
inline std::vector<std::vector<std::size_t>> hop_distances(const TypeGraph& g) {
  const std::size_t m = g.size();
  std::vector<std::vector<std::size_t>> dist(m, std::vector<std::size_t>(m, kUnreachable));
  for (std::size_t s = 0; s < m; ++s) {
    std::deque<std::size_t> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const std::size_t a = queue.front();
      queue.pop_front();
      for (std::size_t b = 0; b < m; ++b) {
        if (g.has_edge(a, b) && dist[s][b] == kUnreachable) {
          dist[s][b] = dist[s][a] + 1;
          queue.push_back(b);
        }
      }
    }
  }
  return dist;
}

struct CycleSearch {
  const TypeGraph& g;
  const std::vector<std::vector<std::size_t>>& dist;
  std::size_t length;
  std::vector<std::size_t> path;
  std::vector<bool> on_path;

  bool has_positive_edge() const {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (g.is_positive(path[i], path[(i + 1) % path.size()])) return true;
    }
    return false;
  }

  bool extend() {
    const std::size_t start = path.front();
    const std::size_t last = path.back();
    if (path.size() == length) return g.has_edge(last, start) && has_positive_edge();
    for (std::size_t w = start + 1; w < g.size(); ++w) {
      if (on_path[w] || !g.has_edge(last, w)) continue;
      if (dist[w][start] == kUnreachable || path.size() + dist[w][start] > length) continue;
      path.push_back(w);
      on_path[w] = true;
      if (extend()) return true;
      on_path[w] = false;
      path.pop_back();
    }
    return false;
  }
};

}  // namespace detail

// Minimum hop-count simple cycle containing at least one positive edge.
// Among those, the one whose node sequence (rotated to start at its smallest
// node) is lexicographically smallest.
inline std::optional<std::vector<std::size_t>> shortest_positive_cycle(const TypeGraph& g) {
  const auto dist = detail::hop_distances(g);
  std::size_t best = detail::kUnreachable;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (g.is_positive(a, b) && dist[b][a] != detail::kUnreachable) {
        best = std::min(best, dist[b][a] + 1);
      }
    }
  }
  if (best == detail::kUnreachable) return std::nullopt;
  for (std::size_t s = 0; s < g.size(); ++s) {
    detail::CycleSearch search{g, dist, best, {s}, std::vector<bool>(g.size(), false)};
    search.on_path[s] = true;
    if (search.extend()) return search.path;
  }
  throw InvariantError("shortest_positive_cycle: cycle length " + std::to_string(best) +
                       " detected but no cycle enumerated");
}

// The node and every node with a directed path to it, over edges of any weight.
inline std::vector<std::size_t> ancestors(const TypeGraph& g, std::size_t node) {
  require(node < g.size(), "ancestors: unknown node " + std::to_string(node));
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{node};
  seen[node] = true;
  while (!stack.empty()) {
    const std::size_t b = stack.back();
    stack.pop_back();
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (!seen[a] && g.has_edge(a, b)) {
        seen[a] = true;
        stack.push_back(a);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (seen[a]) out.push_back(a);
  }
  return out;
}

// Nodes with no incoming positive edge and at least one outgoing positive edge.
inline std::vector<std::size_t> sources_with_positive_out(const TypeGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < g.size(); ++t) {
    bool incoming = false;
    bool outgoing = false;
    for (std::size_t o = 0; o < g.size(); ++o) {
      incoming = incoming || g.is_positive(o, t);
      outgoing = outgoing || g.is_positive(t, o);
    }
    if (!incoming && outgoing) out.push_back(t);
  }
  return out;
}

// Graphviz rendering. Zero-weight edges are dashed.
inline std::string to_dot(const TypeGraph& g, const std::vector<std::string>& labels = {},
                          const std::string& name = "types") {
  auto label = [&](std::size_t t) {
    return t < labels.size() ? labels[t] : "t" + std::to_string(t + 1);
  };
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (std::size_t t = 0; t < g.size(); ++t) os << "  n" << t << " [label=\"" << label(t) << "\"];\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!g.has_edge(j, k)) continue;
      os << "  n" << j << " -> n" << k << " [label=\"" << g.weight(j, k).str() << "\"";
      if (g.weight(j, k).is_zero()) os << ", style=dashed";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace mechkit
