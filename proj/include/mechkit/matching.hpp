#pragma once

#include <optional>
#include <vector>

#include "mechkit/instance.hpp"

namespace mechkit {

// mate[r] is the column matched to row r, or empty when r stays unmatched.
struct Matching {
  std::vector<std::optional<std::size_t>> mate;
  Scalar weight;
};

namespace detail {

// Min-cost assignment of every row to a distinct column (rows <= cols), by
// the shortest augmenting path Hungarian method with potentials. Returns the
// column of each row.
inline std::vector<std::size_t> hungarian(const Matrix& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  const std::size_t m = cost[0].size();
  ensure(n <= m, "hungarian: more rows than columns");
  Vec u(n + 1, Scalar(0)), v(m + 1, Scalar(0));
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Scalar>> minv(m + 1);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::optional<Scalar> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        Scalar cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col[p[j] - 1] = j - 1;
  }
  return col;
}

// Best total weight of a matching (not necessarily perfect) between the
// given rows and columns of w.
inline Scalar best_weight(const Matrix& w, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  if (rows.empty()) return Scalar(0);
  // One zero-cost dummy column per row stands for "unmatched".
  Matrix cost(rows.size(), Vec(cols.size() + rows.size(), Scalar(0)));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) cost[a][b] = -w[rows[a]][cols[b]];
  }
  const auto col = hungarian(cost);
  Scalar total = 0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (col[a] < cols.size()) total += w[rows[a]][cols[col[a]]];
  }
  return total;
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace detail

// Maximum-weight matching of rows (replicas) to columns (surrogates). Rows
// may stay unmatched. Among optimal matchings the lexicographically smallest
// mate vector is returned, comparing column indices with "unmatched" last.
inline Matching max_weight_matching(const Matrix& w) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows == 0 ? 0 : w[0].size();
  for (const auto& row : w) require(row.size() == cols, "matching: ragged weight matrix");
  Matching result;
  result.weight = detail::best_weight(w, detail::iota(rows), detail::iota(cols));
  result.mate.assign(rows, std::nullopt);
  std::vector<bool> taken(cols, false);
  Scalar fixed = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t q = r + 1; q < rows; ++q) rest_rows.push_back(q);
    auto free_cols = [&](std::optional<std::size_t> skip) {
      std::vector<std::size_t> c;
      for (std::size_t s = 0; s < cols; ++s) {
        if (!taken[s] && s != skip) c.push_back(s);
      }
      return c;
    };
    bool chosen = false;
    for (std::size_t s = 0; s < cols && !chosen; ++s) {
      if (taken[s]) continue;
      const Scalar total = fixed + w[r][s] + detail::best_weight(w, rest_rows, free_cols(s));
      if (total == result.weight) {
        result.mate[r] = s;
        taken[s] = true;
        fixed += w[r][s];
        chosen = true;
      }
    }
    if (!chosen) {
      const Scalar total = fixed + detail::best_weight(w, rest_rows, free_cols(std::nullopt));
      ensure(total == result.weight, "matching: lexicographic reconstruction lost optimality");
    }
  }
  return result;
}

// Externality price of each matched row: the best weight the others could
// reach without it, minus what they get in the chosen matching.
inline Vec vcg_prices(const Matrix& w, const Matching& matching) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows == 0 ? 0 : w[0].size();
  Vec prices(rows, Scalar(0));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!matching.mate[r]) continue;
    std::vector<std::size_t> others;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q != r) others.push_back(q);
    }
    const Scalar without = detail::best_weight(w, others, detail::iota(cols));
    prices[r] = without - (matching.weight - w[r][*matching.mate[r]]);
  }
  return prices;
}

}  // namespace mechkit
