#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mechkit/scalar.hpp"

namespace mechkit {

enum class Sense { kLe, kGe, kEq };

// maximize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Scalar>> coeffs;
    Sense sense = Sense::kLe;
    Scalar rhs;
    std::string name;
  };

  std::size_t num_vars = 0;
  std::vector<Scalar> objective;
  std::vector<Row> rows;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct SimplexResult {
  LPStatus status = LPStatus::kInfeasible;
  Scalar objective;
  std::vector<Scalar> x;
  std::size_t pivots = 0;
};

namespace detail {

// Dense tableau; the last column holds the right-hand side and the last row
// the reduced costs of the current objective (entering candidates are
// negative entries, since the row stores -c_j + c_B B^-1 A_j).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : a_(rows + 1, std::vector<Scalar>(cols + 1, Scalar(0))), basis_(rows, 0) {}

  Scalar& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Scalar& rhs(std::size_t r) { return a_[r].back(); }
  Scalar& cost(std::size_t c) { return a_.back()[c]; }
  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return a_[0].size() - 1; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Scalar inv = Scalar(1) / a_[pr][pc];
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c <= cols(); ++c) {
      if (a_[pr][c].is_zero()) continue;
      a_[pr][c] *= inv;
      nz.push_back(c);
    }
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (r == pr || a_[r][pc].is_zero()) continue;
      const Scalar f = a_[r][pc];
      for (auto c : nz) a_[r][c] -= f * a_[pr][c];
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  // Bland's rule. `allowed` bounds the entering columns. Returns false when
  // the objective is unbounded.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (cost(c).sign() < 0) {
          enter = c;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Scalar best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (a_[r][*enter].sign() <= 0) continue;
        Scalar ratio = rhs(r) / a_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::vector<std::vector<Scalar>> a_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

// Exact two-phase primal simplex.
inline SimplexResult simplex_maximize(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  require(lp.objective.size() == n, "LP objective length differs from variable count");
  // Normalize to nonnegative right-hand sides.
  std::vector<Sense> sense(m);
  std::vector<int> flip(m, 1);
  std::size_t slacks = 0, artificials = 0;
  for (std::size_t r = 0; r < m; ++r) {
    sense[r] = lp.rows[r].sense;
    if (lp.rows[r].rhs.sign() < 0) {
      flip[r] = -1;
      if (sense[r] == Sense::kLe) sense[r] = Sense::kGe;
      else if (sense[r] == Sense::kGe) sense[r] = Sense::kLe;
    }
    if (sense[r] != Sense::kEq) ++slacks;
    if (sense[r] != Sense::kLe) ++artificials;
  }
  const std::size_t cols = n + slacks + artificials;
  detail::Tableau t(m, cols);
  std::size_t next_slack = n, next_art = n + slacks;
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto& [var, coef] : lp.rows[r].coeffs) {
      require(var < n, "LP row " + lp.rows[r].name + " references unknown variable");
      t.at(r, var) += flip[r] == 1 ? coef : -coef;
    }
    t.rhs(r) = flip[r] == 1 ? lp.rows[r].rhs : -lp.rows[r].rhs;
    if (sense[r] == Sense::kLe) {
      t.at(r, next_slack) = 1;
      t.basis()[r] = next_slack++;
    } else {
      if (sense[r] == Sense::kGe) t.at(r, next_slack++) = -1;
      t.at(r, next_art) = 1;
      t.basis()[r] = next_art++;
    }
  }
  SimplexResult result;
  // Phase 1: maximize -sum(artificials).
  if (artificials > 0) {
    for (std::size_t c = n + slacks; c < cols; ++c) t.cost(c) = 1;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < n + slacks) continue;
      for (std::size_t c = 0; c <= cols; ++c) {
        if (!t.at(r, c).is_zero()) t.at(m, c) -= t.at(r, c);
      }
    }
    t.optimize(cols);
    if (!t.at(m, cols).is_zero()) {
      result.status = LPStatus::kInfeasible;
      result.pivots = t.pivots();
      return result;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < n + slacks) continue;
      for (std::size_t c = 0; c < n + slacks; ++c) {
        if (!t.at(r, c).is_zero()) {
          t.pivot(r, c);
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays at 0.
    }
  }
  // Phase 2 objective row.
  for (std::size_t c = 0; c <= cols; ++c) t.cost(c) = 0;
  for (std::size_t c = 0; c < n; ++c) t.cost(c) = -lp.objective[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    if (b >= n || lp.objective[b].is_zero()) continue;
    const Scalar cb = lp.objective[b];
    for (std::size_t c = 0; c <= cols; ++c) {
      if (!t.at(r, c).is_zero()) t.at(m, c) += cb * t.at(r, c);
    }
  }
  // Artificial columns never re-enter.
  if (!t.optimize(n + slacks)) {
    result.status = LPStatus::kUnbounded;
    result.pivots = t.pivots();
    return result;
  }
  result.status = LPStatus::kOptimal;
  result.x.assign(n, Scalar(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < n) result.x[t.basis()[r]] = t.rhs(r);
  }
  result.objective = 0;
  for (std::size_t c = 0; c < n; ++c) result.objective += lp.objective[c] * result.x[c];
  result.pivots = t.pivots();
  return result;
}

}  // namespace mechkit
