#pragma once

// Dense two-phase primal simplex with Bland's anti-cycling rule for
// standard-form LPs: maximize c x subject to E x = b, x >= 0. Row counts in
// this codebase are tiny (m+1 for the signaling LP), so a full tableau is
// the simplest correct choice.

#include "mixsel/core.hpp"

namespace mixsel {

struct StandardFormLP {
  std::vector<double> objective;          // length M
  std::vector<std::vector<double>> rows;  // r x M equality constraints
  std::vector<double> rhs;                // length r
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  std::vector<int> basis;  // variable index per retained row
};

namespace lp_detail {

constexpr double kFeasTol = 1e-8;
constexpr double kPivotTol = 1e-12;
constexpr double kReducedCostTol = 1e-10;
constexpr double kRankTol = 1e-10;

struct Tableau {
  int r = 0, cols = 0;             // cols excludes the rhs column
  std::vector<double> a;           // (r+1) x (cols+1), last row = objective
  std::vector<int> basis;

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * (cols + 1) + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * (cols + 1) + j];
  }
  double& rhs(int i) { return at(i, cols); }
  double& obj(int j) { return at(r, j); }

  void pivot(int pr, int pc) {
    const double pv = at(pr, pc);
    const double inv = 1.0 / pv;
    for (int j = 0; j <= cols; ++j) at(pr, j) *= inv;
    at(pr, pc) = 1.0;
    for (int i = 0; i <= r; ++i) {
      if (i == pr) continue;
      const double f = at(i, pc);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) at(i, j) -= f * at(pr, j);
      at(i, pc) = 0.0;
    }
    basis[static_cast<std::size_t>(pr)] = pc;
  }

  // Bland: entering = lowest-index column with positive reduced cost;
  // leaving = min-ratio row, ties to the lowest basic variable index.
  // Returns Optimal when no entering column exists.
  LpStatus iterate(int usable_cols) {
    const unsigned long long max_iters =
        200ULL * (static_cast<unsigned long long>(usable_cols) + r + 16);
    for (unsigned long long it = 0; it < max_iters; ++it) {
      int enter = -1;
      for (int j = 0; j < usable_cols; ++j) {
        if (obj(j) > kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      double best_ratio = 0.0, max_coef = 0.0;
      for (int i = 0; i < r; ++i) {
        const double aij = at(i, enter);
        max_coef = std::max(max_coef, aij);
        if (aij <= kPivotTol) continue;
        const double ratio = rhs(i) / aij;
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol &&
             basis[static_cast<std::size_t>(i)] <
                 basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        if (max_coef > 0.0)
          throw NumericalFailure("simplex: no pivot above tolerance");
        return LpStatus::Unbounded;
      }
      pivot(leave, enter);
    }
    throw NumericalFailure("simplex: iteration limit reached");
  }
};

}  // namespace lp_detail

inline LpSolution solve_lp(const StandardFormLP& p) {
  using namespace lp_detail;
  const int M = static_cast<int>(p.objective.size());
  const int r0 = static_cast<int>(p.rows.size());
  if (static_cast<int>(p.rhs.size()) != r0)
    throw DimensionMismatch("solve_lp: rhs length mismatch");
  for (const auto& row : p.rows)
    if (static_cast<int>(row.size()) != M)
      throw DimensionMismatch("solve_lp: constraint row length mismatch");
  for (double v : p.objective)
    if (!std::isfinite(v)) throw InvalidParam("solve_lp: non-finite objective");

  // Drop linearly dependent rows (Gaussian elimination over retained rows);
  // an inconsistent dependent row means the system is infeasible.
  std::vector<int> kept;
  std::vector<std::vector<double>> reduced;  // reduced rows with rhs appended
  std::vector<int> pivot_col;
  for (int i = 0; i < r0; ++i) {
    std::vector<double> row(p.rows[static_cast<std::size_t>(i)]);
    row.push_back(p.rhs[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const double f = row[static_cast<std::size_t>(pivot_col[k])] /
                       reduced[k][static_cast<std::size_t>(pivot_col[k])];
      if (f == 0.0) continue;
      for (int j = 0; j <= M; ++j)
        row[static_cast<std::size_t>(j)] -= f * reduced[k][static_cast<std::size_t>(j)];
    }
    int pc = -1;
    double mag = kRankTol;
    for (int j = 0; j < M; ++j) {
      if (std::abs(row[static_cast<std::size_t>(j)]) > mag) {
        mag = std::abs(row[static_cast<std::size_t>(j)]);
        pc = j;
      }
    }
    if (pc < 0) {
      if (std::abs(row[static_cast<std::size_t>(M)]) > kFeasTol)
        return LpSolution{LpStatus::Infeasible, 0.0, {}, {}};
      continue;  // redundant
    }
    kept.push_back(i);
    reduced.push_back(std::move(row));
    pivot_col.push_back(pc);
  }
  const int r = static_cast<int>(kept.size());

  // Phase 1: artificial basis, minimize artificial mass.
  Tableau t;
  t.r = r;
  t.cols = M + r;
  t.a.assign(static_cast<std::size_t>(r + 1) * (t.cols + 1), 0.0);
  t.basis.resize(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    const int src = kept[static_cast<std::size_t>(i)];
    const double sign = p.rhs[static_cast<std::size_t>(src)] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < M; ++j)
      t.at(i, j) = sign * p.rows[static_cast<std::size_t>(src)][static_cast<std::size_t>(j)];
    t.rhs(i) = sign * p.rhs[static_cast<std::size_t>(src)];
    t.at(i, M + i) = 1.0;
    t.basis[static_cast<std::size_t>(i)] = M + i;
  }
  // Phase-1 objective: maximize -(sum of artificials), priced out against
  // the artificial basis. The corner entry carries the negated objective.
  for (int j = 0; j < M; ++j) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += t.at(i, j);
    t.obj(j) = s;
  }
  double bsum = 0.0;
  for (int i = 0; i < r; ++i) bsum += t.rhs(i);
  t.rhs(r) = bsum;
  if (t.iterate(M) != LpStatus::Optimal)
    throw InternalError("phase-1 simplex cannot be unbounded");
  if (t.rhs(r) > kFeasTol) return LpSolution{LpStatus::Infeasible, 0.0, {}, {}};

  // Pivot any artificial still basic (at zero) out on a structural column.
  for (int i = 0; i < r; ++i) {
    if (t.basis[static_cast<std::size_t>(i)] < M) continue;
    int pc = -1;
    for (int j = 0; j < M; ++j) {
      if (std::abs(t.at(i, j)) > kPivotTol) {
        pc = j;
        break;
      }
    }
    if (pc < 0)
      throw InternalError("basic artificial on an independent row");
    t.pivot(i, pc);
  }

  // Phase 2: real objective priced out against the current basis.
  for (int j = 0; j <= t.cols; ++j) t.at(t.r, j) = 0.0;
  for (int j = 0; j < M; ++j) t.obj(j) = p.objective[static_cast<std::size_t>(j)];
  for (int i = 0; i < r; ++i) {
    const double cb = p.objective[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])];
    if (cb == 0.0) continue;
    for (int j = 0; j <= t.cols; ++j) t.at(t.r, j) -= cb * t.at(i, j);
  }
  const LpStatus st = t.iterate(M);
  if (st == LpStatus::Unbounded) return LpSolution{LpStatus::Unbounded, 0.0, {}, {}};

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(static_cast<std::size_t>(M), 0.0);
  sol.basis.resize(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    const int v = t.basis[static_cast<std::size_t>(i)];
    sol.basis[static_cast<std::size_t>(i)] = v;
    sol.x[static_cast<std::size_t>(v)] = t.rhs(i);
  }
  for (double& v : sol.x) {
    if (v < -kFeasTol * 10)
      throw NumericalFailure("simplex produced a negative basic value");
    if (v < 0.0) v = 0.0;
  }
  sol.value = 0.0;
  for (int j = 0; j < M; ++j)
    sol.value += p.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
  return sol;
}

}  // namespace mixsel
