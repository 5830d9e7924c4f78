#pragma once

// Brute-force ground truth at desk scale: simplex grid search, exhaustive
// small-signal decompositions, and support enumeration for tiny bimatrix
// games. These are certified lower bounds / exact references used by the
// acceptance suite; they never share code with the solvers they check.

#include "mixsel/core.hpp"
#include "mixsel/mixture.hpp"
#include "mixsel/objectives.hpp"

namespace mixsel {

struct GridOptimum {
  double value = 0.0;
  SUniformVector x;
};

// Exhaustive max of obj(A x) over all N-uniform x; a certified lower bound
// on the true optimum over the simplex.
inline GridOptimum grid_optimum(const BoundedMatrix& A, const Objective& obj,
                                int grid_denominator,
                                unsigned long long cap = kDefaultCap) {
  auto best = detail::enumerate_best(A, obj, grid_denominator, cap, 1);
  return GridOptimum{best.value,
                     SUniformVector(best.counts, grid_denominator)};
}

// Exhaustive search over small-signal decompositions with posteriors on the
// 1/N grid. For m = 2 with up to two signals, the weights are determined in
// closed form by the decomposition constraint; for m = 3 with three signals
// they solve a 3x3 linear system. Returns the best value found (a lower
// bound on the optimal signaling value).
inline double signaling_grid_opt(const BoundedMatrix& A, const Objective& obj,
                                 const SimplexVector& lambda, int N,
                                 int signal_budget,
                                 unsigned long long cap = kDefaultCap) {
  const int m = A.cols();
  if (lambda.dimension() != m) throw DimensionMismatch("signaling_grid_opt");
  auto value_at = [&](const SimplexVector& mu) {
    return obj.evaluate(mat_vec(A, mu));
  };
  double best = value_at(lambda);  // no-signaling scheme is always feasible

  if (signal_budget <= 1) return best;
  if (m == 2 && signal_budget >= 2) {
    if (static_cast<unsigned long long>(N + 1) * (N + 1) > cap)
      throw CapExceeded(static_cast<unsigned long long>(N + 1) * (N + 1));
    std::vector<double> vals(static_cast<std::size_t>(N + 1));
    for (int a = 0; a <= N; ++a)
      vals[static_cast<std::size_t>(a)] = value_at(SimplexVector(
          {static_cast<double>(a) / N, static_cast<double>(N - a) / N}));
    const double l0 = lambda[0];
    for (int a = 0; a <= N; ++a) {
      const double p = static_cast<double>(a) / N;
      for (int b = a + 1; b <= N; ++b) {
        const double q = static_cast<double>(b) / N;
        // nu * q + (1 - nu) * p = l0 needs p <= l0 <= q.
        if (p > l0 + 1e-12 || q < l0 - 1e-12) continue;
        const double nu = (l0 - p) / (q - p);
        best = std::max(best, nu * vals[static_cast<std::size_t>(b)] +
                                  (1.0 - nu) * vals[static_cast<std::size_t>(a)]);
      }
    }
    return best;
  }
  if (m == 3 && signal_budget >= 3) {
    auto grid = enumerate_s_uniform(3, N, cap);
    const std::size_t G = grid.size();
    if (G * G * G / 6 > cap) throw CapExceeded(G * G * G / 6);
    std::vector<double> vals(G);
    std::vector<SimplexVector> mus;
    mus.reserve(G);
    for (std::size_t i = 0; i < G; ++i) {
      mus.push_back(grid[i].to_simplex());
      vals[i] = value_at(mus[i]);
    }
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = i; j < G; ++j)
        for (std::size_t k = j; k < G; ++k) {
          // Solve nu_i mu_i + nu_j mu_j + nu_k mu_k = lambda by Cramer
          // (the three simplex equations; weights must be a distribution).
          const double a11 = mus[i][0], a12 = mus[j][0], a13 = mus[k][0];
          const double a21 = mus[i][1], a22 = mus[j][1], a23 = mus[k][1];
          const double a31 = 1.0, a32 = 1.0, a33 = 1.0;
          const double det = a11 * (a22 * a33 - a23 * a32) -
                             a12 * (a21 * a33 - a23 * a31) +
                             a13 * (a21 * a32 - a22 * a31);
          if (std::abs(det) < 1e-12) continue;
          const double b1 = lambda[0], b2 = lambda[1], b3 = 1.0;
          const double ni = (b1 * (a22 * a33 - a23 * a32) -
                             a12 * (b2 * a33 - a23 * b3) +
                             a13 * (b2 * a32 - a22 * b3)) /
                            det;
          const double nj = (a11 * (b2 * a33 - a23 * b3) -
                             b1 * (a21 * a33 - a23 * a31) +
                             a13 * (a21 * b3 - b2 * a31)) /
                            det;
          const double nk = 1.0 - ni - nj;
          if (ni < -1e-10 || nj < -1e-10 || nk < -1e-10) continue;
          best = std::max(best, ni * vals[i] + nj * vals[j] + nk * vals[k]);
        }
    return best;
  }
  throw InvalidParam("signaling_grid_opt supports m=2 (2 signals) or m=3 (3 signals)");
}

// ---------------------------------------------------------------------------
// Support enumeration for exact Nash equilibria of 2-player bimatrix games.

struct BimatrixNE {
  std::vector<double> x;  // row player
  std::vector<double> y;  // column player
};

namespace detail {

// Solves the square system Mz = v by Gaussian elimination; false if singular.
inline bool solve_square(std::vector<std::vector<double>> M,
                         std::vector<double> v, std::vector<double>& out) {
  const int n = static_cast<int>(v.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(M[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) >
          std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = i;
    if (std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-12)
      return false;
    std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(col)]);
    std::swap(v[static_cast<std::size_t>(piv)], v[static_cast<std::size_t>(col)]);
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] /
                       M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * M[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      v[static_cast<std::size_t>(i)] -= f * v[static_cast<std::size_t>(col)];
    }
  }
  out.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        v[static_cast<std::size_t>(i)] /
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  return true;
}

}  // namespace detail

// Enumerates equal-size support pairs, solves the indifference systems, and
// keeps profiles that verify as exact equilibria (regret <= 1e-9). Payoffs
// are row-major n1 x n2 matrices for the row and column player.
inline std::vector<BimatrixNE> support_enum_ne(
    const std::vector<std::vector<double>>& payoff_row,
    const std::vector<std::vector<double>>& payoff_col,
    int max_support = 4) {
  const int n1 = static_cast<int>(payoff_row.size());
  const int n2 = n1 > 0 ? static_cast<int>(payoff_row.front().size()) : 0;
  if (n1 == 0 || n2 == 0 ||
      payoff_col.size() != static_cast<std::size_t>(n1) ||
      payoff_col.front().size() != static_cast<std::size_t>(n2))
    throw InvalidShape("support_enum_ne: ragged payoff matrices");

  auto verify = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double ux = 0.0, uy = 0.0;
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) {
        ux += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] *
              payoff_row[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        uy += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] *
              payoff_col[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    for (int i = 0; i < n1; ++i) {
      double dev = 0.0;
      for (int j = 0; j < n2; ++j)
        dev += y[static_cast<std::size_t>(j)] *
               payoff_row[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (dev > ux + 1e-9) return false;
    }
    for (int j = 0; j < n2; ++j) {
      double dev = 0.0;
      for (int i = 0; i < n1; ++i)
        dev += x[static_cast<std::size_t>(i)] *
               payoff_col[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (dev > uy + 1e-9) return false;
    }
    return true;
  };

  std::vector<BimatrixNE> found;
  auto consider = [&](std::vector<double> x, std::vector<double> y) {
    for (double v : x)
      if (v < -1e-9) return;
    for (double v : y)
      if (v < -1e-9) return;
    for (double& v : x) v = std::max(0.0, v);
    for (double& v : y) v = std::max(0.0, v);
    if (!verify(x, y)) return;
    for (const auto& ne : found) {
      double diff = 0.0;
      for (int i = 0; i < n1; ++i)
        diff = std::max(diff, std::abs(ne.x[static_cast<std::size_t>(i)] -
                                       x[static_cast<std::size_t>(i)]));
      for (int j = 0; j < n2; ++j)
        diff = std::max(diff, std::abs(ne.y[static_cast<std::size_t>(j)] -
                                       y[static_cast<std::size_t>(j)]));
      if (diff < 1e-7) return;  // duplicate
    }
    found.push_back({std::move(x), std::move(y)});
  };

  for (int sz = 1; sz <= std::min({n1, n2, max_support}); ++sz) {
    for (unsigned s1 = 0; s1 < (1u << n1); ++s1) {
      if (__builtin_popcount(s1) != sz) continue;
      for (unsigned s2 = 0; s2 < (1u << n2); ++s2) {
        if (__builtin_popcount(s2) != sz) continue;
        std::vector<int> sup1, sup2;
        for (int i = 0; i < n1; ++i)
          if (s1 & (1u << i)) sup1.push_back(i);
        for (int j = 0; j < n2; ++j)
          if (s2 & (1u << j)) sup2.push_back(j);
        // x on sup1 makes the column player indifferent across sup2, and
        // symmetrically; unknowns (x, u2) and (y, u1).
        std::vector<std::vector<double>> Mx(
            static_cast<std::size_t>(sz + 1),
            std::vector<double>(static_cast<std::size_t>(sz + 1), 0.0));
        std::vector<double> vx(static_cast<std::size_t>(sz + 1), 0.0);
        for (int r = 0; r < sz; ++r) {
          for (int c = 0; c < sz; ++c)
            Mx[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                payoff_col[static_cast<std::size_t>(sup1[static_cast<std::size_t>(c)])]
                          [static_cast<std::size_t>(sup2[static_cast<std::size_t>(r)])];
          Mx[static_cast<std::size_t>(r)][static_cast<std::size_t>(sz)] = -1.0;
        }
        for (int c = 0; c < sz; ++c)
          Mx[static_cast<std::size_t>(sz)][static_cast<std::size_t>(c)] = 1.0;
        vx[static_cast<std::size_t>(sz)] = 1.0;
        std::vector<double> solx;
        if (!detail::solve_square(Mx, vx, solx)) continue;

        std::vector<std::vector<double>> My(
            static_cast<std::size_t>(sz + 1),
            std::vector<double>(static_cast<std::size_t>(sz + 1), 0.0));
        std::vector<double> vy(static_cast<std::size_t>(sz + 1), 0.0);
        for (int r = 0; r < sz; ++r) {
          for (int c = 0; c < sz; ++c)
            My[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                payoff_row[static_cast<std::size_t>(sup1[static_cast<std::size_t>(r)])]
                          [static_cast<std::size_t>(sup2[static_cast<std::size_t>(c)])];
          My[static_cast<std::size_t>(r)][static_cast<std::size_t>(sz)] = -1.0;
        }
        for (int c = 0; c < sz; ++c)
          My[static_cast<std::size_t>(sz)][static_cast<std::size_t>(c)] = 1.0;
        vy[static_cast<std::size_t>(sz)] = 1.0;
        std::vector<double> soly;
        if (!detail::solve_square(My, vy, soly)) continue;

        std::vector<double> x(static_cast<std::size_t>(n1), 0.0);
        std::vector<double> y(static_cast<std::size_t>(n2), 0.0);
        for (int c = 0; c < sz; ++c) {
          x[static_cast<std::size_t>(sup1[static_cast<std::size_t>(c)])] =
              solx[static_cast<std::size_t>(c)];
          y[static_cast<std::size_t>(sup2[static_cast<std::size_t>(c)])] =
              soly[static_cast<std::size_t>(c)];
        }
        consider(std::move(x), std::move(y));
      }
    }
  }
  return found;
}

}  // namespace mixsel
