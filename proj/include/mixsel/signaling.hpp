#pragma once

// Signaling schemes as convex decompositions of the prior, and the LP-based
// solvers over s-uniform posteriors (uni- and bi-criteria).

#include <map>
#include <thread>

#include "mixsel/core.hpp"
#include "mixsel/lp.hpp"
#include "mixsel/mixture.hpp"
#include "mixsel/objectives.hpp"

namespace mixsel {

struct Signal {
  double prob = 0.0;
  SimplexVector posterior;
};

struct SignalingScheme {
  std::vector<Signal> signals;
};

struct SchemeValue {
  double value = 0.0;
  std::vector<double> contributions;  // nu_sigma * g(A mu_sigma) per signal
};

struct SchemeReport {
  double prob_sum_error = 0.0;        // |sum nu - 1|
  double min_prob = 0.0;              // most negative signal probability
  double decomposition_residual = 0.0;  // max_i |sum nu mu_i - lambda_i|
  bool has_duplicate_posteriors = false;
  bool valid = false;
};

inline SchemeReport validate_scheme(const SignalingScheme& scheme,
                                    const SimplexVector& lambda) {
  SchemeReport rep;
  if (scheme.signals.empty()) {
    rep.decomposition_residual = 1.0;
    return rep;
  }
  const int m = lambda.dimension();
  double psum = 0.0;
  std::vector<double> mix(static_cast<std::size_t>(m), 0.0);
  rep.min_prob = scheme.signals.front().prob;
  for (const auto& sig : scheme.signals) {
    psum += sig.prob;
    rep.min_prob = std::min(rep.min_prob, sig.prob);
    if (sig.posterior.dimension() != m) {
      rep.decomposition_residual = 1.0;
      return rep;
    }
    for (int i = 0; i < m; ++i)
      mix[static_cast<std::size_t>(i)] += sig.prob * sig.posterior[i];
  }
  rep.prob_sum_error = std::abs(psum - 1.0);
  for (int i = 0; i < m; ++i)
    rep.decomposition_residual = std::max(
        rep.decomposition_residual, std::abs(mix[static_cast<std::size_t>(i)] - lambda[i]));
  for (std::size_t a = 0; a < scheme.signals.size() && !rep.has_duplicate_posteriors; ++a)
    for (std::size_t b = a + 1; b < scheme.signals.size(); ++b)
      if (scheme.signals[a].posterior.entries() ==
          scheme.signals[b].posterior.entries()) {
        rep.has_duplicate_posteriors = true;
        break;
      }
  rep.valid = rep.prob_sum_error <= 1e-8 && rep.min_prob >= -1e-10 &&
              rep.decomposition_residual <= 1e-8 && !rep.has_duplicate_posteriors;
  return rep;
}

inline SchemeValue evaluate_scheme(const SignalingScheme& scheme,
                                   const BoundedMatrix& A,
                                   const Objective& obj) {
  SchemeValue sv;
  for (const auto& sig : scheme.signals) {
    const double c = sig.prob * obj.evaluate(mat_vec(A, sig.posterior));
    sv.contributions.push_back(c);
    sv.value += c;
  }
  return sv;
}

struct SignalingResult {
  SignalingScheme scheme;
  SchemeValue value;
  double guarantee = 0.0;  // additive gap to the optimum over all schemes
  double lp_value = 0.0;
  int s = 0;
};

namespace detail {

// Builds and solves LP (over s-uniform posteriors):
//   max sum_j nu_j * obj(A mu_j)  s.t.  sum_j nu_j mu_j = lambda, nu in simplex.
// Then prunes numerically-zero signals and (optionally) merges duplicates.
inline SignalingResult signaling_lp(const BoundedMatrix& A,
                                    const Objective& obj,
                                    const SimplexVector& lambda, int s,
                                    double guarantee, unsigned long long cap,
                                    int threads, bool merge) {
  const int m = A.cols();
  if (lambda.dimension() != m)
    throw DimensionMismatch("prior dimension does not match matrix columns");
  if (obj.n != A.rows())
    throw DimensionMismatch("objective arity does not match matrix rows");
  const unsigned long long total = multiset_count(m, s);
  if (total > cap) throw CapExceeded(total);
  const int M = static_cast<int>(total);

  std::vector<std::vector<int>> posteriors;
  posteriors.reserve(static_cast<std::size_t>(M));
  {
    std::vector<int> c = first_count_vector(m, s);
    do {
      posteriors.push_back(c);
    } while (next_count_vector(c));
  }

  // Column values obj(A mu_j); embarrassingly parallel.
  std::vector<double> colval(static_cast<std::size_t>(M));
  const int workers = std::max(1, std::min(threads, M));
  auto eval_range = [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j)
      colval[static_cast<std::size_t>(j)] = obj.evaluate(
          mat_vec(A, SUniformVector(posteriors[static_cast<std::size_t>(j)], s)));
  };
  if (workers == 1) {
    eval_range(0, M);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(eval_range, M * w / workers, M * (w + 1) / workers);
    for (auto& th : pool) th.join();
  }

  StandardFormLP lp;
  lp.objective = colval;
  lp.rows.assign(static_cast<std::size_t>(m + 1),
                 std::vector<double>(static_cast<std::size_t>(M), 0.0));
  lp.rhs.resize(static_cast<std::size_t>(m + 1));
  for (int j = 0; j < M; ++j) {
    const auto& c = posteriors[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i)
      lp.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<double>(c[static_cast<std::size_t>(i)]) / s;
    lp.rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = 1.0;
  }
  for (int i = 0; i < m; ++i) lp.rhs[static_cast<std::size_t>(i)] = lambda[i];
  lp.rhs[static_cast<std::size_t>(m)] = 1.0;

  const LpSolution sol = solve_lp(lp);
  // The s-uniform posteriors span the simplex, so the LP is always feasible.
  if (sol.status != LpStatus::Optimal)
    throw InternalError("signaling LP reported " +
                        std::string(sol.status == LpStatus::Infeasible
                                        ? "infeasible"
                                        : "unbounded"));

  // Collect, merge duplicate posteriors, prune tiny weights, renormalize.
  std::map<std::vector<int>, double> weights;
  for (int j = 0; j < M; ++j) {
    const double nu = sol.x[static_cast<std::size_t>(j)];
    if (nu <= 0.0) continue;
    if (merge)
      weights[posteriors[static_cast<std::size_t>(j)]] += nu;
    else
      weights.emplace(posteriors[static_cast<std::size_t>(j)], nu);
  }
  SignalingScheme scheme;
  double kept = 0.0;
  for (const auto& [counts, nu] : weights) {
    if (nu < 1e-12) continue;
    kept += nu;
    scheme.signals.push_back({nu, SUniformVector(counts, s).to_simplex()});
  }
  if (scheme.signals.empty())
    throw InternalError("signaling LP returned an empty scheme");
  for (auto& sig : scheme.signals) sig.prob /= kept;

  SignalingResult res;
  res.scheme = std::move(scheme);
  res.value = evaluate_scheme(res.scheme, A, obj);
  res.guarantee = guarantee;
  res.lp_value = sol.value;
  res.s = s;
  if (std::abs(res.value.value - sol.value) > 1e-6)
    throw InternalError("scheme value drifted from the LP optimum");
  return res;
}

}  // namespace detail

inline SignalingResult solve_signaling(const BoundedMatrix& A,
                                       const Objective& obj,
                                       const SimplexVector& lambda,
                                       double alpha, double delta,
                                       unsigned long long cap = kDefaultCap,
                                       int threads = 1, bool merge = true) {
  if (!obj.lipschitz)
    throw InvalidParam("solve_signaling: objective '" + obj.name +
                       "' has unbounded Lipschitz constant; use the "
                       "bi-criteria path");
  const int s = sample_size(alpha, delta);
  return detail::signaling_lp(A, obj, lambda, s,
                              alpha * obj.beta + *obj.lipschitz * delta, cap,
                              threads, merge);
}

// LP objective uses the (delta,rho)-relaxation h; the h-value of the scheme
// is within alpha*g_beta + rho of the g-optimal scheme value.
inline SignalingResult solve_signaling_bicriteria(
    const BoundedMatrix& A, double g_beta, const Objective& h,
    const SimplexVector& lambda, double alpha, double delta, double rho,
    unsigned long long cap = kDefaultCap, int threads = 1, bool merge = true) {
  const int s = sample_size(alpha, delta);
  return detail::signaling_lp(A, h, lambda, s, alpha * g_beta + rho, cap,
                              threads, merge);
}

}  // namespace mixsel
