#pragma once

// Mixture selection by s-uniform enumeration: uni-criteria solver,
// bi-criteria variant for relaxations of non-Lipschitz objectives, and the
// Monte Carlo validator for the sampled-value guarantee.

#include <thread>

#include "mixsel/core.hpp"
#include "mixsel/objectives.hpp"

namespace mixsel {

// s = ceil(2 ln(2/alpha) / delta^2).
inline int sample_size(double alpha, double delta) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(delta > 0.0 && delta <= 1.0))
    throw InvalidParam("sample_size: alpha, delta must lie in (0, 1]");
  const double v = 2.0 * std::log(2.0 / alpha) / (delta * delta);
  return std::max(1, static_cast<int>(std::ceil(v - 1e-9)));
}

struct MixtureSolution {
  SUniformVector x;
  double value = 0.0;
  int s = 0;
  unsigned long long candidates = 0;
  double guarantee = 0.0;  // additive gap to the unrestricted optimum
};

namespace detail {

struct BestCandidate {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<int> counts;

  // Higher value wins; ties go to the lexicographically smaller count vector.
  void offer(double v, const std::vector<int>& c) {
    if (v > value || (v == value && !counts.empty() && c < counts)) {
      value = v;
      counts = c;
    }
  }
};

// Maximizes obj(A x~) over all s-uniform x~. Deterministic for any thread
// count: workers scan disjoint lexicographic ranges and the reduction applies
// the same tie-break rule.
inline BestCandidate enumerate_best(const BoundedMatrix& A,
                                    const Objective& obj, int s,
                                    unsigned long long cap, int threads) {
  if (obj.n != A.rows())
    throw DimensionMismatch("objective arity does not match matrix rows");
  const int m = A.cols();
  const unsigned long long total = multiset_count(m, s);
  if (total > cap) throw CapExceeded(total);

  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(
                                             std::min<unsigned long long>(total, 64))));
  std::vector<BestCandidate> results(static_cast<std::size_t>(workers));
  auto run_range = [&](int w, unsigned long long lo, unsigned long long hi) {
    std::vector<int> c = unrank_count_vector(m, s, lo);
    BestCandidate& best = results[static_cast<std::size_t>(w)];
    for (unsigned long long i = lo; i < hi; ++i) {
      const auto t = mat_vec(A, SUniformVector(c, s));
      best.offer(obj.evaluate(t), c);
      next_count_vector(c);
    }
  };
  if (workers == 1) {
    run_range(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const unsigned long long lo = total * static_cast<unsigned long long>(w) / workers;
      const unsigned long long hi =
          total * static_cast<unsigned long long>(w + 1) / workers;
      pool.emplace_back(run_range, w, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  BestCandidate best;
  for (const auto& r : results)
    if (!r.counts.empty()) best.offer(r.value, r.counts);
  return best;
}

}  // namespace detail

inline MixtureSolution solve_mixture(const BoundedMatrix& A,
                                     const Objective& obj, double alpha,
                                     double delta,
                                     unsigned long long cap = kDefaultCap,
                                     int threads = 1) {
  if (!obj.lipschitz)
    throw InvalidParam("solve_mixture: objective '" + obj.name +
                       "' has unbounded Lipschitz constant; use the "
                       "bi-criteria path");
  const int s = sample_size(alpha, delta);
  auto best = detail::enumerate_best(A, obj, s, cap, threads);
  return MixtureSolution{SUniformVector(best.counts, s), best.value, s,
                         multiset_count(A.cols(), s),
                         alpha * obj.beta + *obj.lipschitz * delta};
}

// Maximizes a (delta,rho)-relaxation h of a beta-stable target g; the
// h-value of the output is within alpha*beta + rho of the g-optimum.
inline MixtureSolution solve_mixture_bicriteria(
    const BoundedMatrix& A, double g_beta, const Objective& h, double alpha,
    double delta, double rho, unsigned long long cap = kDefaultCap,
    int threads = 1) {
  const int s = sample_size(alpha, delta);
  auto best = detail::enumerate_best(A, h, s, cap, threads);
  return MixtureSolution{SUniformVector(best.counts, s), best.value, s,
                         multiset_count(A.cols(), s), alpha * g_beta + rho};
}

// Convenience split of a single error budget: alpha = eps/(2 beta),
// delta = eps/(2c), so the guarantee totals eps.
inline std::pair<double, double> split_epsilon(double eps, double beta,
                                               double c) {
  if (eps <= 0.0 || beta <= 0.0 || c <= 0.0)
    throw InvalidParam("split_epsilon: positive arguments required");
  return {std::min(1.0, eps / (2.0 * beta)), std::min(1.0, eps / (2.0 * c))};
}

// Monte Carlo estimate of E[obj(A x~)] for x~ the empirical distribution of
// sample_size(alpha, delta) draws from x. Returns (mean, standard error).
inline std::pair<double, double> estimate_sampled_value(
    const BoundedMatrix& A, const Objective& obj, const SimplexVector& x,
    double alpha, double delta, int trials, SeededRng& rng) {
  if (trials < 1) throw InvalidParam("estimate_sampled_value: trials >= 1");
  const int s = sample_size(alpha, delta);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto xt = empirical_distribution(x, s, rng);
    const double v = obj.evaluate(mat_vec(A, xt));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / trials;
  const double var = std::max(0.0, (sumsq - trials * mean * mean) /
                                       std::max(1, trials - 1));
  return {mean, std::sqrt(var / trials)};
}

}  // namespace mixsel
