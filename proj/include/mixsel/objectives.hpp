#pragma once

// Catalogue of stable / Lipschitz objective functions and the closure
// combinators (convex combination, pointwise max). Stability beta and
// Lipschitz c are declared metadata; property tests validate them empirically.

#include <algorithm>
#include <memory>
#include <optional>
#include <utility>

#include "mixsel/core.hpp"

namespace mixsel {

struct Objective {
  std::string name;
  int n = 0;                        // input dimension
  double beta = 0.0;                // declared stability constant
  std::optional<double> lipschitz;  // L-infinity constant; nullopt = unbounded
  Domain domain = Domain::Signed;
  std::function<double(std::span<const double>)> evaluate;

  double operator()(std::span<const double> t) const { return evaluate(t); }
};

// Worst-case corruption min{g(t') : t' corrupts t on R}, closed form only.
struct WorstCorruption {
  std::function<double(std::span<const double>, const std::vector<int>&)>
      evaluate;
};

namespace detail {

inline void check_arity(const Objective& obj, std::span<const double> t) {
  if (static_cast<int>(t.size()) != obj.n)
    throw DimensionMismatch("objective " + obj.name + " expects " +
                            std::to_string(obj.n) + " inputs, got " +
                            std::to_string(t.size()));
}

inline std::vector<double> sorted_desc(std::span<const double> t) {
  std::vector<double> v(t.begin(), t.end());
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// g^(mid): mean of all but the top and bottom quartiles. 4-stable, 1-Lipschitz.

inline Objective obj_mid(int n) {
  if (n < 1) throw InvalidParam("obj_mid: n >= 1 required");
  Objective obj;
  obj.name = "mid";
  obj.n = n;
  obj.beta = 4.0;
  obj.lipschitz = 1.0;
  obj.domain = Domain::Signed;
  obj.evaluate = [n](std::span<const double> t) {
    auto v = detail::sorted_desc(t);
    const int lo = n / 4;                // 0-based start, rank floor(n/4)+1
    const int hi = (3 * n + 3) / 4;      // 0-based end exclusive, rank ceil(3n/4)
    double acc = 0.0;
    for (int i = lo; i < hi; ++i) acc += v[static_cast<std::size_t>(i)];
    return acc / (hi - lo);
  };
  return obj;
}

// ---------------------------------------------------------------------------
// g^(lottery): optimal single-price revenue against weighted buyer values.
// 1-stable, 1-Lipschitz. The optimum over p >= 0 is attained at some entry
// of t, since revenue is nondecreasing in p between consecutive sorted values.

struct PricePoint {
  double price = 0.0;
  double revenue = 0.0;
};

inline PricePoint lottery_best_price(const SimplexVector& w,
                                     std::span<const double> t) {
  if (w.dimension() != static_cast<int>(t.size()))
    throw DimensionMismatch("lottery: weight/value size mismatch");
  const int n = w.dimension();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return t[static_cast<std::size_t>(a)] > t[static_cast<std::size_t>(b)];
  });
  PricePoint best;  // p = 0 sells to everyone for revenue 0
  double cumw = 0.0;
  for (int r = 0; r < n; ++r) {
    const int i = order[static_cast<std::size_t>(r)];
    cumw += w[i];
    const double p = t[static_cast<std::size_t>(i)];
    if (p <= 0.0) continue;
    // Buyers with t >= p are exactly the first r+1 in sorted order (ties are
    // contiguous, and the last tied index sees the full tied weight).
    if (r + 1 < n &&
        t[static_cast<std::size_t>(order[static_cast<std::size_t>(r + 1)])] == p)
      continue;
    const double rev = p * cumw;
    if (rev > best.revenue) best = {p, rev};
  }
  return best;
}

inline Objective obj_lottery(const SimplexVector& w) {
  Objective obj;
  obj.name = "lottery";
  obj.n = w.dimension();
  obj.beta = 1.0;
  obj.lipschitz = 1.0;
  obj.domain = Domain::Unsigned;
  obj.evaluate = [w](std::span<const double> t) {
    return lottery_best_price(w, t).revenue;
  };
  return obj;
}

// ---------------------------------------------------------------------------
// g^(rev): expected second-highest bid over a finite support of valuation
// matrices, evaluated on the stacked vector W mu. 2-stable, 1-Lipschitz.

inline double max2(std::span<const double> t) {
  if (t.size() < 2) throw InvalidShape("max2 needs at least 2 entries");
  double top = -std::numeric_limits<double>::infinity(), second = top;
  for (double v : t) {
    if (v > top) {
      second = top;
      top = v;
    } else if (v > second) {
      second = v;
    }
  }
  return second;
}

inline Objective obj_revenue(const std::vector<BoundedMatrix>& supports,
                             const SimplexVector& probs) {
  if (supports.empty()) throw InvalidShape("obj_revenue: empty support");
  if (static_cast<int>(supports.size()) != probs.dimension())
    throw DimensionMismatch("obj_revenue: support/prob size mismatch");
  const int n = supports.front().rows();
  if (n < 2) throw InvalidShape("obj_revenue: need at least 2 bidders");
  for (const auto& V : supports)
    if (V.rows() != n || V.cols() != supports.front().cols())
      throw InvalidShape("obj_revenue: ragged support shapes");
  const int C = static_cast<int>(supports.size());
  std::vector<double> p(probs.entries());
  Objective obj;
  obj.name = "revenue";
  obj.n = n * C;
  obj.beta = 2.0;
  obj.lipschitz = 1.0;
  obj.domain = Domain::Unsigned;
  obj.evaluate = [n, C, p](std::span<const double> t) {
    if (static_cast<int>(t.size()) != n * C)
      throw DimensionMismatch("obj_revenue: input size");
    double acc = 0.0;
    for (int c = 0; c < C; ++c)
      acc += p[static_cast<std::size_t>(c)] *
             max2(t.subspan(static_cast<std::size_t>(c) * n,
                            static_cast<std::size_t>(n)));
    return acc;
  };
  return obj;
}

// ---------------------------------------------------------------------------
// Voting objectives. Indicator boundaries are inclusive throughout: a voter
// with utility exactly 0 (or -delta in relaxed mode) votes Yes.

inline Objective obj_vote_sum(int n) {
  if (n < 1) throw InvalidParam("obj_vote_sum: n >= 1 required");
  Objective obj;
  obj.name = "vote_sum";
  obj.n = n;
  obj.beta = 1.0;
  obj.lipschitz = std::nullopt;
  obj.domain = Domain::Signed;
  obj.evaluate = [n](std::span<const double> t) {
    int yes = 0;
    for (double v : t) yes += (v >= 0.0);
    return static_cast<double>(yes) / n;
  };
  return obj;
}

inline Objective obj_vote_sum_relaxed(int n, double delta) {
  if (n < 1 || delta < 0.0) throw InvalidParam("obj_vote_sum_relaxed: bad params");
  Objective obj;
  obj.name = "vote_sum_relaxed";
  obj.n = n;
  obj.beta = 1.0;
  obj.lipschitz = std::nullopt;
  obj.domain = Domain::Signed;
  obj.evaluate = [n, delta](std::span<const double> t) {
    int yes = 0;
    for (double v : t) yes += (v >= -delta);
    return static_cast<double>(yes) / n;
  };
  return obj;
}

inline Objective obj_vote_thresh(int n, double q) {
  if (n < 1 || q <= 0.0 || q > 1.0) throw InvalidParam("obj_vote_thresh: bad params");
  Objective obj;
  obj.name = "vote_thresh";
  obj.n = n;
  obj.beta = 2.0 * n;  // generic bound; the smooth surrogate carries 1/delta
  obj.lipschitz = std::nullopt;
  obj.domain = Domain::Signed;
  auto vs = obj_vote_sum(n);
  obj.evaluate = [vs, q](std::span<const double> t) {
    return vs.evaluate(t) >= q ? 1.0 : 0.0;
  };
  return obj;
}

// Continuous piecewise-linear ramp from 0 at vote_sum = q - delta to 1 at q;
// matches the hard threshold outside [q - delta, q]. (1/delta)-stable.
inline Objective obj_vote_smooth_thresh(int n, double q, double delta) {
  if (n < 1 || q <= 0.0 || q > 1.0 || delta <= 0.0 || delta >= q)
    throw InvalidParam("obj_vote_smooth_thresh: need 0 < delta < q <= 1");
  Objective obj;
  obj.name = "vote_smooth_thresh";
  obj.n = n;
  obj.beta = 1.0 / delta;
  obj.lipschitz = std::nullopt;
  obj.domain = Domain::Signed;
  auto vs = obj_vote_sum(n);
  obj.evaluate = [vs, q, delta](std::span<const double> t) {
    const double frac = vs.evaluate(t);
    if (frac >= q) return 1.0;
    if (frac <= q - delta) return 0.0;
    return (frac - q + delta) / delta;
  };
  return obj;
}

// 1 iff at least a (q - delta) fraction of inputs are >= -delta.
inline Objective obj_vote_thresh_relaxed(int n, double q, double delta) {
  if (n < 1 || q <= 0.0 || q > 1.0 || delta <= 0.0 || delta >= q)
    throw InvalidParam("obj_vote_thresh_relaxed: need 0 < delta < q <= 1");
  Objective obj;
  obj.name = "vote_thresh_relaxed";
  obj.n = n;
  obj.beta = 2.0 * n;  // generic bound, like the hard threshold
  obj.lipschitz = std::nullopt;
  obj.domain = Domain::Signed;
  auto vr = obj_vote_sum_relaxed(n, delta);
  obj.evaluate = [vr, q, delta](std::span<const double> t) {
    return vr.evaluate(t) >= q - delta - 1e-12 ? 1.0 : 0.0;
  };
  return obj;
}

// ---------------------------------------------------------------------------
// g^(slope): sum of min{4 max(0, t_i), 1/n}. 1-stable on [0,1]^n; 4-Lipschitz
// in L1 but not O(1)-Lipschitz in L-infinity.

inline Objective obj_slope(int n) {
  if (n < 1) throw InvalidParam("obj_slope: n >= 1 required");
  Objective obj;
  obj.name = "slope";
  obj.n = n;
  obj.beta = 1.0;
  obj.lipschitz = std::nullopt;  // unbounded in L-infinity
  obj.domain = Domain::Signed;
  obj.evaluate = [n](std::span<const double> t) {
    double acc = 0.0;
    for (double v : t) acc += std::min(4.0 * std::max(0.0, v), 1.0 / n);
    return acc;
  };
  return obj;
}

// ---------------------------------------------------------------------------
// g^(clique)_k(t) = t_[k] - t_[k+1] + t_[n]. 3-Lipschitz; only the generic
// 2n stability bound applies. The value always lies in [0,1] on the unsigned
// domain (t_[n] <= t_[k+1]); violations are flagged as internal errors.

inline Objective obj_clique(int n, int k) {
  if (k < 1 || k >= n) throw InvalidParam("obj_clique: need 1 <= k < n");
  Objective obj;
  obj.name = "clique";
  obj.n = n;
  obj.beta = 2.0 * n;
  obj.lipschitz = 3.0;
  obj.domain = Domain::Unsigned;
  obj.evaluate = [n, k](std::span<const double> t) {
    auto v = detail::sorted_desc(t);
    const double val = v[static_cast<std::size_t>(k - 1)] -
                       v[static_cast<std::size_t>(k)] +
                       v[static_cast<std::size_t>(n - 1)];
    if (val < -1e-9 || val > 1.0 + 1e-9)
      throw InternalError("obj_clique value outside [0,1]");
    return val;
  };
  return obj;
}

// ---------------------------------------------------------------------------
// Combinators. A convex combination (or pointwise max) of beta-stable
// functions is beta-stable; declared constants are the componentwise maxima.

namespace detail {

inline std::pair<double, std::optional<double>> combined_constants(
    const std::vector<Objective>& objs) {
  double beta = 0.0;
  std::optional<double> c = 0.0;
  for (const auto& o : objs) {
    beta = std::max(beta, o.beta);
    if (!o.lipschitz)
      c = std::nullopt;
    else if (c)
      c = std::max(*c, *o.lipschitz);
  }
  return {beta, c};
}

inline void check_combinable(const std::vector<Objective>& objs) {
  if (objs.empty()) throw InvalidParam("combine: empty objective list");
  for (const auto& o : objs)
    if (o.n != objs.front().n)
      throw DimensionMismatch("combine: mismatched arities");
}

}  // namespace detail

inline Objective combine_convex(std::vector<Objective> objs,
                                const SimplexVector& weights) {
  detail::check_combinable(objs);
  if (weights.dimension() != static_cast<int>(objs.size()))
    throw DimensionMismatch("combine_convex: weight count mismatch");
  auto [beta, c] = detail::combined_constants(objs);
  Objective obj;
  obj.name = "convex_combination";
  obj.n = objs.front().n;
  obj.beta = beta;
  obj.lipschitz = c;
  obj.domain = objs.front().domain;
  auto parts = std::make_shared<std::vector<Objective>>(std::move(objs));
  std::vector<double> w(weights.entries());
  obj.evaluate = [parts, w](std::span<const double> t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < parts->size(); ++i)
      acc += w[i] * (*parts)[i].evaluate(t);
    return acc;
  };
  return obj;
}

inline Objective combine_max(std::vector<Objective> objs) {
  detail::check_combinable(objs);
  auto [beta, c] = detail::combined_constants(objs);
  Objective obj;
  obj.name = "pointwise_max";
  obj.n = objs.front().n;
  obj.beta = beta;
  obj.lipschitz = c;
  obj.domain = objs.front().domain;
  auto parts = std::make_shared<std::vector<Objective>>(std::move(objs));
  obj.evaluate = [parts](std::span<const double> t) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& o : *parts) best = std::max(best, o.evaluate(t));
    return best;
  };
  return obj;
}

// ---------------------------------------------------------------------------
// Worst corruption closed forms. Each supported objective is monotone
// nondecreasing in every entry, so the inner minimum sets corrupted entries
// to the domain floor. No closed form exists for obj_clique.

inline std::optional<WorstCorruption> worst_corruption_for(
    const Objective& obj) {
  double fill;
  if (obj.name == "lottery" || obj.name == "revenue" || obj.name == "slope")
    fill = 0.0;
  else if (obj.name == "mid" || obj.name == "vote_sum" ||
           obj.name == "vote_sum_relaxed" || obj.name == "vote_thresh" ||
           obj.name == "vote_smooth_thresh" || obj.name == "vote_thresh_relaxed")
    fill = -1.0;
  else
    return std::nullopt;
  WorstCorruption wc;
  wc.evaluate = [obj, fill](std::span<const double> t,
                            const std::vector<int>& r) {
    detail::check_arity(obj, t);
    std::vector<double> u(t.begin(), t.end());
    for (int i : r) {
      if (i < 0 || i >= obj.n) throw InvalidParam("corruption index out of range");
      u[static_cast<std::size_t>(i)] = fill;
    }
    return obj.evaluate(u);
  };
  return wc;
}

}  // namespace mixsel
