#pragma once

// Boolean extensions, the Walsh-Hadamard transform, and the algebraic
// stability checkers (nonnegative spectrum, bounded degree) for the lottery,
// vote-sum, and max2 extensions.

#include <bit>

#include "mixsel/core.hpp"
#include "mixsel/objectives.hpp"

namespace mixsel {

// Value table over {-1,1}^n: index bit i set <=> z_i = +1, so the all-ones
// point is the last index.
struct BooleanFunction {
  int n = 0;
  std::vector<double> table;

  BooleanFunction() = default;
  BooleanFunction(int n_, std::vector<double> t)
      : n(n_), table(std::move(t)) {
    if (n < 1 || n > 20) throw InvalidShape("boolean function: 1 <= n <= 20");
    if (table.size() != (1ULL << n))
      throw InvalidShape("boolean function: table length must be 2^n");
    for (double v : table)
      if (v < -1.0 - 1e-12 || v > 1.0 + 1e-12)
        throw InvalidParam("boolean function value outside [-1,1]");
  }

  double at_all_ones() const { return table[(1ULL << n) - 1]; }
};

// Coefficients indexed by the subset mask S.
struct FourierSpectrum {
  int n = 0;
  std::vector<double> coeff;
};

namespace detail {

// In-place butterfly: a[S] <- sum_b a[b] (-1)^popcount(S & b).
inline void wht(std::vector<double>& a) {
  for (std::size_t len = 1; len < a.size(); len <<= 1)
    for (std::size_t i = 0; i < a.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        const double u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
}

}  // namespace detail

// hat{h}(S) = 2^{-n} sum_z h(z) prod_{i in S} z_i. With the bitmask
// convention, chi_S(z(b)) = (-1)^{|S|} (-1)^{popcount(S & b)}.
inline FourierSpectrum fourier_transform(const BooleanFunction& h) {
  FourierSpectrum sp;
  sp.n = h.n;
  sp.coeff = h.table;
  detail::wht(sp.coeff);
  const double scale = 1.0 / static_cast<double>(1ULL << h.n);
  for (std::size_t S = 0; S < sp.coeff.size(); ++S) {
    sp.coeff[S] *= scale;
    if (std::popcount(S) & 1) sp.coeff[S] = -sp.coeff[S];
  }
  return sp;
}

inline BooleanFunction inverse_transform(const FourierSpectrum& sp) {
  std::vector<double> a = sp.coeff;
  for (std::size_t S = 0; S < a.size(); ++S)
    if (std::popcount(S) & 1) a[S] = -a[S];
  detail::wht(a);
  for (double& v : a) v = std::clamp(v, -1.0, 1.0);
  return BooleanFunction(sp.n, std::move(a));
}

// ---------------------------------------------------------------------------
// The three application extensions

// h(z) = p sum_i w_i (z_i + 1)/2 I[t_i >= p].
inline BooleanFunction extension_lottery(std::span<const double> t,
                                         const SimplexVector& w, double p) {
  const int n = w.dimension();
  if (static_cast<int>(t.size()) != n)
    throw DimensionMismatch("extension_lottery: t/w size mismatch");
  std::vector<double> table(1ULL << n, 0.0);
  for (std::size_t b = 0; b < table.size(); ++b) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      if ((b >> i & 1) && t[static_cast<std::size_t>(i)] >= p) acc += w[i];
    table[b] = p * acc;
  }
  return BooleanFunction(n, std::move(table));
}

// h(z) = (1/n) sum_i I[t_i >= 0] (z_i + 1)/2.
inline BooleanFunction extension_vote_sum(std::span<const double> t) {
  const int n = static_cast<int>(t.size());
  std::vector<double> table(1ULL << n, 0.0);
  for (std::size_t b = 0; b < table.size(); ++b) {
    int acc = 0;
    for (int i = 0; i < n; ++i)
      if ((b >> i & 1) && t[static_cast<std::size_t>(i)] >= 0.0) acc += 1;
    table[b] = static_cast<double>(acc) / n;
  }
  return BooleanFunction(n, std::move(table));
}

// h(z) = t_j (z_i + 1)/2 (z_j + 1)/2 where i, j index the largest and
// second-largest entries of t, ties broken toward the lowest index.
inline BooleanFunction extension_max2(std::span<const double> t) {
  const int n = static_cast<int>(t.size());
  if (n < 2) throw InvalidShape("extension_max2: n >= 2 required");
  int i = 0;
  for (int a = 1; a < n; ++a)
    if (t[static_cast<std::size_t>(a)] > t[static_cast<std::size_t>(i)]) i = a;
  int j = i == 0 ? 1 : 0;
  for (int a = 0; a < n; ++a) {
    if (a == i) continue;
    if (t[static_cast<std::size_t>(a)] > t[static_cast<std::size_t>(j)]) j = a;
  }
  std::vector<double> table(1ULL << n, 0.0);
  const std::uint64_t need = (1ULL << i) | (1ULL << j);
  for (std::size_t b = 0; b < table.size(); ++b)
    if ((b & need) == need) table[b] = t[static_cast<std::size_t>(j)];
  return BooleanFunction(n, std::move(table));
}

// ---------------------------------------------------------------------------
// Checkers

struct ExtensionReport {
  double anchor_error = 0.0;  // |h(1) - g(t)|
  double worst_slack = 0.0;   // min_z (worst-corruption bound - h(z))
  bool ok = false;
};

// Verifies h(1) = g(t) and h(z) <= min{g(t') : t' corrupts t on I^-(z)} for
// every z, with I^-(z) the coordinates where z_i = -1.
inline ExtensionReport check_extension(const Objective& g,
                                       std::span<const double> t,
                                       const BooleanFunction& h,
                                       const WorstCorruption& wc,
                                       double tol = 1e-9) {
  if (g.n != h.n || static_cast<int>(t.size()) != g.n)
    throw DimensionMismatch("check_extension: arity mismatch");
  ExtensionReport rep;
  rep.anchor_error = std::abs(h.at_all_ones() - g.evaluate(t));
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < h.table.size(); ++b) {
    std::vector<int> neg;
    for (int i = 0; i < h.n; ++i)
      if (!(b >> i & 1)) neg.push_back(i);
    const double bound = wc.evaluate(t, neg);
    rep.worst_slack = std::min(rep.worst_slack, bound - h.table[b]);
  }
  rep.ok = rep.anchor_error <= tol && rep.worst_slack >= -tol;
  return rep;
}

struct StabilityReport {
  bool ok = false;
  double min_coeff = 0.0;        // most negative coefficient
  double max_high_degree = 0.0;  // largest |hat{h}(S)| with |S| > k
  std::vector<std::uint64_t> violations;
};

// Def: hat{h}(S) >= 0 for all S and hat{h}(S) = 0 whenever |S| > k.
inline StabilityReport check_algebraic_stability(const FourierSpectrum& sp,
                                                 int k, double tol = 1e-10) {
  if (k < 0) throw InvalidParam("check_algebraic_stability: k >= 0");
  StabilityReport rep;
  rep.ok = true;
  for (std::size_t S = 0; S < sp.coeff.size(); ++S) {
    const double c = sp.coeff[S];
    rep.min_coeff = std::min(rep.min_coeff, c);
    if (c < -tol) {
      rep.ok = false;
      rep.violations.push_back(S);
      continue;
    }
    if (std::popcount(S) > static_cast<int>(k)) {
      rep.max_high_degree = std::max(rep.max_high_degree, std::abs(c));
      if (std::abs(c) > tol) {
        rep.ok = false;
        rep.violations.push_back(S);
      }
    }
  }
  return rep;
}

// Smallest integer s with s > ln(2k/eps) / delta^2 (natural log), the sample
// bound available to algebraically k-stable objectives.
inline int sample_size_algebraic(int k, double eps, double delta) {
  if (k < 1 || !(eps > 0.0 && eps <= 1.0) || !(delta > 0.0 && delta <= 1.0))
    throw InvalidParam("sample_size_algebraic: bad params");
  const double v = std::log(2.0 * k / eps) / (delta * delta);
  return std::max(1, static_cast<int>(std::floor(v)) + 1);
}

}  // namespace mixsel
