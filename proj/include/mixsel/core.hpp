#pragma once

// Shared numeric types: simplex vectors, s-uniform count vectors, bounded
// matrices, seeded randomness, and the s-uniform enumeration machinery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixsel {

inline constexpr unsigned long long kDefaultCap = 2'000'000ULL;

// ---------------------------------------------------------------------------
// Errors

struct CapExceeded : std::runtime_error {
  unsigned long long count;
  explicit CapExceeded(unsigned long long n)
      : std::runtime_error("candidate count " + std::to_string(n) +
                           " exceeds the enumeration cap"),
        count(n) {}
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParam : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidShape : InvalidParam {
  using InvalidParam::InvalidParam;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invariant violations; these indicate a bug, not bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct NoEquilibriumFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// SimplexVector

class SimplexVector {
 public:
  // Validates nonnegativity (tolerance 1e-12) and renormalizes when the entry
  // sum deviates from 1 by at most 1e-9; rejects otherwise.
  explicit SimplexVector(std::vector<double> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidParam("simplex vector must be nonempty");
    double sum = 0.0;
    for (double& e : entries_) {
      if (e < -1e-12) throw InvalidParam("negative simplex entry");
      if (e < 0.0) e = 0.0;
      sum += e;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw InvalidParam("simplex entries sum to " + std::to_string(sum));
    if (sum != 1.0)
      for (double& e : entries_) e /= sum;
  }

  static SimplexVector point_mass(int m, int j) {
    std::vector<double> e(static_cast<std::size_t>(m), 0.0);
    e.at(static_cast<std::size_t>(j)) = 1.0;
    return SimplexVector(std::move(e));
  }

  int dimension() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }
  std::span<const double> span() const { return entries_; }

 private:
  std::vector<double> entries_;
};

// ---------------------------------------------------------------------------
// SUniformVector

// Integer-count representation of an s-uniform distribution: the average of a
// multiset of s standard basis vectors.
class SUniformVector {
 public:
  SUniformVector(std::vector<int> counts, int s)
      : counts_(std::move(counts)), s_(s) {
    if (s_ <= 0) throw InvalidParam("s must be positive");
    long long total = 0;
    for (int c : counts_) {
      if (c < 0) throw InvalidParam("negative count");
      total += c;
    }
    if (total != s_) throw InvalidParam("counts must sum to s");
  }

  int dimension() const { return static_cast<int>(counts_.size()); }
  int s() const { return s_; }
  const std::vector<int>& counts() const { return counts_; }

  SimplexVector to_simplex() const {
    std::vector<double> e(counts_.size());
    for (std::size_t j = 0; j < counts_.size(); ++j)
      e[j] = static_cast<double>(counts_[j]) / s_;
    return SimplexVector(std::move(e));
  }

 private:
  std::vector<int> counts_;
  int s_;
};

// ---------------------------------------------------------------------------
// BoundedMatrix

enum class Domain { Signed, Unsigned };  // entry range [-1,1] vs [0,1]

inline double domain_lo(Domain d) { return d == Domain::Signed ? -1.0 : 0.0; }

class BoundedMatrix {
 public:
  BoundedMatrix(int rows, int cols, std::vector<double> data, Domain domain)
      : rows_(rows), cols_(cols), data_(std::move(data)), domain_(domain) {
    if (rows_ <= 0 || cols_ <= 0) throw InvalidShape("matrix must be nonempty");
    if (data_.size() != static_cast<std::size_t>(rows_) * cols_)
      throw InvalidShape("matrix data size mismatch");
    const double lo = domain_lo(domain_);
    for (double v : data_)
      if (v < lo || v > 1.0)
        throw InvalidParam("matrix entry " + std::to_string(v) +
                           " outside declared domain");
  }

  static BoundedMatrix identity(int n, Domain domain = Domain::Unsigned) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 1.0;
    return BoundedMatrix(n, n, std::move(d), domain);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Domain domain() const { return domain_; }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const std::vector<double>& data() const { return data_; }

 private:
  int rows_, cols_;
  std::vector<double> data_;
  Domain domain_;
};

// t = A x, length rows(A).
inline std::vector<double> mat_vec(const BoundedMatrix& A,
                                   const SimplexVector& x) {
  if (A.cols() != x.dimension())
    throw DimensionMismatch("mat_vec: matrix has " + std::to_string(A.cols()) +
                            " columns, vector has " +
                            std::to_string(x.dimension()));
  std::vector<double> t(static_cast<std::size_t>(A.rows()), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < A.cols(); ++j) acc += A(i, j) * x[j];
    t[static_cast<std::size_t>(i)] = acc;
  }
  return t;
}

// Sparse variant for s-uniform x: only nonzero counts contribute.
inline std::vector<double> mat_vec(const BoundedMatrix& A,
                                   const SUniformVector& x) {
  if (A.cols() != x.dimension()) throw DimensionMismatch("mat_vec: shape");
  std::vector<double> t(static_cast<std::size_t>(A.rows()), 0.0);
  const auto& c = x.counts();
  for (int j = 0; j < A.cols(); ++j) {
    if (c[static_cast<std::size_t>(j)] == 0) continue;
    const double w = static_cast<double>(c[static_cast<std::size_t>(j)]) / x.s();
    for (int i = 0; i < A.rows(); ++i) t[static_cast<std::size_t>(i)] += A(i, j) * w;
  }
  return t;
}

// ---------------------------------------------------------------------------
// SeededRng

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic pseudorandom stream; identical seed gives a byte-exact
// identical stream. Single-consumer: parallel code derives child seeds.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits; avoids implementation-defined
  // std::uniform_real_distribution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in [0, bound), rejection-sampled.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParam("next_below(0)");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  int next_index(int bound) {
    return static_cast<int>(next_below(static_cast<std::uint64_t>(bound)));
  }

  // Draws an index from a simplex distribution by CDF inversion.
  int draw(const SimplexVector& x) {
    const double u = next_double();
    double acc = 0.0;
    for (int j = 0; j + 1 < x.dimension(); ++j) {
      acc += x[j];
      if (u < acc) return j;
    }
    return x.dimension() - 1;
  }

  // Deterministic child stream for worker `index`; independent of call order.
  SeededRng child(std::uint64_t index) const {
    return SeededRng(detail::splitmix64(seed_ ^ (0xa076'1d64'78bd'642fULL +
                                                 index * 0x9ddf'ea08'eb38'2d69ULL)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// s-uniform enumeration

// C(m+s-1, s), the number of size-s multisets over [m]; saturates at
// ULLONG_MAX on overflow.
inline unsigned long long multiset_count(int m, int s) {
  if (m <= 0 || s <= 0) throw InvalidParam("multiset_count: m, s must be positive");
  // C(m+s-1, s) = C(m+s-1, m-1); multiply by the smaller upper index.
  const int k = std::min(s, m - 1);
  const long long n = static_cast<long long>(m) + s - 1;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<unsigned long long>::max())
      return std::numeric_limits<unsigned long long>::max();
  }
  return static_cast<unsigned long long>(r);
}

// First count vector in ascending lexicographic order: (0,...,0,s).
inline std::vector<int> first_count_vector(int m, int s) {
  std::vector<int> c(static_cast<std::size_t>(m), 0);
  c.back() = s;
  return c;
}

// Advances to the lexicographic successor; returns false past (s,0,...,0).
inline bool next_count_vector(std::vector<int>& c) {
  const int m = static_cast<int>(c.size());
  if (m == 1) return false;
  // Rightmost position j < m-1 with mass strictly to its right.
  int tail = c[static_cast<std::size_t>(m - 1)];
  for (int j = m - 2; j >= 0; --j) {
    if (tail > 0) {
      c[static_cast<std::size_t>(j)] += 1;
      for (int t = j + 1; t < m - 1; ++t) c[static_cast<std::size_t>(t)] = 0;
      c[static_cast<std::size_t>(m - 1)] = tail - 1;
      return true;
    }
    tail += c[static_cast<std::size_t>(j)];
  }
  return false;
}

// Count vector at position `rank` (0-based) of the ascending order.
inline std::vector<int> unrank_count_vector(int m, int s,
                                            unsigned long long rank) {
  std::vector<int> c(static_cast<std::size_t>(m), 0);
  int rem = s;
  for (int j = 0; j < m - 1; ++j) {
    for (int v = 0; v <= rem; ++v) {
      // Completions with c[j] = v over the remaining m-1-j coordinates.
      const unsigned long long cnt =
          (rem - v == 0) ? 1ULL : multiset_count(m - 1 - j, rem - v);
      if (rank < cnt) {
        c[static_cast<std::size_t>(j)] = v;
        rem -= v;
        break;
      }
      rank -= cnt;
    }
  }
  c[static_cast<std::size_t>(m - 1)] = rem;
  return c;
}

// Streams every size-s multiset over [m] exactly once, ascending lexicographic.
template <typename Fn>
void for_each_s_uniform(int m, int s, unsigned long long cap, Fn&& fn) {
  const unsigned long long total = multiset_count(m, s);
  if (total > cap) throw CapExceeded(total);
  std::vector<int> c = first_count_vector(m, s);
  do {
    fn(static_cast<const std::vector<int>&>(c));
  } while (next_count_vector(c));
}

inline std::vector<SUniformVector> enumerate_s_uniform(
    int m, int s, unsigned long long cap = kDefaultCap) {
  std::vector<SUniformVector> out;
  for_each_s_uniform(m, s, cap,
                     [&](const std::vector<int>& c) { out.emplace_back(c, s); });
  return out;
}

// Empirical distribution of s i.i.d. samples from x.
inline SUniformVector empirical_distribution(const SimplexVector& x, int s,
                                             SeededRng& rng) {
  if (s < 1) throw InvalidParam("empirical_distribution: s must be >= 1");
  std::vector<int> counts(static_cast<std::size_t>(x.dimension()), 0);
  for (int i = 0; i < s; ++i) counts[static_cast<std::size_t>(rng.draw(x))] += 1;
  return SUniformVector(std::move(counts), s);
}

}  // namespace mixsel
