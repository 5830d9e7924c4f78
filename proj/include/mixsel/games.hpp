#pragma once

// Bayesian normal-form game signaling: approximate-equilibrium checks,
// g_eps evaluation by s-uniform profile enumeration, the bi-criteria
// quasi-polynomial scheme, and the zero-sum fast path.

#include <thread>

#include "mixsel/core.hpp"
#include "mixsel/lp.hpp"
#include "mixsel/objectives.hpp"
#include "mixsel/signaling.hpp"

namespace mixsel {

// ---------------------------------------------------------------------------
// Tensors and profiles

// k-dimensional payoff table, n actions per axis, entries in [-1,1],
// row-major (last axis fastest).
struct Tensor {
  int k = 0, n = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int k_, int n_, std::vector<double> d)
      : k(k_), n(n_), data(std::move(d)) {
    if (k < 1 || k > 3) throw InvalidShape("tensor: 1 <= k <= 3 required");
    if (n < 1) throw InvalidShape("tensor: n >= 1 required");
    std::size_t want = 1;
    for (int i = 0; i < k; ++i) want *= static_cast<std::size_t>(n);
    if (data.size() != want) throw InvalidShape("tensor: data size mismatch");
    for (double v : data)
      if (v < -1.0 || v > 1.0)
        throw InvalidParam("tensor entry outside [-1,1]");
  }

  std::size_t cells() const { return data.size(); }
};

inline unsigned long long pow_ull(int base, int exp) {
  unsigned long long r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<unsigned long long>(base);
  return r;
}

struct MixedProfile {
  std::vector<SimplexVector> strategies;
  int s = 0;  // 0 when not s-uniform
};

// Multilinear expectation T(x_1, ..., x_k).
inline double eval_tensor(const Tensor& T, const MixedProfile& profile) {
  if (static_cast<int>(profile.strategies.size()) != T.k)
    throw DimensionMismatch("eval_tensor: profile arity mismatch");
  for (const auto& x : profile.strategies)
    if (x.dimension() != T.n)
      throw DimensionMismatch("eval_tensor: strategy dimension mismatch");
  double acc = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(T.k), 0);
  for (std::size_t cell = 0; cell < T.cells(); ++cell) {
    std::size_t rem = cell;
    double prob = 1.0;
    for (int i = T.k - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % T.n);
      rem /= static_cast<std::size_t>(T.n);
      prob *= profile.strategies[static_cast<std::size_t>(i)]
                                [idx[static_cast<std::size_t>(i)]];
    }
    if (prob != 0.0) acc += prob * T.data[cell];
  }
  return acc;
}

// T with player i's strategy replaced by the pure action a.
inline double eval_tensor_pure(const Tensor& T, const MixedProfile& profile,
                               int player, int action) {
  double acc = 0.0;
  for (std::size_t cell = 0; cell < T.cells(); ++cell) {
    std::size_t rem = cell;
    double prob = 1.0;
    bool match = true;
    for (int i = T.k - 1; i >= 0; --i) {
      const int ai = static_cast<int>(rem % T.n);
      rem /= static_cast<std::size_t>(T.n);
      if (i == player) {
        if (ai != action) {
          match = false;
          break;
        }
      } else {
        prob *= profile.strategies[static_cast<std::size_t>(i)][ai];
      }
    }
    if (match && prob != 0.0) acc += prob * T.data[cell];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Bayesian games

struct BayesianNFG {
  int k = 0, n = 0, m = 0;
  std::vector<std::vector<Tensor>> payoffs;  // [state][player]
  std::vector<Tensor> objective;             // [state]
  SimplexVector prior;

  BayesianNFG(std::vector<std::vector<Tensor>> pay, std::vector<Tensor> obj,
              SimplexVector lambda)
      : payoffs(std::move(pay)), objective(std::move(obj)),
        prior(std::move(lambda)) {
    m = static_cast<int>(payoffs.size());
    if (m == 0 || static_cast<int>(objective.size()) != m)
      throw InvalidShape("game: need one payoff set and objective per state");
    if (prior.dimension() != m)
      throw DimensionMismatch("game: prior/state count mismatch");
    k = static_cast<int>(payoffs.front().size());
    if (k < 1 || k > 3) throw InvalidShape("game: 1 <= k <= 3 players");
    n = payoffs.front().front().n;
    for (int th = 0; th < m; ++th) {
      if (static_cast<int>(payoffs[static_cast<std::size_t>(th)].size()) != k)
        throw InvalidShape("game: ragged player counts");
      for (const auto& T : payoffs[static_cast<std::size_t>(th)])
        if (T.k != k || T.n != n) throw InvalidShape("game: tensor shape");
      const auto& F = objective[static_cast<std::size_t>(th)];
      if (F.k != k || F.n != n) throw InvalidShape("game: objective shape");
    }
  }
};

struct CompleteGame {
  std::vector<Tensor> payoffs;  // one per player
  Tensor objective;
};

// Entrywise expectation under the posterior mu.
inline CompleteGame posterior_game(const BayesianNFG& game,
                                   const SimplexVector& mu) {
  if (mu.dimension() != game.m)
    throw DimensionMismatch("posterior_game: posterior dimension");
  CompleteGame out;
  auto mix = [&](auto pick) {
    std::vector<double> d(pick(0).cells(), 0.0);
    for (int th = 0; th < game.m; ++th) {
      const double w = mu[th];
      if (w == 0.0) continue;
      const auto& src = pick(th).data;
      for (std::size_t c = 0; c < d.size(); ++c) d[c] += w * src[c];
    }
    for (double& v : d) v = std::clamp(v, -1.0, 1.0);
    return Tensor(game.k, game.n, std::move(d));
  };
  for (int i = 0; i < game.k; ++i)
    out.payoffs.push_back(mix([&](int th) -> const Tensor& {
      return game.payoffs[static_cast<std::size_t>(th)][static_cast<std::size_t>(i)];
    }));
  out.objective = mix([&](int th) -> const Tensor& {
    return game.objective[static_cast<std::size_t>(th)];
  });
  return out;
}

// ---------------------------------------------------------------------------
// Equilibrium checking

enum class EqKind { NE, WSNE };

struct EquilibriumCertificate {
  MixedProfile profile;
  double eps = 0.0;
  EqKind kind = EqKind::NE;
  std::vector<double> regrets;  // per player
  double max_regret = 0.0;
};

struct Violation {
  int player = -1;
  int action = -1;  // the profitable deviation t_i
  double gain = 0.0;
};

struct EquilibriumCheck {
  double max_regret = 0.0;
  std::vector<double> regrets;
  std::optional<Violation> violation;  // empty iff profile is an eps-eq
};

// NE regret: best pure deviation gain over the mixed payoff. WSNE regret:
// worst supported pure strategy against the best response.
inline EquilibriumCheck check_equilibrium(const std::vector<Tensor>& payoffs,
                                          const MixedProfile& profile,
                                          double eps, EqKind kind) {
  const int k = static_cast<int>(payoffs.size());
  if (static_cast<int>(profile.strategies.size()) != k)
    throw DimensionMismatch("check_equilibrium: profile arity");
  EquilibriumCheck out;
  for (int i = 0; i < k; ++i) {
    const Tensor& A = payoffs[static_cast<std::size_t>(i)];
    std::vector<double> pure(static_cast<std::size_t>(A.n));
    double best = -std::numeric_limits<double>::infinity();
    int best_action = 0;
    for (int a = 0; a < A.n; ++a) {
      pure[static_cast<std::size_t>(a)] = eval_tensor_pure(A, profile, i, a);
      if (pure[static_cast<std::size_t>(a)] > best) {
        best = pure[static_cast<std::size_t>(a)];
        best_action = a;
      }
    }
    double regret;
    int witness = best_action;
    if (kind == EqKind::NE) {
      regret = best - eval_tensor(A, profile);
    } else {
      regret = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < A.n; ++a) {
        if (profile.strategies[static_cast<std::size_t>(i)][a] <= 0.0) continue;
        const double r = best - pure[static_cast<std::size_t>(a)];
        if (r > regret) {
          regret = r;
          witness = best_action;
        }
      }
    }
    regret = std::max(0.0, regret);
    out.regrets.push_back(regret);
    if (regret > out.max_regret) out.max_regret = regret;
    if (regret > eps + 1e-9 && !out.violation)
      out.violation = Violation{i, witness, regret};
  }
  return out;
}

inline EquilibriumCertificate make_certificate(
    const std::vector<Tensor>& payoffs, MixedProfile profile, double eps,
    EqKind kind) {
  auto chk = check_equilibrium(payoffs, profile, eps, kind);
  if (chk.violation)
    throw InvalidParam("make_certificate: profile is not an eps-equilibrium");
  return EquilibriumCertificate{std::move(profile), eps, kind,
                                std::move(chk.regrets), chk.max_regret};
}

// ---------------------------------------------------------------------------
// g_eps over s-uniform profiles

// r(eps) = 3 (k+1)^2 ln((k+1)^2 n) / eps^2; the support bound for g_eps is
// ceil(r(eps/4)).
inline double r_function(double eps, int n, int k) {
  if (eps <= 0.0 || n < 1 || k < 1) throw InvalidParam("r_function: bad params");
  const double kk = static_cast<double>(k + 1) * (k + 1);
  return 3.0 * kk * std::log(kk * n) / (eps * eps);
}

inline int support_bound(double eps, int n, int k) {
  return static_cast<int>(std::ceil(r_function(eps / 4.0, n, k)));
}

struct GEpsResult {
  double value = 0.0;
  EquilibriumCertificate best;
  unsigned long long profiles_checked = 0;
  unsigned long long equilibria_found = 0;
};

// Maximizes G over all s-uniform eps-equilibria of the complete-information
// game. Deterministic for any thread count (lexicographic tie-break on the
// profile index tuple).
inline GEpsResult g_eps(const std::vector<Tensor>& payoffs, const Tensor& G,
                        double eps, EqKind kind, int s,
                        unsigned long long cap = kDefaultCap, int threads = 1) {
  const int k = static_cast<int>(payoffs.size());
  if (k < 1 || k > 3) throw InvalidShape("g_eps: 1 <= k <= 3 players");
  const int n = G.n;
  if (G.k != k) throw DimensionMismatch("g_eps: objective arity");
  if (s < 1) throw InvalidParam("g_eps: s >= 1 required");
  const unsigned long long per = multiset_count(n, s);
  unsigned long long total = 1;
  for (int i = 0; i < k; ++i) {
    if (per != 0 && total > cap / per + 1) throw CapExceeded(cap + 1);
    total *= per;
  }
  if (total > cap) throw CapExceeded(total);

  std::vector<std::vector<int>> counts;
  counts.reserve(static_cast<std::size_t>(per));
  {
    std::vector<int> c = first_count_vector(n, s);
    do {
      counts.push_back(c);
    } while (next_count_vector(c));
  }
  const unsigned long long P = counts.size();

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    unsigned long long rank = 0;
    MixedProfile profile;
    unsigned long long found = 0;
  };
  auto scan = [&](unsigned long long lo, unsigned long long hi, Best& best) {
    for (unsigned long long r = lo; r < hi; ++r) {
      MixedProfile prof;
      prof.s = s;
      unsigned long long rem = r;
      for (int i = k - 1; i >= 0; --i) {
        prof.strategies.insert(
            prof.strategies.begin(),
            SUniformVector(counts[static_cast<std::size_t>(rem % P)], s)
                .to_simplex());
        rem /= P;
      }
      auto chk = check_equilibrium(payoffs, prof, eps, kind);
      if (chk.violation) continue;
      best.found += 1;
      const double v = eval_tensor(G, prof);
      if (v > best.value || (v == best.value && r < best.rank) ||
          best.profile.strategies.empty()) {
        best.value = v;
        best.rank = r;
        best.profile = std::move(prof);
      }
    }
  };

  const int workers = std::max(
      1, std::min<int>(threads,
                       static_cast<int>(std::min<unsigned long long>(total, 64))));
  std::vector<Best> results(static_cast<std::size_t>(workers));
  if (workers == 1) {
    scan(0, total, results.front());
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(scan, total * static_cast<unsigned long long>(w) / workers,
                        total * static_cast<unsigned long long>(w + 1) / workers,
                        std::ref(results[static_cast<std::size_t>(w)]));
    for (auto& th : pool) th.join();
  }
  Best best;
  unsigned long long found = 0;
  for (auto& r : results) {
    found += r.found;
    if (r.profile.strategies.empty()) continue;
    if (r.value > best.value ||
        (r.value == best.value && r.rank < best.rank) ||
        best.profile.strategies.empty()) {
      best.value = r.value;
      best.rank = r.rank;
      best.profile = std::move(r.profile);
    }
  }
  if (best.profile.strategies.empty())
    throw NoEquilibriumFound(
        "no s-uniform eps-equilibrium found (s below the support bound?)");
  GEpsResult res;
  res.value = best.value;
  res.best = make_certificate(payoffs, std::move(best.profile), eps, kind);
  res.profiles_checked = total;
  res.equilibria_found = found;
  return res;
}

// ---------------------------------------------------------------------------
// Game signaling (bi-criteria)

struct GameSignalingResult {
  SignalingScheme scheme;
  double value = 0.0;      // sum of nu * g_eps over signals
  double guarantee = 0.0;  // eps: additive gap to the exact-equilibrium OPT
  std::vector<EquilibriumCertificate> certificates;  // one per signal
  int s_posteriors = 0;
  int s_profiles = 0;
};

namespace detail {

// Stacks every tensor cell ((k+1) n^k rows, one per payoff/objective entry)
// as a signed matrix over states, so posteriors map to complete games via a
// single mat-vec.
inline BoundedMatrix stack_game(const BayesianNFG& game) {
  const std::size_t cells = game.payoffs.front().front().cells();
  const std::size_t rows = cells * static_cast<std::size_t>(game.k + 1);
  std::vector<double> data(rows * static_cast<std::size_t>(game.m));
  for (int th = 0; th < game.m; ++th) {
    std::size_t row = 0;
    for (int i = 0; i < game.k; ++i)
      for (double v :
           game.payoffs[static_cast<std::size_t>(th)][static_cast<std::size_t>(i)].data)
        data[row++ * static_cast<std::size_t>(game.m) +
             static_cast<std::size_t>(th)] = v;
    for (double v : game.objective[static_cast<std::size_t>(th)].data)
      data[row++ * static_cast<std::size_t>(game.m) +
           static_cast<std::size_t>(th)] = v;
  }
  return BoundedMatrix(static_cast<int>(rows), game.m, std::move(data),
                       Domain::Signed);
}

inline CompleteGame unstack_game(int k, int n, std::span<const double> t) {
  const std::size_t cells = static_cast<std::size_t>(pow_ull(n, k));
  if (t.size() != cells * static_cast<std::size_t>(k + 1))
    throw DimensionMismatch("unstack_game: input size");
  CompleteGame g;
  auto clamp_cells = [&](std::span<const double> src) {
    std::vector<double> d(src.begin(), src.end());
    for (double& v : d) v = std::clamp(v, -1.0, 1.0);
    return Tensor(k, n, std::move(d));
  };
  for (int i = 0; i < k; ++i)
    g.payoffs.push_back(
        clamp_cells(t.subspan(static_cast<std::size_t>(i) * cells, cells)));
  g.objective =
      clamp_cells(t.subspan(static_cast<std::size_t>(k) * cells, cells));
  return g;
}

}  // namespace detail

// Bi-criteria scheme: alpha = eps/(4(k+1)n^k) against the 2(k+1)n^k-stable
// exact-equilibrium objective, delta = eps/4, LP objective g_eps, rho = eps/2.
// s_profiles overrides the support bound for desk-scale runs; the guarantee
// is only asserted when s_profiles >= support_bound(eps, n, k).
inline GameSignalingResult game_signaling(const BayesianNFG& game, double eps,
                                          EqKind kind, int s_profiles = 0,
                                          unsigned long long cap = kDefaultCap,
                                          int threads = 1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParam("eps must be in (0, 1]");
  const int k = game.k, n = game.n;
  const double nk = static_cast<double>(pow_ull(n, k));
  const double g_beta = 2.0 * (k + 1) * nk;
  const double alpha = std::min(1.0, eps / (4.0 * (k + 1) * nk));
  const double delta = eps / 4.0;
  const int sb = support_bound(eps, n, k);
  const int sp = s_profiles > 0 ? s_profiles : sb;

  Objective h;
  h.name = "g_eps";
  h.n = static_cast<int>(pow_ull(n, k)) * (k + 1);
  h.beta = g_beta;
  h.lipschitz = std::nullopt;
  h.domain = Domain::Signed;
  h.evaluate = [k, n, eps, kind, sp, cap](std::span<const double> t) {
    const auto g = detail::unstack_game(k, n, t);
    return g_eps(g.payoffs, g.objective, eps, kind, sp, cap, 1).value;
  };

  const auto W = detail::stack_game(game);
  auto res = solve_signaling_bicriteria(W, g_beta, h, game.prior, alpha, delta,
                                        /*rho=*/eps / 2.0, cap, threads);

  GameSignalingResult out;
  out.scheme = std::move(res.scheme);
  out.value = res.value.value;
  out.guarantee = sp >= sb ? eps : std::numeric_limits<double>::quiet_NaN();
  out.s_posteriors = res.s;
  out.s_profiles = sp;
  for (const auto& sig : out.scheme.signals) {
    const auto g = posterior_game(game, sig.posterior);
    out.certificates.push_back(
        g_eps(g.payoffs, g.objective, eps, kind, sp, cap, threads).best);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zero-sum fast path

struct ZeroSumSolution {
  double value = 0.0;
  SimplexVector x;  // row maxmin
  SimplexVector y;  // column minmax
};

namespace detail {

// Row player's maxmin of the n x n matrix B (entries in [-1,1]); LP over
// (x, u, slacks) with u = value + 1 >= 0.
inline std::pair<double, SimplexVector> maxmin_lp(int n,
                                                  std::span<const double> B) {
  StandardFormLP lp;
  const int M = 2 * n + 1;  // x_1..n, u, s_1..n
  lp.objective.assign(static_cast<std::size_t>(M), 0.0);
  lp.objective[static_cast<std::size_t>(n)] = 1.0;
  lp.rows.assign(static_cast<std::size_t>(n + 1),
                 std::vector<double>(static_cast<std::size_t>(M), 0.0));
  lp.rhs.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (int j = 0; j < n; ++j) {
    auto& row = lp.rows[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i)
      row[static_cast<std::size_t>(i)] =
          B[static_cast<std::size_t>(i) * n + j] + 1.0;
    row[static_cast<std::size_t>(n)] = -1.0;
    row[static_cast<std::size_t>(n + 1 + j)] = -1.0;
  }
  for (int i = 0; i < n; ++i)
    lp.rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] = 1.0;
  lp.rhs[static_cast<std::size_t>(n)] = 1.0;
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw InternalError("zero-sum LP must be feasible and bounded");
  std::vector<double> x(sol.x.begin(), sol.x.begin() + n);
  return {sol.value - 1.0, SimplexVector(std::move(x))};
}

}  // namespace detail

inline ZeroSumSolution zero_sum_value(int n, std::span<const double> B) {
  if (n < 1 || B.size() != static_cast<std::size_t>(n) * n)
    throw InvalidShape("zero_sum_value: need an n x n matrix");
  auto [v, x] = detail::maxmin_lp(n, B);
  // Column player: maxmin of -B^T recovers y with value -v.
  std::vector<double> neg_bt(B.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      neg_bt[static_cast<std::size_t>(j) * n + i] =
          -B[static_cast<std::size_t>(i) * n + j];
  auto [vy, y] = detail::maxmin_lp(n, neg_bt);
  if (std::abs(v + vy) > 1e-7)
    throw NumericalFailure("zero-sum duality gap " + std::to_string(v + vy));
  return ZeroSumSolution{v, std::move(x), std::move(y)};
}

inline ZeroSumSolution zero_sum_value(const BoundedMatrix& B) {
  if (B.rows() != B.cols()) throw InvalidShape("zero_sum_value: square matrix");
  return zero_sum_value(B.rows(), B.data());
}

struct ZeroSumSignalingResult {
  SignalingScheme scheme;
  double value = 0.0;
  double guarantee = 0.0;
  std::vector<ZeroSumSolution> equilibria;  // exact NE per signal
  int s = 0;
};

// Uni-criteria path: g(mu) = value of the posterior zero-sum game, which is
// n^2-stable and 2-Lipschitz; alpha = eps/(4 n^2), delta = eps/4.
inline ZeroSumSignalingResult zero_sum_signaling(
    const std::vector<BoundedMatrix>& states, const SimplexVector& prior,
    double eps, unsigned long long cap = kDefaultCap, int threads = 1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParam("eps must be in (0, 1]");
  if (states.empty()) throw InvalidShape("zero_sum_signaling: no states");
  const int n = states.front().rows();
  for (const auto& A : states)
    if (A.rows() != n || A.cols() != n)
      throw InvalidShape("zero_sum_signaling: states must be square, same n");
  const int m = static_cast<int>(states.size());
  if (prior.dimension() != m)
    throw DimensionMismatch("zero_sum_signaling: prior/state count");

  std::vector<double> data(static_cast<std::size_t>(n) * n * m);
  for (int th = 0; th < m; ++th) {
    const auto& A = states[static_cast<std::size_t>(th)];
    for (int c = 0; c < n * n; ++c)
      data[static_cast<std::size_t>(c) * m + th] = A.data()[static_cast<std::size_t>(c)];
  }
  BoundedMatrix W(n * n, m, std::move(data), Domain::Signed);

  Objective g;
  g.name = "zero_sum";
  g.n = n * n;
  g.beta = static_cast<double>(n) * n;
  g.lipschitz = 2.0;
  g.domain = Domain::Signed;
  g.evaluate = [n](std::span<const double> t) {
    std::vector<double> b(t.begin(), t.end());
    for (double& v : b) v = std::clamp(v, -1.0, 1.0);
    return zero_sum_value(n, b).value;
  };

  const double alpha = std::min(1.0, eps / (4.0 * n * n));
  auto res = solve_signaling(W, g, prior, alpha, eps / 4.0, cap, threads);

  ZeroSumSignalingResult out;
  out.scheme = std::move(res.scheme);
  out.value = res.value.value;
  out.guarantee = res.guarantee;
  out.s = res.s;
  for (const auto& sig : out.scheme.signals) {
    std::vector<double> b(static_cast<std::size_t>(n) * n, 0.0);
    for (int th = 0; th < m; ++th) {
      const double w = sig.posterior[th];
      if (w == 0.0) continue;
      const auto& A = states[static_cast<std::size_t>(th)];
      for (std::size_t c = 0; c < b.size(); ++c) b[c] += w * A.data()[c];
    }
    for (double& v : b) v = std::clamp(v, -1.0, 1.0);
    out.equilibria.push_back(zero_sum_value(n, b));
  }
  return out;
}

}  // namespace mixsel
