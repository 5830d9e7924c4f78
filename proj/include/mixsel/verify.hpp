#pragma once

// Oracle-backed verification routines. Each check pits a solver against an
// independent brute-force oracle (or an exact identity) and returns a
// machine-readable report; the CLI `verify` subcommand and the acceptance
// suite both run these with their own parameters.

#include "mixsel/applications.hpp"
#include "mixsel/core.hpp"
#include "mixsel/fourier.hpp"
#include "mixsel/games.hpp"
#include "mixsel/hardgen.hpp"
#include "mixsel/io.hpp"
#include "mixsel/mixture.hpp"
#include "mixsel/oracles.hpp"
#include "mixsel/signaling.hpp"

namespace mixsel {

struct CheckReport {
  std::string name;
  bool pass = false;
  json details;
};

// ---------------------------------------------------------------------------
// Random instance helpers

inline BoundedMatrix random_matrix(SeededRng& rng, int rows, int cols,
                                   Domain domain) {
  std::vector<double> d(static_cast<std::size_t>(rows) * cols);
  const double lo = domain_lo(domain);
  for (double& v : d) v = rng.next_in(lo, 1.0);
  return BoundedMatrix(rows, cols, std::move(d), domain);
}

inline SimplexVector random_simplex(SeededRng& rng, int m) {
  std::vector<double> e(static_cast<std::size_t>(m));
  double sum = 0.0;
  for (double& v : e) {
    v = -std::log(1.0 - rng.next_double());
    sum += v;
  }
  for (double& v : e) v /= sum;
  return SimplexVector(std::move(e));
}

// ---------------------------------------------------------------------------
// Empirical sampling bound: for random x, the mean of g over empirical
// s-sample distributions of x stays within alpha*beta + c*delta of g(Ax).

inline CheckReport verify_thm21(std::uint64_t seed, int instances = 20,
                                int trials = 10000, double alpha = 0.2,
                                double delta = 0.2) {
  SeededRng root(seed);
  int honored = 0;
  json rows = json::array();
  for (int i = 0; i < instances; ++i) {
    SeededRng rng = root.child(static_cast<std::uint64_t>(i));
    const int n = 2 + rng.next_index(11);  // 2..12
    const int m = 1 + rng.next_index(6);   // 1..6
    Objective obj;
    if (i % 2 == 0)
      obj = obj_mid(n);
    else
      obj = obj_lottery(random_simplex(rng, n));
    const auto A = random_matrix(rng, n, m, obj.domain);
    const auto x = random_simplex(rng, m);
    const double gx = obj.evaluate(mat_vec(A, x));
    const auto [mean, se] =
        estimate_sampled_value(A, obj, x, alpha, delta, trials, rng);
    const double bound = gx - alpha * obj.beta - *obj.lipschitz * delta;
    const bool ok = mean + 3.0 * se >= bound;
    honored += ok;
    rows.push_back({{"objective", obj.name}, {"n", n}, {"m", m},
                    {"g_at_x", gx}, {"mean", mean}, {"stderr", se},
                    {"bound", bound}, {"ok", ok}});
  }
  CheckReport rep;
  rep.name = "thm21";
  rep.pass = honored >= instances - 1;
  rep.details = {{"honored", honored}, {"instances", instances},
                 {"rows", std::move(rows)}};
  return rep;
}

// ---------------------------------------------------------------------------
// PTAS vs grid oracle: solve_mixture never trails grid_optimum(N) by more
// than its own guarantee.

inline CheckReport verify_ptas(std::uint64_t seed, int per_objective = 50,
                               int grid = 60, double alpha = 0.3,
                               double delta = 0.3, int threads = 1) {
  SeededRng root(seed);
  json fails = json::array();
  int total = 0, ok_count = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  const std::vector<std::string> names = {"mid", "lottery", "revenue"};
  for (int which = 0; which < 3; ++which) {
    for (int i = 0; i < per_objective; ++i) {
      SeededRng rng = root.child(static_cast<std::uint64_t>(which * 1000 + i));
      const int m = 2 + rng.next_index(3);  // 2..4
      Objective obj;
      BoundedMatrix A = BoundedMatrix::identity(1);
      if (which == 0) {
        const int n = 2 + rng.next_index(7);
        obj = obj_mid(n);
        A = random_matrix(rng, n, m, obj.domain);
      } else if (which == 1) {
        const int n = 2 + rng.next_index(7);
        obj = obj_lottery(random_simplex(rng, n));
        A = random_matrix(rng, n, m, obj.domain);
      } else {
        const int bidders = 2 + rng.next_index(2);
        const int C = 1 + rng.next_index(2);
        std::vector<BoundedMatrix> supports;
        for (int c = 0; c < C; ++c)
          supports.push_back(random_matrix(rng, bidders, m, Domain::Unsigned));
        obj = obj_revenue(supports, random_simplex(rng, C));
        std::vector<double> stacked;
        for (const auto& V : supports)
          stacked.insert(stacked.end(), V.data().begin(), V.data().end());
        A = BoundedMatrix(bidders * C, m, std::move(stacked), Domain::Unsigned);
      }
      const auto sol = solve_mixture(A, obj, alpha, delta, kDefaultCap, threads);
      const auto oracle = grid_optimum(A, obj, grid);
      const double margin = sol.value - (oracle.value - sol.guarantee);
      worst_margin = std::min(worst_margin, margin);
      total += 1;
      if (margin >= -1e-9) {
        ok_count += 1;
      } else {
        fails.push_back({{"objective", obj.name}, {"instance", i},
                         {"value", sol.value}, {"oracle", oracle.value},
                         {"guarantee", sol.guarantee}});
      }
    }
  }
  CheckReport rep;
  rep.name = "ptas";
  rep.pass = ok_count == total;
  rep.details = {{"ok", ok_count}, {"total", total},
                 {"worst_margin", worst_margin}, {"failures", std::move(fails)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Signaling LP: scheme validity, signal count, and the guarantee against the
// two-signal grid oracle on m = 2 instances.

inline CheckReport verify_signal(std::uint64_t seed, int instances = 20,
                                 int grid = 200, double alpha = 0.35,
                                 double delta = 0.35, int threads = 1) {
  SeededRng root(seed);
  json fails = json::array();
  int ok_count = 0;
  for (int i = 0; i < instances; ++i) {
    SeededRng rng = root.child(static_cast<std::uint64_t>(i));
    const int n = 2 + rng.next_index(5);
    const int m = 2;
    Objective obj = (i % 2 == 0) ? obj_mid(n) : obj_lottery(random_simplex(rng, n));
    const auto A = random_matrix(rng, n, m, obj.domain);
    const auto lambda = random_simplex(rng, m);
    const auto res = solve_signaling(A, obj, lambda, alpha, delta, kDefaultCap,
                                     threads);
    const auto val = validate_scheme(res.scheme, lambda);
    const double oracle = signaling_grid_opt(A, obj, lambda, grid, 2);
    const bool ok = val.valid &&
                    static_cast<int>(res.scheme.signals.size()) <= m + 1 &&
                    res.value.value >= oracle - res.guarantee - 1e-9;
    ok_count += ok;
    if (!ok)
      fails.push_back({{"instance", i}, {"objective", obj.name},
                       {"value", res.value.value}, {"oracle", oracle},
                       {"guarantee", res.guarantee}, {"valid", val.valid},
                       {"signals", res.scheme.signals.size()}});
  }
  CheckReport rep;
  rep.name = "signal";
  rep.pass = ok_count == instances;
  rep.details = {{"ok", ok_count}, {"instances", instances},
                 {"failures", std::move(fails)}};
  return rep;
}

// ---------------------------------------------------------------------------
// The fixed persuasion instance U = [[1,-1]], lambda = (0.3, 0.7).

inline CheckReport verify_persuasion(int threads = 1) {
  BoundedMatrix U(1, 2, {1.0, -1.0}, Domain::Signed);
  const SimplexVector lambda({0.3, 0.7});
  const double oracle =
      signaling_grid_opt(U, obj_vote_sum(1), lambda, 200, 2);
  VotingInstance inst(U, lambda, 0.5, 0.05);
  const auto res = voting_sum_signaling(inst, 0.1, kDefaultCap, threads);
  CheckReport rep;
  rep.name = "persuasion";
  rep.pass = std::abs(oracle - 0.6) <= 1e-9 && res.value_relaxed >= 0.5;
  rep.details = {{"oracle", oracle}, {"value_relaxed", res.value_relaxed},
                 {"signals", res.signaling.scheme.signals.size()},
                 {"s", res.signaling.s}};
  return rep;
}

// ---------------------------------------------------------------------------
// The fixed auction pooling instance V = [[1,0],[0,1]], lambda = (0.5, 0.5).

inline CheckReport verify_auction(int threads = 1) {
  BoundedMatrix V(2, 2, {1.0, 0.0, 0.0, 1.0}, Domain::Unsigned);
  const SimplexVector lambda({0.5, 0.5});
  AuctionInstance inst({V}, SimplexVector({1.0}), lambda);
  const auto obj = obj_revenue(inst.supports, inst.probs);
  const double oracle = signaling_grid_opt(V, obj, lambda, 200, 2);
  const auto res = auction_signaling_explicit(inst, 0.1, kDefaultCap, threads);
  SignalingScheme full_revelation;
  full_revelation.signals.push_back({0.5, SimplexVector::point_mass(2, 0)});
  full_revelation.signals.push_back({0.5, SimplexVector::point_mass(2, 1)});
  const double reveal = evaluate_scheme(full_revelation, V, obj).value;
  CheckReport rep;
  rep.name = "auction";
  rep.pass = std::abs(oracle - 0.5) <= 1e-9 && res.value.value >= 0.4 &&
             reveal == 0.0;
  rep.details = {{"oracle", oracle}, {"value", res.value.value},
                 {"full_revelation", reveal}, {"s", res.s}};
  return rep;
}

// ---------------------------------------------------------------------------
// Stability / Lipschitz property suites

namespace detail {

// Random alpha-light corruption: per-element marginals <= alpha coupled
// through a shared uniform draw (so patterns are correlated, not
// independent), included via a per-element phase shift.
inline std::vector<int> sample_corruption(SeededRng& rng,
                                          const std::vector<double>& marginals,
                                          const std::vector<double>& phases,
                                          double shared) {
  std::vector<int> r;
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    double u = shared + phases[i];
    if (u >= 1.0) u -= 1.0;
    if (u < marginals[i]) r.push_back(static_cast<int>(i));
  }
  (void)rng;
  return r;
}

}  // namespace detail

// Monte Carlo check of Def-style stability: E_R[min-corruption of g] >=
// g(t) - alpha*beta - 3 se, for every objective with a closed-form worst
// corruption. The slope objective is tested on [0,1]^n only.
inline CheckReport verify_stability(std::uint64_t seed, int samples = 10000,
                                    double alpha = 0.1) {
  SeededRng root(seed);
  json rows = json::array();
  bool all_ok = true;

  auto run = [&](const Objective& obj, Domain sample_domain,
                 std::uint64_t salt) {
    SeededRng rng = root.child(salt);
    const auto wc = worst_corruption_for(obj);
    if (!wc) throw InternalError("stability suite: no worst corruption");
    std::vector<double> t(static_cast<std::size_t>(obj.n));
    const double lo = domain_lo(sample_domain);
    for (double& v : t) v = rng.next_in(lo, 1.0);
    const double gt = obj.evaluate(t);
    std::vector<double> marg(t.size()), phase(t.size());
    for (double& v : marg) v = rng.next_in(0.0, alpha);
    for (double& v : phase) v = rng.next_double();
    double sum = 0.0, sumsq = 0.0;
    for (int it = 0; it < samples; ++it) {
      const auto r =
          detail::sample_corruption(rng, marg, phase, rng.next_double());
      const double v = wc->evaluate(t, r);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / samples;
    const double var = std::max(
        0.0, (sumsq - samples * mean * mean) / std::max(1, samples - 1));
    const double se = std::sqrt(var / samples);
    const bool ok = mean >= gt - alpha * obj.beta - 3.0 * se;
    all_ok = all_ok && ok;
    rows.push_back({{"objective", obj.name}, {"g", gt}, {"mean", mean},
                    {"bound", gt - alpha * obj.beta}, {"stderr", se},
                    {"ok", ok}});
  };

  for (int rep = 0; rep < 5; ++rep) {
    const std::uint64_t base = static_cast<std::uint64_t>(rep) * 100;
    SeededRng setup = root.child(base + 99);
    const int n = 4 + setup.next_index(9);
    run(obj_mid(n), Domain::Signed, base + 1);
    run(obj_lottery(random_simplex(setup, n)), Domain::Unsigned, base + 2);
    {
      std::vector<BoundedMatrix> supports = {
          random_matrix(setup, 3, 2, Domain::Unsigned),
          random_matrix(setup, 3, 2, Domain::Unsigned)};
      auto obj = obj_revenue(supports, SimplexVector({0.5, 0.5}));
      run(obj, Domain::Unsigned, base + 3);
    }
    run(obj_vote_sum(n), Domain::Signed, base + 4);
    run(obj_vote_sum_relaxed(n, 0.1), Domain::Signed, base + 5);
    run(obj_vote_thresh(n, 0.5), Domain::Signed, base + 6);
    run(obj_vote_smooth_thresh(n, 0.5, 0.2), Domain::Signed, base + 7);
    run(obj_vote_thresh_relaxed(n, 0.5, 0.2), Domain::Signed, base + 8);
    run(obj_slope(n), Domain::Unsigned, base + 9);
  }

  CheckReport out;
  out.name = "stability";
  out.pass = all_ok;
  out.details = {{"rows", std::move(rows)}};
  return out;
}

inline CheckReport verify_lipschitz(std::uint64_t seed, int samples = 10000) {
  SeededRng root(seed);
  json rows = json::array();
  bool all_ok = true;

  auto run = [&](const Objective& obj, std::uint64_t salt) {
    SeededRng rng = root.child(salt);
    const double c = *obj.lipschitz;
    double worst = 0.0;
    bool ok = true;
    for (int it = 0; it < samples; ++it) {
      const double d = rng.next_in(0.0, 0.3);
      std::vector<double> t(static_cast<std::size_t>(obj.n)),
          u(static_cast<std::size_t>(obj.n));
      const double lo = domain_lo(obj.domain);
      for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = rng.next_in(lo, 1.0);
        u[i] = std::clamp(t[i] + rng.next_in(-d, d), lo, 1.0);
      }
      const double gap = std::abs(obj.evaluate(t) - obj.evaluate(u));
      const double excess = gap - c * d - 1e-9;
      worst = std::max(worst, excess);
      if (excess > 0.0) ok = false;
    }
    all_ok = all_ok && ok;
    rows.push_back({{"objective", obj.name}, {"worst_excess", worst}, {"ok", ok}});
  };

  SeededRng setup = root.child(999);
  const int n = 4 + setup.next_index(9);
  run(obj_mid(n), 1);
  run(obj_lottery(random_simplex(setup, n)), 2);
  {
    std::vector<BoundedMatrix> supports = {
        random_matrix(setup, 3, 2, Domain::Unsigned),
        random_matrix(setup, 3, 2, Domain::Unsigned)};
    run(obj_revenue(supports, SimplexVector({0.5, 0.5})), 3);
  }
  run(obj_clique(n, 2), 4);

  CheckReport out;
  out.name = "lipschitz";
  out.pass = all_ok;
  out.details = {{"rows", std::move(rows)}};
  return out;
}

// ---------------------------------------------------------------------------
// Independent-set reduction: exact identities on a small-graph corpus.

inline std::vector<UndirectedGraph> small_graph_corpus(std::uint64_t seed,
                                                       int max_n = 8) {
  std::vector<UndirectedGraph> out;
  for (int n = 2; n <= max_n; ++n) {  // paths
    UndirectedGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    out.push_back(std::move(g));
  }
  for (int n = 3; n <= max_n; ++n) {  // cycles
    UndirectedGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    out.push_back(std::move(g));
  }
  for (int n = 2; n <= max_n; ++n) {  // complete
    UndirectedGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    out.push_back(std::move(g));
  }
  SeededRng rng(seed);
  for (int n = 5; n <= max_n; ++n)
    for (int rep = 0; rep < 2; ++rep) {
      auto g = gen_gnp(n, rng);
      g.self_loops.clear();  // IS matrices ignore self-loops
      out.push_back(std::move(g));
    }
  return out;
}

inline CheckReport verify_is_reduction(std::uint64_t seed,
                                       int random_x_trials = 1000) {
  auto corpus = small_graph_corpus(seed);
  SeededRng rng(seed ^ 0x15EED);
  json fails = json::array();
  int checked = 0;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const auto& g = corpus[gi];
    const int n = g.n;
    const auto scaled = gen_is_matrix_scaled(g);
    const auto opt = max_independent_set_bruteforce(g);
    const auto adj = g.adjacency_masks();

    // (A x_S)_i has the sign of the integer sum_{j in S} scaled[i][j]; the
    // vote-sum value of the subset indicator is the count of nonnegative
    // sums. The max over nonempty subsets must be exactly OPT_IS.
    int best_yes = 0;
    bool obs81_ok = true;
    for (std::uint64_t S = 1; S < (1ULL << n); ++S) {
      const int k = std::popcount(S);
      int yes = 0;
      bool independent = true;
      for (int i = 0; i < n; ++i) {
        long long acc = 0;
        for (int j = 0; j < n; ++j)
          if (S >> j & 1) acc += scaled[static_cast<std::size_t>(i) * n + j];
        if (acc >= 0) yes += 1;
        if (S >> i & 1) {
          if (adj[static_cast<std::size_t>(i)] & S) independent = false;
          // Observation: members of an independent set see (Ax)_i >= 1/(4n),
          // i.e. scaled sum >= k.
          if (independent && acc < k) obs81_ok = false;
        } else if (independent && acc >= 0) {
          obs81_ok = false;  // non-members must be strictly negative
        }
      }
      best_yes = std::max(best_yes, yes);
    }

    // Observation: for random x, the nonnegative coordinates of Ax always
    // form an independent set.
    bool obs82_ok = true;
    const auto A = gen_is_matrix(g);
    for (int it = 0; it < random_x_trials; ++it) {
      const auto x = random_simplex(rng, n);
      const auto t = mat_vec(A, x);
      std::uint64_t nonneg = 0;
      for (int i = 0; i < n; ++i)
        if (t[static_cast<std::size_t>(i)] >= 0.0) nonneg |= 1ULL << i;
      for (int i = 0; i < n && obs82_ok; ++i)
        if ((nonneg >> i & 1) && (adj[static_cast<std::size_t>(i)] & nonneg))
          obs82_ok = false;
    }

    checked += 1;
    if (best_yes != opt.size || !obs81_ok || !obs82_ok)
      fails.push_back({{"graph", gi}, {"n", n}, {"best_yes", best_yes},
                       {"opt_is", opt.size}, {"obs81", obs81_ok},
                       {"obs82", obs82_ok}});
  }
  CheckReport rep;
  rep.name = "is-reduction";
  rep.pass = fails.empty();
  rep.details = {{"graphs", checked}, {"failures", std::move(fails)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Lottery hardness: exhaustive (x, p) oracle equals r* on every graph with
// n <= max_n, and the price analysis bounds hold on a grid.

inline CheckReport verify_lottery_hard(int max_n = 4, int x_grid = 12,
                                       int price_grid = 200) {
  json fails = json::array();
  int checked = 0;
  for (int n = 1; n <= max_n; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      UndirectedGraph g(n);
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask >> bit & 1) g.add_edge(i, j);
      const auto inst = gen_lottery_hard(g);
      const int opt_is = max_independent_set_bruteforce(g).size;
      const double r_star = lottery_hard_opt(n, opt_is);
      const double p_star = 0.5 + 1.0 / (8.0 * n);

      double best = 0.0;
      bool price_ok = true;
      for_each_s_uniform(n, x_grid, kDefaultCap, [&](const std::vector<int>& c) {
        const auto x = SUniformVector(c, x_grid).to_simplex();
        const auto t = mat_vec(inst.values, x);
        // Candidate prices: the entries of t (the inner max is attained
        // there) plus a uniform grid for the p > p* / p < 1/2 analysis.
        for (double p : t)
          best = std::max(best, lottery_revenue(inst, x, p));
        for (int pg = 0; pg <= price_grid; ++pg) {
          const double p = static_cast<double>(pg) / price_grid;
          const double rev = lottery_revenue(inst, x, p);
          best = std::max(best, rev);
          if ((p > p_star + 1e-9 || p < 0.5 - 1e-9) && rev > r_star - 1e-9)
            price_ok = false;
        }
      });

      checked += 1;
      if (std::abs(best - r_star) > 1e-12 || !price_ok)
        fails.push_back({{"n", n}, {"edges", static_cast<double>(mask)},
                         {"oracle", best}, {"r_star", r_star},
                         {"price_ok", price_ok}});
    }
  }
  CheckReport rep;
  rep.name = "lottery-hard";
  rep.pass = fails.empty();
  rep.details = {{"graphs", checked}, {"failures", std::move(fails)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Planted-clique gap experiment.

inline CheckReport verify_planted(std::uint64_t seed, int n = 200, int k = 30,
                                  int trials = 20, int candidates = 100000,
                                  int s = 17, double planted_slack = 0.1,
                                  double random_bound = 0.85) {
  SeededRng root(seed);
  json planted_rows = json::array(), random_rows = json::array();
  bool pass = true;

  // g at order statistics via a counting histogram over {0..s}/s.
  auto g_clique_counts = [&](const std::vector<int>& cnt, int denom) {
    std::vector<int> hist(static_cast<std::size_t>(denom + 1), 0);
    for (int c : cnt) hist[static_cast<std::size_t>(c)] += 1;
    auto order_stat = [&](int rank) {  // 1-based, descending
      int seen = 0;
      for (int v = denom; v >= 0; --v) {
        seen += hist[static_cast<std::size_t>(v)];
        if (seen >= rank) return static_cast<double>(v) / denom;
      }
      return 0.0;
    };
    return order_stat(k) - order_stat(k + 1) + order_stat(n);
  };

  for (int trial = 0; trial < trials; ++trial) {
    SeededRng rng = root.child(static_cast<std::uint64_t>(trial));
    const auto pg = gen_planted(n, k, rng);
    const auto adj = adjacency_matrix(pg.graph);
    // x uniform over the planted clique: t_i = |N(i) ^ C| / k (self-loops
    // count for i in C).
    std::vector<int> cnt(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j : pg.clique)
        if (adj(i, j) > 0.0) cnt[static_cast<std::size_t>(i)] += 1;
    std::vector<int> hist_cnt = cnt;
    // Reuse the histogram evaluator with denominator k.
    const double val = [&] {
      std::vector<int> h(static_cast<std::size_t>(k + 1), 0);
      for (int c : cnt) h[static_cast<std::size_t>(c)] += 1;
      auto order_stat = [&](int rank) {
        int seen = 0;
        for (int v = k; v >= 0; --v) {
          seen += h[static_cast<std::size_t>(v)];
          if (seen >= rank) return static_cast<double>(v) / k;
        }
        return 0.0;
      };
      return order_stat(k) - order_stat(k + 1) + order_stat(n);
    }();
    const bool ok = val >= 1.0 - 1.0 / k - planted_slack;
    pass = pass && ok;
    planted_rows.push_back({{"trial", trial}, {"value", val}, {"ok", ok}});
  }

  for (int trial = 0; trial < trials; ++trial) {
    SeededRng rng = root.child(0x8000 + static_cast<std::uint64_t>(trial));
    const auto g = gen_gnp(n, rng);
    // Column adjacency as bytes for fast accumulation.
    std::vector<std::uint8_t> cols(static_cast<std::size_t>(n) * n, 0);
    for (auto [a, b] : g.edges) {
      cols[static_cast<std::size_t>(a) * n + b] = 1;
      cols[static_cast<std::size_t>(b) * n + a] = 1;
    }
    for (int v : g.self_loops) cols[static_cast<std::size_t>(v) * n + v] = 1;
    double best = 0.0;
    std::vector<int> cnt(static_cast<std::size_t>(n));
    for (int cand = 0; cand < candidates; ++cand) {
      std::fill(cnt.begin(), cnt.end(), 0);
      for (int d = 0; d < s; ++d) {
        const int j = rng.next_index(n);
        const std::uint8_t* col = &cols[static_cast<std::size_t>(j) * n];
        for (int i = 0; i < n; ++i) cnt[static_cast<std::size_t>(i)] += col[i];
      }
      best = std::max(best, g_clique_counts(cnt, s));
    }
    const bool ok = best <= random_bound;
    pass = pass && ok;
    random_rows.push_back({{"trial", trial}, {"best", best}, {"ok", ok}});
  }

  CheckReport rep;
  rep.name = "planted";
  rep.pass = pass;
  rep.details = {{"n", n}, {"k", k}, {"planted", std::move(planted_rows)},
                 {"random", std::move(random_rows)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Games: zero-sum signaling vs the posterior-grid oracle, and g_eps vs
// support enumeration on tiny general-sum games.

inline CheckReport verify_games(std::uint64_t seed, int zs_instances = 30,
                                int ge_instances = 30, double eps = 0.25,
                                int threads = 1) {
  SeededRng root(seed);
  json zs_rows = json::array(), ge_rows = json::array();
  bool pass = true;

  for (int i = 0; i < zs_instances; ++i) {
    SeededRng rng = root.child(static_cast<std::uint64_t>(i));
    const int n = 2 + rng.next_index(2);  // 2..3
    const int m = 2;
    std::vector<BoundedMatrix> states;
    for (int th = 0; th < m; ++th)
      states.push_back(random_matrix(rng, n, n, Domain::Signed));
    const auto prior = random_simplex(rng, m);
    const auto res =
        zero_sum_signaling(states, prior, eps, kDefaultCap, threads);

    // Oracle: grid search over two-signal decompositions of the exact
    // game-value function on the stacked matrix.
    std::vector<double> data(static_cast<std::size_t>(n) * n * m);
    for (int th = 0; th < m; ++th)
      for (int c = 0; c < n * n; ++c)
        data[static_cast<std::size_t>(c) * m + th] =
            states[static_cast<std::size_t>(th)].data()[static_cast<std::size_t>(c)];
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
    const double oracle = signaling_grid_opt(W, g, prior, 100, 2);
    const bool ok = std::abs(res.value - oracle) <= eps + 1e-9;
    pass = pass && ok;
    zs_rows.push_back({{"instance", i}, {"n", n}, {"value", res.value},
                       {"oracle", oracle}, {"ok", ok}});
  }

  const double ge_eps = 0.1;
  const int ge_s = 40;
  for (int i = 0; i < ge_instances; ++i) {
    SeededRng rng = root.child(0x4000 + static_cast<std::uint64_t>(i));
    const int n = 2;
    auto rt = [&] {
      std::vector<double> d(static_cast<std::size_t>(n) * n);
      for (double& v : d) v = rng.next_in(-1.0, 1.0);
      return Tensor(2, n, std::move(d));
    };
    const Tensor A1 = rt(), A2 = rt(), G = rt();
    const auto ge = g_eps({A1, A2}, G, ge_eps, EqKind::NE, ge_s);

    std::vector<std::vector<double>> pr(2, std::vector<double>(2)),
        pc(2, std::vector<double>(2));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        pr[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            A1.data[static_cast<std::size_t>(a) * 2 + b];
        pc[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            A2.data[static_cast<std::size_t>(a) * 2 + b];
      }
    const auto nes = support_enum_ne(pr, pc, 2);
    double best_exact = -std::numeric_limits<double>::infinity();
    for (const auto& ne : nes) {
      MixedProfile prof;
      prof.strategies.push_back(SimplexVector(ne.x));
      prof.strategies.push_back(SimplexVector(ne.y));
      best_exact = std::max(best_exact, eval_tensor(G, prof));
    }
    const bool ok = !nes.empty() &&
                    std::abs(ge.value - best_exact) <= 2.0 * ge_eps + 1e-9;
    pass = pass && ok;
    ge_rows.push_back({{"instance", i}, {"g_eps", ge.value},
                       {"best_exact", best_exact}, {"ne_count", nes.size()},
                       {"ok", ok}});
  }

  CheckReport rep;
  rep.name = "games";
  rep.pass = pass;
  rep.details = {{"zero_sum", std::move(zs_rows)}, {"g_eps", std::move(ge_rows)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Fourier extensions.

inline CheckReport verify_fourier(std::uint64_t seed, int trials = 1000,
                                  int max_n = 10) {
  SeededRng root(seed);
  bool pass = true;
  json summary;
  double worst_roundtrip = 0.0, worst_parseval = 0.0, worst_sum = 0.0;
  int fails = 0;

  for (int it = 0; it < trials; ++it) {
    SeededRng rng = root.child(static_cast<std::uint64_t>(it));
    const int n = 2 + rng.next_index(max_n - 1);

    struct Case {
      Objective obj;
      std::vector<double> t;
      BooleanFunction h;
      int k;
    };
    std::vector<Case> cases;

    // Lottery, anchored at the optimal price for t.
    std::vector<double> t(static_cast<std::size_t>(n));
    for (double& v : t) v = rng.next_double();
    const auto w = random_simplex(rng, n);
    const double p_opt = lottery_best_price(w, t).price;
    cases.push_back({obj_lottery(w), t, extension_lottery(t, w, p_opt), 1});

    // Vote-sum over signed inputs.
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (double& v : ts) v = rng.next_in(-1.0, 1.0);
    cases.push_back({obj_vote_sum(n), ts, extension_vote_sum(ts), 1});

    // Bare max2 (the single-block revenue objective).
    Objective m2;
    m2.name = "revenue";  // shares the zero-fill worst corruption
    m2.n = n;
    m2.beta = 2.0;
    m2.lipschitz = 1.0;
    m2.domain = Domain::Unsigned;
    m2.evaluate = [](std::span<const double> v) { return max2(v); };
    cases.push_back({std::move(m2), t, extension_max2(t), 2});

    for (const auto& c : cases) {
      const auto wc = worst_corruption_for(c.obj);
      if (!wc) throw InternalError("fourier suite: no worst corruption");
      const auto er = check_extension(c.obj, c.t, c.h, *wc);
      const auto sp = fourier_transform(c.h);
      const auto st = check_algebraic_stability(sp, c.k);
      // Round-trip, Parseval, and the spectrum-sum identity.
      const auto back = inverse_transform(sp);
      double rt = 0.0;
      for (std::size_t b = 0; b < c.h.table.size(); ++b)
        rt = std::max(rt, std::abs(back.table[b] - c.h.table[b]));
      double ssum = 0.0, power = 0.0, tpower = 0.0;
      for (double v : sp.coeff) {
        ssum += v;
        power += v * v;
      }
      for (double v : c.h.table) tpower += v * v;
      tpower /= static_cast<double>(c.h.table.size());
      worst_roundtrip = std::max(worst_roundtrip, rt);
      worst_parseval = std::max(worst_parseval, std::abs(power - tpower));
      worst_sum = std::max(worst_sum, std::abs(ssum - c.h.at_all_ones()));
      if (!er.ok || !st.ok || rt > 1e-10 || std::abs(power - tpower) > 1e-10) {
        pass = false;
        fails += 1;
      }
    }
  }
  CheckReport rep;
  rep.name = "fourier";
  rep.pass = pass;
  rep.details = {{"trials", trials}, {"failures", fails},
                 {"worst_roundtrip", worst_roundtrip},
                 {"worst_parseval", worst_parseval},
                 {"worst_spectrum_sum_gap", worst_sum}};
  return rep;
}

}  // namespace mixsel
