#pragma once

// Application solvers: single-lottery revenue maximization (explicit and
// sample-oracle models), second-price auction signaling, and voter
// persuasion (expected votes and majority threshold).

#include "mixsel/core.hpp"
#include "mixsel/mixture.hpp"
#include "mixsel/objectives.hpp"
#include "mixsel/signaling.hpp"

namespace mixsel {

// ---------------------------------------------------------------------------
// Lottery design

struct LotteryInstance {
  BoundedMatrix values;  // n x m, unsigned: type-item valuations
  SimplexVector weights;  // type weights, in the n-simplex

  LotteryInstance(BoundedMatrix a, SimplexVector w)
      : values(std::move(a)), weights(std::move(w)) {
    if (values.domain() != Domain::Unsigned)
      throw InvalidParam("lottery valuations must be in [0,1]");
    if (values.rows() != weights.dimension())
      throw DimensionMismatch("lottery: weight count must equal type count");
  }
};

struct LotteryOffer {
  SimplexVector lottery;
  double price = 0.0;
  double revenue = 0.0;
  double guarantee = 0.0;
};

inline double lottery_revenue(const LotteryInstance& inst,
                              const SimplexVector& x, double p) {
  const auto t = mat_vec(inst.values, x);
  double w = 0.0;
  for (int i = 0; i < inst.values.rows(); ++i)
    if (t[static_cast<std::size_t>(i)] >= p) w += inst.weights[i];
  return p * w;
}

// Additive PTAS: mixture selection for the lottery objective with
// alpha = delta = eps/2 (beta = c = 1), then exact price extraction.
inline LotteryOffer lottery_design_explicit(const LotteryInstance& inst,
                                            double eps,
                                            unsigned long long cap = kDefaultCap,
                                            int threads = 1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParam("eps must be in (0, 1]");
  const auto obj = obj_lottery(inst.weights);
  const auto sol =
      solve_mixture(inst.values, obj, eps / 2.0, eps / 2.0, cap, threads);
  const auto x = sol.x.to_simplex();
  const auto pp = lottery_best_price(inst.weights, mat_vec(inst.values, x));
  return LotteryOffer{x, pp.price, pp.revenue, sol.guarantee};
}

// Buyer-type sampling oracle: draws rows of [0,1]^m, i.i.d. under the seed.
using TypeOracle = std::function<std::vector<double>(SeededRng&)>;

// Sample count for the PRAS: ceil(C0 (s ln m + ln(2/gamma)) / eps^2) with
// s = sample_size(eps/2, eps/2). C0 is an exposed constant, default 8.
inline int pras_sample_count(int m, double eps, double gamma, double c0 = 8.0) {
  if (!(eps > 0.0 && eps < 1.0) || !(gamma > 0.0 && gamma < 1.0))
    throw InvalidParam("pras_sample_count: eps, gamma must be in (0, 1)");
  const int s = sample_size(eps / 2.0, eps / 2.0);
  const double v =
      c0 * (s * std::log(static_cast<double>(std::max(2, m))) +
            std::log(2.0 / gamma)) /
      (eps * eps);
  return std::max(1, static_cast<int>(std::ceil(v)));
}

inline LotteryOffer lottery_design_sampled(const TypeOracle& oracle, int m,
                                           double eps, double gamma,
                                           SeededRng& rng, double c0 = 8.0,
                                           unsigned long long cap = kDefaultCap,
                                           int threads = 1) {
  const int n = pras_sample_count(m, eps, gamma, c0);
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    auto row = oracle(rng);
    if (static_cast<int>(row.size()) != m)
      throw InvalidShape("type oracle returned a row of wrong width");
    data.insert(data.end(), row.begin(), row.end());
  }
  LotteryInstance empirical(
      BoundedMatrix(n, m, std::move(data), Domain::Unsigned),
      SimplexVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)));
  return lottery_design_explicit(empirical, eps, cap, threads);
}

// ---------------------------------------------------------------------------
// Auction signaling

struct AuctionInstance {
  std::vector<BoundedMatrix> supports;  // valuation matrices V_c, n x m
  SimplexVector probs;                  // over the C support matrices
  SimplexVector prior;                  // over the m states

  AuctionInstance(std::vector<BoundedMatrix> v, SimplexVector p,
                  SimplexVector lambda)
      : supports(std::move(v)), probs(std::move(p)), prior(std::move(lambda)) {
    if (supports.empty()) throw InvalidShape("auction: empty support");
    const int n = supports.front().rows();
    const int m = supports.front().cols();
    if (n < 2) throw InvalidShape("auction: need at least 2 bidders");
    for (const auto& V : supports) {
      if (V.rows() != n || V.cols() != m)
        throw InvalidShape("auction: ragged support shapes");
      if (V.domain() != Domain::Unsigned)
        throw InvalidParam("auction valuations must be in [0,1]");
    }
    if (static_cast<int>(supports.size()) != probs.dimension())
      throw DimensionMismatch("auction: support/prob size mismatch");
    if (prior.dimension() != m)
      throw DimensionMismatch("auction: prior/state size mismatch");
  }

  int bidders() const { return supports.front().rows(); }
  int states() const { return supports.front().cols(); }
};

// The stacked matrix W = [V_1; V_2; ...; V_C].
inline BoundedMatrix stack_supports(const std::vector<BoundedMatrix>& supports) {
  const int n = supports.front().rows();
  const int m = supports.front().cols();
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n) * m * supports.size());
  for (const auto& V : supports)
    data.insert(data.end(), V.data().begin(), V.data().end());
  return BoundedMatrix(n * static_cast<int>(supports.size()), m,
                       std::move(data), Domain::Unsigned);
}

// PTAS for revenue signaling: alpha = eps/4, delta = eps/2 against the
// 2-stable, 1-Lipschitz expected-second-bid objective.
inline SignalingResult auction_signaling_explicit(
    const AuctionInstance& inst, double eps,
    unsigned long long cap = kDefaultCap, int threads = 1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParam("eps must be in (0, 1]");
  const auto W = stack_supports(inst.supports);
  const auto obj = obj_revenue(inst.supports, inst.probs);
  return solve_signaling(W, obj, inst.prior, eps / 4.0, eps / 2.0, cap,
                         threads);
}

using MatrixOracle = std::function<BoundedMatrix(SeededRng&)>;

inline SignalingResult auction_signaling_sampled(
    const MatrixOracle& oracle, const SimplexVector& prior, double eps,
    double gamma, SeededRng& rng, double c0 = 8.0,
    unsigned long long cap = kDefaultCap, int threads = 1) {
  const int samples = pras_sample_count(prior.dimension(), eps, gamma, c0);
  std::vector<BoundedMatrix> supports;
  supports.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) supports.push_back(oracle(rng));
  AuctionInstance empirical(
      std::move(supports),
      SimplexVector(std::vector<double>(static_cast<std::size_t>(samples),
                                        1.0 / samples)),
      prior);
  return auction_signaling_explicit(empirical, eps, cap, threads);
}

// ---------------------------------------------------------------------------
// Voter persuasion

struct VotingInstance {
  BoundedMatrix utilities;  // n x m, signed: Yes-utility per voter and state
  SimplexVector prior;
  double threshold = 0.5;   // q, used by the majority objective
  double slack = 0.05;      // delta, the indifference relaxation

  VotingInstance(BoundedMatrix u, SimplexVector lambda, double q = 0.5,
                 double delta = 0.05)
      : utilities(std::move(u)), prior(std::move(lambda)), threshold(q),
        slack(delta) {
    if (utilities.cols() != prior.dimension())
      throw DimensionMismatch("voting: prior/state size mismatch");
    if (!(threshold > 0.0 && threshold <= 1.0) || slack <= 0.0 ||
        slack >= threshold)
      throw InvalidParam("voting: need 0 < delta < q <= 1");
  }
};

struct VotingResult {
  SignalingResult signaling;
  double value_relaxed = 0.0;  // realized value under the relaxed objective
  double value_smooth = 0.0;   // value under the smooth surrogate benchmark
};

// Expected-votes objective: bi-criteria with g = vote_sum (1-stable),
// h = vote_sum_relaxed(delta), alpha = eps, rho = 0.
inline VotingResult voting_sum_signaling(const VotingInstance& inst, double eps,
                                         unsigned long long cap = kDefaultCap,
                                         int threads = 1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParam("eps must be in (0, 1]");
  const int n = inst.utilities.rows();
  auto res = solve_signaling_bicriteria(
      inst.utilities, /*g_beta=*/1.0, obj_vote_sum_relaxed(n, inst.slack),
      inst.prior, /*alpha=*/eps, /*delta=*/inst.slack, /*rho=*/0.0, cap,
      threads);
  VotingResult out;
  out.value_relaxed = res.value.value;
  out.value_smooth = out.value_relaxed;
  out.signaling = std::move(res);
  return out;
}

// Majority objective: bi-criteria against the (1/delta)-stable smooth
// surrogate with alpha = eps*delta; the LP optimizes the relaxed hard
// threshold. Reports both the realized relaxed value and the value under
// the smooth surrogate.
inline VotingResult voting_thresh_signaling(const VotingInstance& inst,
                                            double eps,
                                            unsigned long long cap = kDefaultCap,
                                            int threads = 1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParam("eps must be in (0, 1]");
  const int n = inst.utilities.rows();
  const double delta = inst.slack;
  auto res = solve_signaling_bicriteria(
      inst.utilities, /*g_beta=*/1.0 / delta,
      obj_vote_thresh_relaxed(n, inst.threshold, delta), inst.prior,
      /*alpha=*/eps * delta, /*delta=*/delta, /*rho=*/0.0, cap, threads);
  VotingResult out;
  out.value_relaxed = res.value.value;
  out.value_smooth =
      evaluate_scheme(res.scheme, inst.utilities,
                      obj_vote_smooth_thresh(n, inst.threshold, delta))
          .value;
  out.signaling = std::move(res);
  return out;
}

}  // namespace mixsel
