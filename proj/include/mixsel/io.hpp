#pragma once

// JSON (de)serialization for the CLI surface: matrices, priors, objectives,
// schemes, graphs, and game tensors.

#include <json.hpp>

#include "mixsel/core.hpp"
#include "mixsel/games.hpp"
#include "mixsel/hardgen.hpp"
#include "mixsel/objectives.hpp"
#include "mixsel/signaling.hpp"

namespace mixsel {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matrices: {"rows": r, "cols": c, "domain": "signed"|"unsigned",
//            "data": flat row-major array}

inline json matrix_to_json(const BoundedMatrix& A) {
  return json{{"rows", A.rows()},
              {"cols", A.cols()},
              {"domain", A.domain() == Domain::Signed ? "signed" : "unsigned"},
              {"data", A.data()}};
}

inline BoundedMatrix matrix_from_json(const json& j) {
  const std::string dom = j.at("domain").get<std::string>();
  if (dom != "signed" && dom != "unsigned")
    throw InvalidParam("matrix domain must be 'signed' or 'unsigned'");
  return BoundedMatrix(j.at("rows").get<int>(), j.at("cols").get<int>(),
                       j.at("data").get<std::vector<double>>(),
                       dom == "signed" ? Domain::Signed : Domain::Unsigned);
}

inline SimplexVector simplex_from_json(const json& j) {
  return SimplexVector(j.get<std::vector<double>>());
}

// ---------------------------------------------------------------------------
// Objectives: {"name": ..., objective-specific params}. The arity n is
// supplied by the caller (from the instance matrix).

inline Objective objective_from_json(const json& j, int n) {
  const std::string name = j.at("name").get<std::string>();
  if (name == "mid") return obj_mid(n);
  if (name == "lottery") {
    if (j.contains("weights")) return obj_lottery(simplex_from_json(j.at("weights")));
    return obj_lottery(
        SimplexVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)));
  }
  if (name == "vote_sum") return obj_vote_sum(n);
  if (name == "vote_sum_relaxed")
    return obj_vote_sum_relaxed(n, j.at("delta").get<double>());
  if (name == "vote_thresh")
    return obj_vote_thresh(n, j.value("q", 0.5));
  if (name == "vote_smooth_thresh")
    return obj_vote_smooth_thresh(n, j.value("q", 0.5), j.at("delta").get<double>());
  if (name == "vote_thresh_relaxed")
    return obj_vote_thresh_relaxed(n, j.value("q", 0.5), j.at("delta").get<double>());
  if (name == "slope") return obj_slope(n);
  if (name == "clique") return obj_clique(n, j.at("k").get<int>());
  if (name == "revenue") {
    std::vector<BoundedMatrix> supports;
    for (const auto& s : j.at("supports")) supports.push_back(matrix_from_json(s));
    return obj_revenue(supports, simplex_from_json(j.at("probs")));
  }
  throw InvalidParam("unknown objective '" + name + "'");
}

// ---------------------------------------------------------------------------
// Schemes: {"signals": [{"prob": p, "posterior": [...]}, ...],
//           "value": v, "guarantee": g}

inline json scheme_to_json(const SignalingScheme& scheme, double value,
                           double guarantee) {
  json sigs = json::array();
  for (const auto& sig : scheme.signals)
    sigs.push_back({{"prob", sig.prob}, {"posterior", sig.posterior.entries()}});
  json out{{"signals", std::move(sigs)}, {"value", value}};
  if (std::isfinite(guarantee))
    out["guarantee"] = guarantee;
  else
    out["guarantee"] = nullptr;
  return out;
}

inline SignalingScheme scheme_from_json(const json& j) {
  SignalingScheme scheme;
  for (const auto& sig : j.at("signals"))
    scheme.signals.push_back(
        {sig.at("prob").get<double>(), simplex_from_json(sig.at("posterior"))});
  return scheme;
}

// ---------------------------------------------------------------------------
// Graphs: {"n": n, "edges": [[i,j],...], "self_loops": [...]}

inline json graph_to_json(const UndirectedGraph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return json{{"n", g.n}, {"edges", std::move(edges)}, {"self_loops", g.self_loops}};
}

inline UndirectedGraph graph_from_json(const json& j) {
  UndirectedGraph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw InvalidParam("graph edge must be a pair");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  if (j.contains("self_loops"))
    for (const auto& v : j.at("self_loops")) g.add_self_loop(v.get<int>());
  return g;
}

// ---------------------------------------------------------------------------
// Tensors: {"shape": [n, ..., n] (k entries), "data": nested row-major}

namespace detail {

inline json tensor_nest(std::span<const double> flat, int k, int n) {
  if (k == 1) return json(std::vector<double>(flat.begin(), flat.end()));
  json out = json::array();
  const std::size_t stride = flat.size() / static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i)
    out.push_back(tensor_nest(flat.subspan(static_cast<std::size_t>(i) * stride,
                                           stride), k - 1, n));
  return out;
}

inline void tensor_flatten(const json& j, int depth, int k, int n,
                           std::vector<double>& out) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InvalidShape("tensor data does not match the declared shape");
  for (const auto& e : j) {
    if (depth + 1 == k)
      out.push_back(e.get<double>());
    else
      tensor_flatten(e, depth + 1, k, n, out);
  }
}

}  // namespace detail

inline json tensor_to_json(const Tensor& T) {
  return json{{"shape", std::vector<int>(static_cast<std::size_t>(T.k), T.n)},
              {"data", detail::tensor_nest(T.data, T.k, T.n)}};
}

inline Tensor tensor_from_json(const json& j) {
  const auto shape = j.at("shape").get<std::vector<int>>();
  if (shape.empty()) throw InvalidShape("tensor shape must be nonempty");
  const int k = static_cast<int>(shape.size());
  const int n = shape.front();
  for (int d : shape)
    if (d != n) throw InvalidShape("tensor axes must share one action count");
  std::vector<double> flat;
  if (k == 1 && j.at("data").is_array() && !j.at("data").empty() &&
      j.at("data")[0].is_number()) {
    flat = j.at("data").get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != n)
      throw InvalidShape("tensor data does not match the declared shape");
  } else {
    detail::tensor_flatten(j.at("data"), 0, k, n, flat);
  }
  return Tensor(k, n, std::move(flat));
}

inline json game_to_json(const BayesianNFG& game) {
  json payoffs = json::array();
  for (const auto& state : game.payoffs) {
    json per_player = json::array();
    for (const auto& T : state) per_player.push_back(tensor_to_json(T));
    payoffs.push_back(std::move(per_player));
  }
  json objective = json::array();
  for (const auto& T : game.objective) objective.push_back(tensor_to_json(T));
  return json{{"players", game.k},
              {"actions", game.n},
              {"states", game.m},
              {"payoffs", std::move(payoffs)},
              {"objective", std::move(objective)},
              {"prior", game.prior.entries()}};
}

inline BayesianNFG game_from_json(const json& j) {
  std::vector<std::vector<Tensor>> payoffs;
  for (const auto& state : j.at("payoffs")) {
    std::vector<Tensor> per_player;
    for (const auto& t : state) per_player.push_back(tensor_from_json(t));
    payoffs.push_back(std::move(per_player));
  }
  std::vector<Tensor> objective;
  for (const auto& t : j.at("objective")) objective.push_back(tensor_from_json(t));
  return BayesianNFG(std::move(payoffs), std::move(objective),
                     simplex_from_json(j.at("prior")));
}

}  // namespace mixsel
