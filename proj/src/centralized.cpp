#include "netdefend/centralized.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detail/mask_engine.hpp"

namespace netdef {

namespace {

// ---- canonical structures -------------------------------------------------

void add_path(Network& g, int first, int count) {
  for (int i = 1; i < count; ++i) g.add_edge(first + i - 1, first + i);
}

/// The canonical witness for w_k(n): network plus defense set.
std::pair<Network, std::vector<NodeId>> build_witness(int n, int k,
                                                      const WValue& w) {
  if (k >= 3) {
    if (n % k == 1) {
      // Star on n-1 nodes plus a spared isolated node.
      Network g(n);
      GeneralizedStar star = build_generalized_star(n - 1, k);
      for (auto [u, v] : star.network.edges()) g.add_edge(u, v);
      std::vector<NodeId> delta(star.core);
      return {std::move(g), std::move(delta)};
    }
    GeneralizedStar star = build_generalized_star(n, k);
    return {std::move(star.network), std::move(star.core)};
  }
  if (k == 2) {
    const int q = w.best_q;
    const int star_size = n - q - (w.with_singleton ? 1 : 0);
    Network g(n);
    GeneralizedStar star = build_generalized_star(star_size, 2);
    for (auto [u, v] : star.network.edges()) g.add_edge(u, v);
    add_path(g, star_size, q);
    return {std::move(g), {0, 1}};
  }
  // k == 0 (and the never-optimal k == 1 shares the unprotected witness).
  Network g(n);
  if (w.triple_split) {
    add_path(g, 0, n / 3);
    add_path(g, n / 3, n / 3);
    add_path(g, 2 * (n / 3), n / 3);
  } else if (n % 2 == 0) {
    add_path(g, 0, n / 2);
    add_path(g, n / 2, n / 2);
  } else {
    add_path(g, 0, (n - 1) / 2);
    add_path(g, (n - 1) / 2, (n - 1) / 2);
    // last node isolated
  }
  return {std::move(g), {}};
}

std::string structure_of(int n, int k, const WValue& w) {
  std::ostringstream out;
  if (k >= 3) {
    if (n % k == 1)
      out << "generalized " << k << "-star on " << n - 1
          << " nodes with protected core, plus an isolated node";
    else if (k == n)
      out << "protected clique";
    else
      out << "generalized " << k << "-star with protected core";
  } else if (k == 2) {
    const int q = w.best_q;
    const int star_size = n - q - (w.with_singleton ? 1 : 0);
    out << "generalized 2-star of size " << star_size << " with protected core";
    if (q > 0) out << ", plus an unprotected component of size " << q;
    if (w.with_singleton) out << ", plus an isolated node";
  } else {
    if (w.triple_split)
      out << "three unprotected components of size " << n / 3;
    else if (n % 2 == 0)
      out << "two unprotected components of size " << n / 2;
    else
      out << "two unprotected components of size " << (n - 1) / 2
          << ", plus an isolated node";
  }
  return out.str();
}

/// Same node set as g, no edges.
Network empty_like(const Network& g) {
  std::vector<NodeId> absent;
  for (int v = 0; v < g.label_count(); ++v)
    if (!g.has_node(v)) absent.push_back(v);
  return Network(g.label_count()).without_nodes(absent);
}

void require_valid(const ValueFunction& f, int n) {
  ValidationReport report = validate_value_function(f, std::max(n, 3));
  for (const auto& check : report.checks)
    if (!check.pass)
      throw std::invalid_argument("value function fails assumption '" +
                                  check.name + "' at x = " +
                                  std::to_string(check.witness));
}

}  // namespace

WValue w_value(int n, int k, const ValueFunction& f) {
  if (n < 3) throw std::invalid_argument("w_k requires n >= 3");
  if (k < 0 || k > n)
    throw std::invalid_argument("w_k requires 0 <= k <= n");

  WValue w;
  if (k <= 1) {
    // Best unprotected split (one protected node changes nothing: in the
    // worst case it is byzantine).
    Int halves = f(n / 2) + (n % 2 == 1 ? f(1) : Int(0));
    if (n % 6 == 3) {
      Int triple = 2 * f(n / 3);
      if (triple > halves) {
        w.value = triple;
        w.triple_split = true;
        return w;
      }
    }
    w.value = halves;
    return w;
  }
  if (k == 2) {
    // 2-star of size n - q (or n - q - 1 with a spare singleton) next to an
    // unprotected component of size q; the adversary picks the weaker side.
    bool first = true;
    for (int q = 0; q <= n - 2; ++q) {
      Int a = std::min(f(n - q), f((n - q) / 2) + f(q));
      Int h = a;
      bool singleton = false;
      if (q <= n - 3) {
        Int b = std::min(f(n - q - 1), f((n - q - 1) / 2) + f(q)) + f(1);
        if (b > h) {
          h = b;
          singleton = true;
        }
      }
      if (first || h > w.value) {
        w.value = h;
        w.best_q = q;
        w.with_singleton = singleton;
        first = false;
      }
    }
    return w;
  }
  // k >= 3
  if (n % k == 1)
    w.value = f(n - 1 - (n - 1) / k) + f(1);
  else
    w.value = f(n - (n + k - 1) / k);
  return w;
}

DesignOutcome optimal_design(int n, const Rational& cost,
                             const ValueFunction& f, int n_byzantine,
                             int n_attacked) {
  if (n_byzantine != 1 || n_attacked != 1)
    throw unsupported_error(
        "closed-form optimal design covers n_B = n_A = 1 only; use the "
        "search oracle for other parameters");
  GameConfig cfg(n, 1, 1, cost, f);

  std::map<int, WValue> w;
  w[0] = w_value(n, 0, f);
  for (int k = 2; k <= n; ++k) w[k] = w_value(n, k, f);

  Rational best;
  std::vector<int> alternatives;
  for (const auto& [k, wk] : w) {
    Rational objective = Rational(wk.value) - Rational(k) * cost;
    if (alternatives.empty() || objective > best) {
      best = objective;
      alternatives.assign(1, k);
    } else if (objective == best) {
      alternatives.push_back(k);
    }
  }
  std::sort(alternatives.begin(), alternatives.end());

  DesignOutcome out;
  out.k = alternatives.back();  // most-protected optimum among the ties
  out.alternatives = alternatives;
  out.payoff = best;
  const WValue& wk = w.at(out.k);
  auto [network, delta] = build_witness(n, out.k, wk);
  out.network = std::move(network);
  out.delta = std::move(delta);
  out.structure = structure_of(n, out.k, wk);

  Rational check =
      pessimistic_designer_utility(ProtectedNetwork{out.network, out.delta}, cfg);
  if (check != out.payoff)
    throw std::logic_error("witness network does not achieve the formula value");
  return out;
}

nlohmann::json DesignOutcome::to_json() const {
  return {{"k", k},
          {"network", network.to_json()},
          {"delta", delta},
          {"payoff", format_rational(payoff)},
          {"alternatives", alternatives},
          {"structure", structure}};
}

std::vector<ThresholdRow> threshold_table(int n, const ValueFunction& f) {
  require_valid(f, n);
  std::map<int, WValue> w;
  w[0] = w_value(n, 0, f);
  for (int k = 2; k <= n; ++k) w[k] = w_value(n, k, f);

  // Upper envelope of the lines c -> w_k - kc over c in (0, inf). The
  // segment owner at c -> 0+ maximizes w_k (smallest k among ties, since the
  // flatter line dominates just right of zero); owners then decrease in k.
  int current = 0;
  for (const auto& [k, wk] : w)
    if (wk.value > w.at(current).value) current = k;

  std::vector<ThresholdRow> rows;
  Rational c_low = 0;
  while (true) {
    ThresholdRow row;
    row.c_low = c_low;
    row.k = current;
    row.w_k = w.at(current).value;
    row.structure = structure_of(n, current, w.at(current));
    if (current == 0) {
      rows.push_back(std::move(row));
      break;
    }
    // Exit point: first intersection with a flatter line.
    bool have = false;
    Rational exit_c;
    int next = 0;
    for (const auto& [k, wk] : w) {
      if (k >= current) continue;
      Rational c_star =
          Rational(w.at(current).value - wk.value) / Rational(current - k);
      if (!have || c_star < exit_c || (c_star == exit_c && k < next)) {
        have = true;
        exit_c = c_star;
        next = k;
      }
    }
    row.c_high = exit_c;
    rows.push_back(std::move(row));
    c_low = exit_c;
    current = next;
  }
  return rows;
}

std::string threshold_table_csv(int n, const ValueFunction& f,
                                const std::vector<ThresholdRow>& rows,
                                const std::string& config_line) {
  std::ostringstream out;
  out << "# n=" << n << " f=" << f.describe();
  if (!config_line.empty()) out << " " << config_line;
  out << "\n";
  out << "c_low,c_high,k,w_k,structure\n";
  for (const auto& row : rows) {
    out << format_rational(row.c_low) << ","
        << (row.c_high ? format_rational(*row.c_high) : std::string("inf"))
        << "," << row.k << "," << row.w_k.str() << ",\"" << row.structure
        << "\"\n";
  }
  return out.str();
}

nlohmann::json threshold_table_json(int n,
                                    const std::vector<ThresholdRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json jr = {{"c_low", format_rational(row.c_low)},
                         {"k", row.k},
                         {"w_k", row.w_k.str()},
                         {"structure", row.structure}};
    jr["c_high"] = row.c_high ? nlohmann::json(format_rational(*row.c_high))
                              : nlohmann::json(nullptr);
    arr.push_back(std::move(jr));
  }
  return {{"n", n}, {"rows", arr}};
}

namespace {

DesignOutcome brute_force_all_graphs(const GameConfig& cfg) {
  const int n = cfg.n();
  if (n > 6) throw limit_error("all-graphs search supports n <= 6");
  const std::vector<std::int64_t> f64 = detail::narrow_f_table(cfg.f_table());

  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  const int m = static_cast<int>(pairs.size());

  // Designer payoff factors as min_phi(G, delta) - |delta| c; cost enters
  // only at the comparison.
  std::int64_t best_phi = 0;
  Rational best_payoff;
  std::uint32_t best_edges = 0, best_delta = 0;
  bool first = true;
  detail::ProfileStats stats;

  for (std::uint32_t em = 0; em < (std::uint32_t(1) << m); ++em) {
    detail::MaskGraph mg;
    mg.n = n;
    mg.all = (std::uint64_t(1) << n) - 1;
    for (int i = 0; i < m; ++i)
      if ((em >> i) & 1) {
        mg.adj[pairs[static_cast<std::size_t>(i)].first] |=
            std::uint64_t(1) << pairs[static_cast<std::size_t>(i)].second;
        mg.adj[pairs[static_cast<std::size_t>(i)].second] |=
            std::uint64_t(1) << pairs[static_cast<std::size_t>(i)].first;
      }
    for (std::uint32_t dm = 0; dm < (std::uint32_t(1) << n); ++dm) {
      detail::profile_stats(mg, f64.data(), dm, cfg.byzantine_count(),
                            cfg.attack_count(), false, stats);
      Rational payoff = Rational(stats.min_phi) -
                        Rational(std::popcount(dm)) * cfg.cost();
      if (first || payoff > best_payoff) {
        best_payoff = std::move(payoff);
        best_phi = stats.min_phi;
        best_edges = em;
        best_delta = dm;
        first = false;
      }
    }
  }
  (void)best_phi;

  DesignOutcome out;
  out.network = Network(n);
  for (int i = 0; i < m; ++i)
    if ((best_edges >> i) & 1)
      out.network.add_edge(pairs[static_cast<std::size_t>(i)].first,
                           pairs[static_cast<std::size_t>(i)].second);
  for (int v = 0; v < n; ++v)
    if ((best_delta >> v) & 1) out.delta.push_back(v);
  out.k = static_cast<int>(out.delta.size());
  out.payoff = best_payoff;
  out.alternatives = {out.k};
  out.structure = "exhaustive search over all graphs";
  return out;
}

struct StructuredCandidate {
  Network g;
  std::vector<NodeId> delta;
  std::string description;
};

std::vector<StructuredCandidate> structured_candidates(int n) {
  std::vector<StructuredCandidate> out;

  auto split = [&](std::vector<int> parts, std::string desc) {
    Network g(n);
    int at = 0;
    for (int p : parts) {
      add_path(g, at, p);
      at += p;
    }
    out.push_back({std::move(g), {}, std::move(desc)});
  };

  split({n}, "one unprotected component");
  for (int a = 1; a <= n / 2; ++a)
    split({a, n - a}, "unprotected split " + std::to_string(a) + "+" +
                          std::to_string(n - a));
  for (int a = 1; a <= n / 3; ++a)
    for (int b = a; b <= (n - a) / 2; ++b)
      split({a, b, n - a - b}, "unprotected split " + std::to_string(a) + "+" +
                                   std::to_string(b) + "+" +
                                   std::to_string(n - a - b));

  for (int k = 2; k <= n; ++k) {
    for (int s = k; s <= n; ++s) {
      const int r = n - s;
      std::vector<std::vector<int>> rests;
      if (r == 0)
        rests.push_back({});
      else {
        rests.push_back({r});
        if (r >= 2) rests.push_back({r / 2, r - r / 2});
        if (r >= 2) rests.push_back({r - 1, 1});
      }
      std::set<std::vector<int>> seen;
      for (auto& rest : rests) {
        std::sort(rest.begin(), rest.end());
        if (!seen.insert(rest).second) continue;
        Network g(n);
        GeneralizedStar star = build_generalized_star(s, k);
        for (auto [u, v] : star.network.edges()) g.add_edge(u, v);
        int at = s;
        std::string desc = std::to_string(k) + "-star of size " +
                           std::to_string(s) + " with protected core";
        for (int p : rest) {
          add_path(g, at, p);
          at += p;
          desc += " + component " + std::to_string(p);
        }
        std::vector<NodeId> delta;
        for (int i = 0; i < k; ++i) delta.push_back(i);
        out.push_back({std::move(g), std::move(delta), std::move(desc)});
      }
    }
  }
  return out;
}

DesignOutcome brute_force_structured(const GameConfig& cfg) {
  const int n = cfg.n();
  if (n > 60) throw limit_error("structured search supports n <= 60");

  // int64 evaluation when the values fit, exact big-int evaluation otherwise.
  std::vector<std::int64_t> f64;
  bool fast = true;
  try {
    f64 = detail::narrow_f_table(cfg.f_table());
  } catch (const limit_error&) {
    fast = false;
  }

  DesignOutcome out;
  bool first = true;
  detail::ProfileStats stats;
  for (auto& cand : structured_candidates(n)) {
    Rational payoff;
    if (fast) {
      detail::MaskGraph mg = detail::MaskGraph::from(cand.g);
      std::uint64_t dm = 0;
      for (NodeId v : cand.delta) dm |= std::uint64_t(1) << v;
      detail::profile_stats(mg, f64.data(), dm, cfg.byzantine_count(),
                            cfg.attack_count(), false, stats);
      payoff = Rational(stats.min_phi) -
               Rational(static_cast<int>(cand.delta.size())) * cfg.cost();
    } else {
      payoff = pessimistic_designer_utility(
          ProtectedNetwork{cand.g, cand.delta}, cfg);
    }
    if (first || payoff > out.payoff) {
      out.payoff = std::move(payoff);
      out.network = std::move(cand.g);
      out.delta = std::move(cand.delta);
      out.structure = std::move(cand.description);
      first = false;
    }
  }
  out.k = static_cast<int>(out.delta.size());
  out.alternatives = {out.k};
  return out;
}

}  // namespace

DesignOutcome brute_force_optimal(const GameConfig& cfg, SearchMode mode) {
  return mode == SearchMode::AllGraphs ? brute_force_all_graphs(cfg)
                                       : brute_force_structured(cfg);
}

ProtectedNetwork defense_clique(const ProtectedNetwork& pn) {
  ProtectedNetwork out = pn;
  for (std::size_t i = 0; i < out.delta.size(); ++i)
    for (std::size_t j = i + 1; j < out.delta.size(); ++j)
      out.g.add_edge(out.delta[i], out.delta[j]);
  return out;
}

ProtectedNetwork cloud_creation(const ProtectedNetwork& pn) {
  ProtectedNetwork out = pn;
  std::set<NodeId> prot(out.delta.begin(), out.delta.end());
  for (NodeId i : out.delta) {
    // V_i: unprotected nodes reachable from i through unprotected nodes.
    std::set<NodeId> cloud;
    std::vector<NodeId> frontier{i};
    while (!frontier.empty()) {
      NodeId v = frontier.back();
      frontier.pop_back();
      for (auto [a, b] : out.g.edges()) {
        NodeId w = -1;
        if (a == v) w = b;
        if (b == v) w = a;
        if (w < 0 || prot.count(w) || cloud.count(w)) continue;
        cloud.insert(w);
        frontier.push_back(w);
      }
    }
    if (cloud.empty()) continue;
    Network g = empty_like(out.g);
    for (auto [a, b] : out.g.edges())
      if (!cloud.count(a) && !cloud.count(b)) g.add_edge(a, b);
    for (NodeId j : cloud) g.add_edge(i, j);
    out.g = std::move(g);
  }
  return out;
}

ProtectedNetwork rebalance_loads(const ProtectedNetwork& pn) {
  ProtectedNetwork out = pn;
  if (out.delta.size() < 2) return out;
  std::set<NodeId> prot(out.delta.begin(), out.delta.end());

  auto loads = [&]() {
    std::map<NodeId, std::vector<NodeId>> l;
    for (NodeId i : out.delta) l[i] = {};
    for (auto [a, b] : out.g.edges()) {
      if (prot.count(a) && !prot.count(b) && out.g.degree(b) == 1)
        l[a].push_back(b);
      if (prot.count(b) && !prot.count(a) && out.g.degree(a) == 1)
        l[b].push_back(a);
    }
    return l;
  };

  while (true) {
    auto l = loads();
    NodeId hi = out.delta.front(), lo = out.delta.front();
    for (NodeId i : out.delta) {
      if (l[i].size() > l[hi].size()) hi = i;
      if (l[i].size() < l[lo].size()) lo = i;
    }
    if (l[hi].size() < l[lo].size() + 2) break;
    NodeId moved = *std::max_element(l[hi].begin(), l[hi].end());
    Network g = empty_like(out.g);
    for (auto [a, b] : out.g.edges()) {
      if ((a == hi && b == moved) || (a == moved && b == hi)) continue;
      g.add_edge(a, b);
    }
    g.add_edge(lo, moved);
    out.g = std::move(g);
  }
  return out;
}

ProtectedNetwork canonicalize_to_star(const ProtectedNetwork& pn,
                                      const GameConfig& cfg) {
  if (pn.delta.size() < 2)
    throw unsupported_error("canonicalization requires |delta| >= 2");
  if (cfg.byzantine_count() != 1 || cfg.attack_count() != 1)
    throw unsupported_error("canonicalization is proved for n_B = n_A = 1");
  return rebalance_loads(cloud_creation(defense_clique(pn)));
}

}  // namespace netdef
