#include "netdefend/decentralized.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netdefend/centralized.hpp"
#include "netdefend/star.hpp"
#include "detail/mask_engine.hpp"

namespace netdef {

namespace {

using detail::MaskGraph;

std::vector<Int> make_f_table(const ValueFunction& f, int n) {
  ValidationReport report = validate_value_function(f, std::max(n, 3));
  for (const auto& check : report.checks)
    if (!check.pass)
      throw std::invalid_argument("value function fails assumption '" +
                                  check.name + "' at x = " +
                                  std::to_string(check.witness));
  std::vector<Int> table;
  table.reserve(static_cast<std::size_t>(n) + 1);
  for (int s = 0; s <= n; ++s) table.push_back(f(s));
  return table;
}

Rational share_of(int level, const std::vector<Int>& f) {
  if (level == 0) return Rational(0);
  return Rational(f[static_cast<std::size_t>(level)], level);
}

/// Pessimistic statistics of every type-independent profile on g, indexed by
/// the protection bitmask.
struct SubgameTables {
  int n = 0;
  MaskGraph mg;
  std::vector<std::int64_t> min_phi;           // per mask
  std::vector<std::uint8_t> levels;            // mask * n + node
};

SubgameTables build_subgame_tables(const Network& g, int n_b, int n_a,
                                   const std::vector<std::int64_t>& f64) {
  SubgameTables t;
  t.n = g.label_count();
  t.mg = MaskGraph::from(g);
  const std::size_t total = std::size_t(1) << t.n;
  t.min_phi.resize(total);
  t.levels.resize(total * static_cast<std::size_t>(t.n));
  detail::ProfileStats stats;
  for (std::size_t mask = 0; mask < total; ++mask) {
    detail::profile_stats(t.mg, f64.data(), mask, n_b, n_a, true, stats);
    t.min_phi[mask] = stats.min_phi;
    for (int v = 0; v < t.n; ++v)
      t.levels[mask * static_cast<std::size_t>(t.n) +
               static_cast<std::size_t>(v)] = stats.levels[v];
  }
  return t;
}

/// geq[(l1,b1)][(l2,b2)]: U(l1,b1) >= U(l2,b2) with U(l,b) = share(l) - b c.
std::vector<char> utility_geq_table(int n, const std::vector<Int>& f,
                                    const Rational& cost) {
  const int states = (n + 1) * 2;
  std::vector<Rational> u(static_cast<std::size_t>(states));
  for (int l = 0; l <= n; ++l)
    for (int b = 0; b < 2; ++b)
      u[static_cast<std::size_t>(l * 2 + b)] =
          share_of(l, f) - (b ? cost : Rational(0));
  std::vector<char> geq(static_cast<std::size_t>(states) * states);
  for (int a = 0; a < states; ++a)
    for (int b = 0; b < states; ++b)
      geq[static_cast<std::size_t>(a) * states + b] =
          u[static_cast<std::size_t>(a)] >= u[static_cast<std::size_t>(b)];
  return geq;
}

std::vector<std::uint32_t> equilibrium_masks(const SubgameTables& t,
                                             const std::vector<Int>& f,
                                             const Rational& cost) {
  const int n = t.n;
  const int states = (n + 1) * 2;
  const std::vector<char> geq = utility_geq_table(n, f, cost);
  std::vector<std::uint32_t> out;
  const std::size_t total = std::size_t(1) << n;
  for (std::size_t mask = 0; mask < total; ++mask) {
    bool stable = true;
    for (int v = 0; v < n && stable; ++v) {
      const std::size_t flip = mask ^ (std::size_t(1) << v);
      const int b1 = static_cast<int>((mask >> v) & 1);
      const int l1 = t.levels[mask * static_cast<std::size_t>(n) +
                              static_cast<std::size_t>(v)];
      const int l2 = t.levels[flip * static_cast<std::size_t>(n) +
                              static_cast<std::size_t>(v)];
      stable = geq[static_cast<std::size_t>(l1 * 2 + b1) * states +
                   static_cast<std::size_t>(l2 * 2 + (1 - b1))];
    }
    if (stable) out.push_back(static_cast<std::uint32_t>(mask));
  }
  return out;
}

EquilibriumProfile profile_from_mask(const SubgameTables& t,
                                     const std::vector<Int>& f,
                                     const Rational& cost,
                                     std::uint32_t mask) {
  EquilibriumProfile p;
  p.strategies.resize(static_cast<std::size_t>(t.n));
  p.node_utilities.resize(static_cast<std::size_t>(t.n));
  for (int v = 0; v < t.n; ++v) {
    const int bit = static_cast<int>((mask >> v) & 1);
    p.strategies[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(bit);
    const int l = t.levels[std::size_t(mask) * static_cast<std::size_t>(t.n) +
                           static_cast<std::size_t>(v)];
    p.node_utilities[static_cast<std::size_t>(v)] =
        share_of(l, f) - (bit ? cost : Rational(0));
  }
  p.designer_value = Rational(t.min_phi[mask]) -
                     Rational(std::popcount(mask)) * cost;
  return p;
}

}  // namespace

nlohmann::json EquilibriumSet::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : equilibria) {
    nlohmann::json utils = nlohmann::json::array();
    for (const auto& u : e.node_utilities) utils.push_back(format_rational(u));
    nlohmann::json bits = nlohmann::json::array();
    for (auto b : e.strategies) bits.push_back(static_cast<int>(b));
    arr.push_back({{"strategies", bits},
                   {"designer_value", format_rational(e.designer_value)},
                   {"node_utilities", utils}});
  }
  return {{"count", equilibria.size()},
          {"no_pure_equilibrium", equilibria.empty()},
          {"equilibria", arr}};
}

EquilibriumSet node_game_equilibria(const Network& g, const GameConfig& cfg,
                                    UtilityMode mode) {
  if (!g.full())
    throw std::invalid_argument(
        "equilibrium enumeration expects a full network");
  const int n = g.label_count();
  if (n > 20) throw limit_error("profile enumeration supports n <= 20");
  if (n > cfg.n())
    throw std::invalid_argument("network larger than the configured n");

  EquilibriumSet out;
  if (mode == UtilityMode::Pessimistic) {
    const std::vector<std::int64_t> f64 = detail::narrow_f_table(cfg.f_table());
    SubgameTables t = build_subgame_tables(g, cfg.byzantine_count(),
                                           cfg.attack_count(), f64);
    for (std::uint32_t mask : equilibrium_masks(t, cfg.f_table(), cfg.cost()))
      out.equilibria.push_back(
          profile_from_mask(t, cfg.f_table(), cfg.cost(), mask));
    return out;
  }

  // Expected mode: per-profile averaging over byzantine placements.
  if (n > 14)
    throw limit_error("expected-mode enumeration supports n <= 14");
  const std::size_t total = std::size_t(1) << n;
  std::vector<ExpectedUtilities> table(total);
  std::vector<std::uint8_t> strat(static_cast<std::size_t>(n));
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (int v = 0; v < n; ++v)
      strat[static_cast<std::size_t>(v)] =
          static_cast<std::uint8_t>((mask >> v) & 1);
    table[mask] = expected_utilities(g, strat, cfg);
  }
  for (std::size_t mask = 0; mask < total; ++mask) {
    bool stable = true;
    for (int v = 0; v < n && stable; ++v) {
      const std::size_t flip = mask ^ (std::size_t(1) << v);
      stable = table[mask].nodes[static_cast<std::size_t>(v)] >=
               table[flip].nodes[static_cast<std::size_t>(v)];
    }
    if (!stable) continue;
    EquilibriumProfile p;
    p.strategies.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      p.strategies[static_cast<std::size_t>(v)] =
          static_cast<std::uint8_t>((mask >> v) & 1);
    p.designer_value = table[mask].designer;
    p.node_utilities = table[mask].nodes;
    out.equilibria.push_back(std::move(p));
  }
  return out;
}

bool StarCharacterizationReport::all_pass() const {
  for (const auto& c : checks)
    if (c.characterized && !c.pass) return false;
  return true;
}

nlohmann::json StarCharacterizationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc = {{"cost", format_rational(c.cost)},
                         {"regime", c.regime},
                         {"characterized", c.characterized}};
    if (c.characterized) jc["pass"] = c.pass;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    arr.push_back(std::move(jc));
  }
  return {{"n", n}, {"k", k},    {"x", x},
          {"y", y}, {"all_pass", all_pass()}, {"checks", arr}};
}

StarCharacterizationReport verify_star_characterization(
    int n, int k, int n_byzantine, int n_attacked, const ValueFunction& f,
    const std::vector<Rational>& cost_grid) {
  if (k < n_byzantine + 1 || k > n)
    throw std::invalid_argument("requires n >= k >= n_B + 1");
  if (n > 20) throw limit_error("profile enumeration supports n <= 20");
  const int x = n / k - n_attacked + 1;
  const int y = n - n_byzantine * (n / k);
  if (x < 2) throw std::invalid_argument("requires x = floor(n/k) - n_A + 1 >= 2");
  const std::vector<Int> f_table = make_f_table(f, n);

  const Rational b1 = Rational(f_table[1]);
  const Rational b2 = share_of(x, f_table);
  const Rational b3 = share_of(y, f_table);
  for (const Rational& c : cost_grid) {
    if (c <= 0) throw std::invalid_argument("grid costs must be positive");
    if (c == b1 || c == b2 || c == b3)
      throw std::invalid_argument(
          "grid cost lies exactly on a regime boundary: " + format_rational(c));
  }

  GeneralizedStar star = build_generalized_star(n, k);
  const std::vector<std::int64_t> f64 =
      detail::narrow_f_table(f_table);
  SubgameTables t =
      build_subgame_tables(star.network, n_byzantine, n_attacked, f64);

  std::uint32_t core_mask = 0;
  for (NodeId v : star.core) core_mask |= std::uint32_t(1) << v;
  const std::uint32_t full_mask = (std::uint32_t(1) << n) - 1;

  StarCharacterizationReport report;
  report.n = n;
  report.k = k;
  report.x = x;
  report.y = y;

  for (const Rational& c : cost_grid) {
    RegimeCheck check;
    check.cost = c;
    std::optional<std::uint32_t> expected;
    if (c < b1) {
      check.regime = "all-protected";
      expected = full_mask;
    } else if (c < b2) {
      check.regime = "core-protected";
      expected = core_mask;
    } else if (c > b3) {
      check.regime = "none-protected";
      expected = 0;
    } else {
      check.regime = "uncharacterized";
    }
    if (expected) {
      check.characterized = true;
      std::vector<std::uint32_t> masks = equilibrium_masks(t, f_table, c);
      check.pass =
          masks.size() == 1 && masks.front() == *expected;
      if (!check.pass) {
        std::ostringstream detail;
        if (masks.empty()) {
          detail << "no pure equilibrium";
        } else {
          detail << masks.size() << " equilibria; masks:";
          for (std::size_t i = 0; i < masks.size() && i < 4; ++i)
            detail << " " << masks[i];
        }
        detail << "; expected mask " << *expected;
        check.detail = detail.str();
      }
    } else {
      check.detail = "cost inside (f(x)/x, f(y)/y); proposition is silent";
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

std::vector<Rational> default_characterization_grid(int n, int k,
                                                    int n_byzantine,
                                                    int n_attacked,
                                                    const ValueFunction& f) {
  const int x = n / k - n_attacked + 1;
  const int y = n - n_byzantine * (n / k);
  if (x < 2) throw std::invalid_argument("requires x >= 2");
  const Rational b1 = Rational(f(1));
  const Rational b2 = Rational(f(x), x);
  const Rational b3 = Rational(f(y), y);
  std::vector<Rational> grid;
  auto add_interval = [&](const Rational& lo, const Rational& hi) {
    for (int i = 1; i <= 6; ++i)
      grid.push_back(lo + (hi - lo) * Rational(i, 7));
  };
  add_interval(Rational(0), b1);
  add_interval(b1, b2);
  add_interval(b3, b3 * 2);
  return grid;
}

nlohmann::json ByzantineCoreAttackReport::to_json() const {
  nlohmann::json j = {{"configurations_checked", configurations_checked},
                      {"pass", pass}};
  if (!pass) j["counterexample"] = counterexample;
  return j;
}

ByzantineCoreAttackReport verify_byzantine_core_attack(
    int n, int k, int n_byzantine, int n_attacked, const ValueFunction& f,
    int trials, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("requires 1 <= k <= n");
  if (n / k < 2) throw std::invalid_argument("requires floor(n/k) >= 2");
  if (n < 3) throw std::invalid_argument("requires n >= 3");
  if (n_byzantine < 1 || n_byzantine >= n || n_attacked < 1 || n_attacked > n)
    throw std::invalid_argument("invalid byzantine or attack count");
  if (trials == 0 && n > 16)
    throw limit_error("exhaustive defense enumeration supports n <= 16; "
                      "pass trials > 0 to sample");

  const std::vector<Int> f_table = make_f_table(f, n);
  const std::vector<std::int64_t> f64 = detail::narrow_f_table(f_table);
  GeneralizedStar star = build_generalized_star(n, k);
  const MaskGraph mg = MaskGraph::from(star.network);

  std::vector<std::uint64_t> deltas;
  if (trials == 0) {
    deltas.resize(std::size_t(1) << n);
    for (std::size_t d = 0; d < deltas.size(); ++d) deltas[d] = d;
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i)
      deltas.push_back(rng() & ((std::uint64_t(1) << n) - 1));
  }

  ByzantineCoreAttackReport report;
  detail::AttackEval eval;
  std::vector<int> others;

  auto check_config = [&](std::uint64_t delta, NodeId b,
                          std::uint64_t byz_mask) -> bool {
    detail::evaluate_attacks(mg, f64.data(), delta, byz_mask & delta,
                             n_attacked, eval);
    ++report.configurations_checked;
    const std::uint64_t b_bit = std::uint64_t(1) << b;
    for (std::uint64_t destroyed : eval.best_destroyed) {
      if (!(destroyed & b_bit)) {
        std::ostringstream msg;
        msg << "delta mask " << delta << ", byzantine mask " << byz_mask
            << ", core node " << b << ": best response with destroyed mask "
            << destroyed << " spares the byzantine core node";
        report.counterexample = msg.str();
        report.pass = false;
        return false;
      }
    }
    return true;
  };

  for (std::uint64_t delta : deltas) {
    for (NodeId b : star.core) {
      // Every byzantine placement containing core node b.
      others.clear();
      for (int v = 0; v < n; ++v)
        if (v != b) others.push_back(v);
      const std::uint64_t b_bit = std::uint64_t(1) << b;
      auto rec = [&](auto&& self, std::size_t idx, int left,
                     std::uint64_t byz) -> bool {
        if (left == 0) return check_config(delta, b, byz);
        for (std::size_t i = idx; i < others.size(); ++i)
          if (!self(self, i + 1, left - 1,
                    byz | (std::uint64_t(1) << others[i])))
            return false;
        return true;
      };
      if (!rec(rec, 0, n_byzantine - 1, b_bit)) return report;
    }
  }
  return report;
}

namespace {

/// Worst-equilibrium designer value of the protection subgame on one design.
struct MemberValue {
  bool any = false;
  Rational value;
};

MemberValue member_min_equilibrium(const Network& g,
                                   const std::vector<NodeId>& core,
                                   const GameConfig& cfg,
                                   const std::vector<std::int64_t>& f64) {
  const int n = g.label_count();
  MemberValue out;
  if (n <= 20) {
    SubgameTables t =
        build_subgame_tables(g, cfg.byzantine_count(), cfg.attack_count(), f64);
    for (std::uint32_t mask : equilibrium_masks(t, cfg.f_table(), cfg.cost())) {
      Rational value = Rational(t.min_phi[mask]) -
                       Rational(std::popcount(mask)) * cfg.cost();
      if (!out.any || value < out.value) {
        out.value = std::move(value);
        out.any = true;
      }
    }
    return out;
  }

  // Above the enumeration limit: core/periphery-uniform candidate profiles,
  // each verified exactly against all single-node deviations.
  const MaskGraph mg = MaskGraph::from(g);
  std::uint64_t core_mask = 0;
  for (NodeId v : core) core_mask |= std::uint64_t(1) << v;
  const std::uint64_t full = mg.all;
  std::vector<std::uint64_t> candidates{0, core_mask, full, full & ~core_mask};
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  detail::ProfileStats stats, flip_stats;
  for (std::uint64_t mask : candidates) {
    detail::profile_stats(mg, f64.data(), mask, cfg.byzantine_count(),
                          cfg.attack_count(), true, stats);
    bool stable = true;
    for (int v = 0; v < n && stable; ++v) {
      const int bit = static_cast<int>((mask >> v) & 1);
      detail::profile_stats(mg, f64.data(), mask ^ (std::uint64_t(1) << v),
                            cfg.byzantine_count(), cfg.attack_count(), true,
                            flip_stats);
      Rational current = share_of(stats.levels[v], cfg.f_table()) -
                         (bit ? cfg.cost() : Rational(0));
      Rational deviated = share_of(flip_stats.levels[v], cfg.f_table()) -
                          (bit ? Rational(0) : cfg.cost());
      stable = current >= deviated;
    }
    if (!stable) continue;
    Rational value = Rational(stats.min_phi) -
                     Rational(std::popcount(mask)) * cfg.cost();
    if (!out.any || value < out.value) {
      out.value = std::move(value);
      out.any = true;
    }
  }
  return out;
}

Network clique_components(int n, const std::vector<int>& parts) {
  Network g(n);
  int at = 0;
  for (int p : parts) {
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) g.add_edge(at + i, at + j);
    at += p;
  }
  return g;
}

}  // namespace

nlohmann::json PoAReport::to_json() const {
  nlohmann::json j = {{"n", n},
                      {"cost", format_rational(cost)},
                      {"numerator", format_rational(numerator)},
                      {"denominator", format_rational(denominator)},
                      {"family", family},
                      {"worst_design", worst_design},
                      {"below_theorem_regime", below_theorem_regime}};
  j["ratio"] = ratio ? nlohmann::json(format_rational(*ratio))
                     : nlohmann::json(nullptr);
  return j;
}

PoAReport price_of_anarchy(int n, const Rational& cost, int n_byzantine,
                           int n_attacked, const ValueFunction& f) {
  GameConfig cfg(n, n_byzantine, n_attacked, cost, f);
  const std::vector<std::int64_t> f64 = detail::narrow_f_table(cfg.f_table());

  PoAReport report;
  report.n = n;
  report.cost = cost;
  report.family = "generalized k-stars (k = n_B+1 .. n) plus unprotected "
                  "equal splits";

  if (n_byzantine == 1 && n_attacked == 1)
    report.numerator = optimal_design(n, cost, f).payoff;
  else
    report.numerator = brute_force_optimal(cfg, SearchMode::Structured).payoff;

  bool any = false;
  for (int k = n_byzantine + 1; k <= n; ++k) {
    GeneralizedStar star = build_generalized_star(n, k);
    MemberValue mv = member_min_equilibrium(star.network, star.core, cfg, f64);
    if (!mv.any) continue;
    if (!any || mv.value > report.denominator) {
      report.denominator = mv.value;
      report.worst_design = "generalized " + std::to_string(k) + "-star";
      any = true;
    }
  }
  std::vector<std::pair<std::vector<int>, std::string>> splits;
  if (n % 2 == 0)
    splits.push_back({{n / 2, n / 2}, "unprotected split " +
                                          std::to_string(n / 2) + "+" +
                                          std::to_string(n / 2)});
  else
    splits.push_back({{(n - 1) / 2, (n - 1) / 2, 1},
                      "unprotected split " + std::to_string((n - 1) / 2) +
                          "+" + std::to_string((n - 1) / 2) + "+1"});
  if (n % 6 == 3)
    splits.push_back({{n / 3, n / 3, n / 3},
                      "unprotected split into three of size " +
                          std::to_string(n / 3)});
  for (const auto& [parts, desc] : splits) {
    Network g = clique_components(n, parts);
    MemberValue mv = member_min_equilibrium(g, {}, cfg, f64);
    if (!mv.any) continue;
    if (!any || mv.value > report.denominator) {
      report.denominator = mv.value;
      report.worst_design = desc;
      any = true;
    }
  }
  if (!any)
    throw std::runtime_error(
        "no pure equilibrium found on any member of the design family");

  if (report.denominator > 0)
    report.ratio = report.numerator / report.denominator;

  // Theorem regime: N >= 1 + n_A with f(x)/x > c for all x >= N - n_A + 1;
  // f(x)/x is nondecreasing, so the smallest admissible point suffices.
  int m = -1;
  for (int s = 1; s <= n; ++s)
    if (Rational(cfg.f_table()[static_cast<std::size_t>(s)], s) > cost) {
      m = s;
      break;
    }
  if (m < 0) {
    report.below_theorem_regime = true;
  } else {
    const int N = std::max(1 + n_attacked, m + n_attacked - 1);
    report.below_theorem_regime = n < (n_byzantine + 1) * (N + 1);
  }
  return report;
}

nlohmann::json PoATrendReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : points) arr.push_back(p.to_json());
  return {{"points", arr},
          {"hypothesis_warning", hypothesis_warning},
          {"hypothesis_detail", hypothesis_detail}};
}

PoATrendReport poa_trend(const Rational& cost, const std::vector<int>& ns,
                         int n_byzantine, int n_attacked,
                         const ValueFunction& f) {
  if (ns.empty()) throw std::invalid_argument("empty n sequence");
  PoATrendReport report;
  for (int n : ns)
    report.points.push_back(
        price_of_anarchy(n, cost, n_byzantine, n_attacked, f));

  // Finite-range stand-in for lim f(n)/f(n-t) = 1: at the largest n, the
  // ratio at the proof's largest offset t must stay below 3/2.
  const int n_top = *std::max_element(ns.begin(), ns.end());
  int m = -1;
  for (int s = 1; s <= n_top; ++s)
    if (Rational(f(s), s) > cost) {
      m = s;
      break;
    }
  std::ostringstream detail;
  if (m < 0) {
    report.hypothesis_warning = true;
    detail << "f(x)/x never exceeds c on [1, " << n_top
           << "]; theorem hypothesis range check impossible";
  } else {
    const int N = std::max(1 + n_attacked, m + n_attacked - 1);
    const int t = n_byzantine * (2 * N + 3) + n_attacked;
    if (n_top - t < 1) {
      report.hypothesis_warning = true;
      detail << "largest n too small for the offset t = " << t;
    } else {
      const Rational ratio = Rational(f(n_top), f(n_top - t));
      report.hypothesis_warning = ratio > Rational(3, 2);
      detail << "f(" << n_top << ")/f(" << n_top - t
             << ") = " << format_rational(ratio)
             << (report.hypothesis_warning ? " > 3/2" : " <= 3/2");
    }
  }
  report.hypothesis_detail = detail.str();
  return report;
}

}  // namespace netdef
