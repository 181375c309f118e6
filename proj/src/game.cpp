#include "netdefend/game.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "detail/mask_engine.hpp"

namespace netdef {

namespace {

using detail::MaskGraph;

std::uint64_t mask_of(const std::vector<NodeId>& nodes) {
  std::uint64_t m = 0;
  for (NodeId v : nodes) m |= std::uint64_t(1) << v;
  return m;
}

Int phi_int(const MaskGraph& g, std::uint64_t sub, const std::vector<Int>& f) {
  std::uint64_t comps[detail::kMaxMaskNodes];
  const int cnt = detail::components_of(g, sub, comps);
  Int total = 0;
  for (int i = 0; i < cnt; ++i)
    total += f[static_cast<std::size_t>(std::popcount(comps[i]))];
  return total;
}

/// All subsets s of delta with |s| <= n_b, each passed with its size.
template <class Fn>
void for_each_delta_subset(std::uint64_t delta, int n_b, Fn&& fn) {
  std::uint64_t bits[detail::kMaxMaskNodes];
  int nbits = 0;
  for (std::uint64_t d = delta; d; d &= d - 1) bits[nbits++] = d & (~d + 1);
  struct Rec {
    Fn& fn;
    const std::uint64_t* bits;
    int nbits, n_b;
    void run(int idx, int size, std::uint64_t s) {
      fn(s, size);
      if (size == n_b) return;
      for (int i = idx; i < nbits; ++i) run(i + 1, size + 1, s | bits[i]);
    }
  } rec{fn, bits, nbits, n_b};
  rec.run(0, 0, 0);
}

/// Best-response attack evaluation with exact values: the minimal residual
/// value and every destroyed set achieving it.
struct IntEval {
  Int min_phi;
  std::vector<std::uint64_t> best_destroyed;
};

IntEval evaluate_attacks_int(const MaskGraph& g, const std::vector<Int>& f,
                             std::uint64_t delta, std::uint64_t byz_in_delta,
                             int n_a) {
  IntEval out;
  bool first = true;
  detail::for_each_destroyed(
      g, delta, byz_in_delta, n_a, [&](std::uint64_t destroyed) {
        Int phi = phi_int(g, g.all & ~destroyed, f);
        if (first || phi < out.min_phi) {
          out.min_phi = std::move(phi);
          out.best_destroyed.clear();
          first = false;
          out.best_destroyed.push_back(destroyed);
        } else if (phi == out.min_phi) {
          out.best_destroyed.push_back(destroyed);
        }
      });
  if (out.best_destroyed.empty())
    throw std::logic_error("no feasible attack set");
  return out;
}

int component_size_of(const MaskGraph& g, std::uint64_t sub, NodeId v) {
  std::uint64_t comp = 0;
  std::uint64_t frontier = std::uint64_t(1) << v;
  while (frontier) {
    comp |= frontier;
    std::uint64_t next = 0;
    std::uint64_t f = frontier;
    while (f) {
      next |= g.adj[std::countr_zero(f)];
      f &= f - 1;
    }
    frontier = next & sub & ~comp;
  }
  return std::popcount(comp);
}

std::vector<Int> binomials(int n, int k_max) {
  // Row of Pascal's triangle values C(n, 0..k_max).
  std::vector<Int> row(static_cast<std::size_t>(k_max) + 1, 0);
  row[0] = 1;
  for (int k = 1; k <= k_max; ++k)
    row[static_cast<std::size_t>(k)] =
        row[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  return row;
}

Rational share_of(int level, const std::vector<Int>& f) {
  if (level == 0) return Rational(0);
  return Rational(f[static_cast<std::size_t>(level)], level);
}

}  // namespace

GameConfig::GameConfig(int n, int n_byzantine, int n_attacked, Rational cost,
                       ValueFunction f)
    : n_(n),
      n_b_(n_byzantine),
      n_a_(n_attacked),
      cost_(std::move(cost)),
      f_(std::move(f)) {
  if (n_ < 3) throw std::invalid_argument("game requires n >= 3");
  if (n_b_ < 1 || n_b_ >= n_)
    throw std::invalid_argument("byzantine count must satisfy 1 <= n_B < n");
  if (n_a_ < 1 || n_a_ > n_)
    throw std::invalid_argument("attack count must satisfy 1 <= n_A <= n");
  if (cost_ <= 0) throw std::invalid_argument("protection cost must be > 0");
  ValidationReport report = validate_value_function(f_, n_);
  for (const auto& check : report.checks)
    if (!check.pass)
      throw std::invalid_argument("value function fails assumption '" +
                                  check.name + "' at x = " +
                                  std::to_string(check.witness));
  f_table_.reserve(static_cast<std::size_t>(n_) + 1);
  for (int s = 0; s <= n_; ++s) f_table_.push_back(f_(s));
}

ProtectedNetwork make_protected(Network g, std::vector<NodeId> delta) {
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  for (NodeId v : delta)
    if (!g.has_node(v))
      throw std::invalid_argument("defense set contains unknown node " +
                                  std::to_string(v));
  return ProtectedNetwork{std::move(g), std::move(delta)};
}

Network attack_graph(const ProtectedNetwork& pn,
                     const std::vector<NodeId>& byzantine) {
  for (NodeId b : byzantine)
    if (!pn.g.has_node(b))
      throw std::invalid_argument("byzantine set contains unknown node " +
                                  std::to_string(b));
  std::set<NodeId> byz(byzantine.begin(), byzantine.end());
  std::vector<NodeId> removed;
  for (NodeId v : pn.delta)
    if (!byz.count(v)) removed.push_back(v);
  return pn.g.without_nodes(removed);
}

PlayOutcome residual_network(const ProtectedNetwork& pn,
                             const std::vector<NodeId>& byzantine,
                             const std::vector<NodeId>& attack,
                             const GameConfig& cfg) {
  std::set<NodeId> byz(byzantine.begin(), byzantine.end());
  std::set<NodeId> attacked(attack.begin(), attack.end());
  if (static_cast<int>(byz.size()) != cfg.byzantine_count())
    throw std::invalid_argument("byzantine set must have n_B distinct nodes");
  if (static_cast<int>(attacked.size()) != cfg.attack_count())
    throw std::invalid_argument("attack set must have n_A distinct nodes");
  for (NodeId v : attacked)
    if (!pn.g.has_node(v))
      throw std::invalid_argument("attack set contains unknown node " +
                                  std::to_string(v));
  if (pn.g.node_count() > cfg.n())
    throw std::invalid_argument("network larger than the configured n");

  const Network ag = attack_graph(pn, byzantine);
  std::set<NodeId> dead;
  for (const auto& comp : ag.components())
    for (NodeId a : attacked)
      if (std::binary_search(comp.begin(), comp.end(), a)) {
        dead.insert(comp.begin(), comp.end());
        break;
      }

  PlayOutcome out;
  out.destroyed.assign(dead.begin(), dead.end());
  out.residual = pn.g.without_nodes(out.destroyed);

  Int phi = 0;
  const auto& f = cfg.f_table();
  std::map<NodeId, Rational> shares;
  for (const auto& comp : out.residual.components()) {
    const int size = static_cast<int>(comp.size());
    phi += f[static_cast<std::size_t>(size)];
    for (NodeId v : comp) shares[v] = share_of(size, f);
  }

  out.designer_payoff =
      Rational(phi) - Rational(static_cast<int>(pn.delta.size())) * cfg.cost();
  out.adversary_payoff = -Rational(phi);

  std::set<NodeId> prot(pn.delta.begin(), pn.delta.end());
  for (NodeId v : pn.g.nodes()) {
    if (byz.count(v)) {
      out.node_payoffs[v] = out.adversary_payoff;
    } else if (dead.count(v)) {
      out.node_payoffs[v] = Rational(0);
    } else {
      Rational u = shares.at(v);
      if (prot.count(v)) u -= cfg.cost();
      out.node_payoffs[v] = std::move(u);
    }
  }
  return out;
}

nlohmann::json PlayOutcome::to_json() const {
  nlohmann::json payoffs = nlohmann::json::object();
  for (const auto& [v, u] : node_payoffs)
    payoffs[std::to_string(v)] = format_rational(u);
  return {{"residual", residual.to_json()},
          {"destroyed", destroyed},
          {"designer_payoff", format_rational(designer_payoff)},
          {"adversary_payoff", format_rational(adversary_payoff)},
          {"node_payoffs", payoffs}};
}

std::vector<std::vector<NodeId>> best_response_attacks(
    const ProtectedNetwork& pn, const std::vector<NodeId>& byzantine,
    const GameConfig& cfg) {
  std::set<NodeId> byz(byzantine.begin(), byzantine.end());
  if (static_cast<int>(byz.size()) != cfg.byzantine_count())
    throw std::invalid_argument("byzantine set must have n_B distinct nodes");
  if (pn.g.node_count() > cfg.n())
    throw std::invalid_argument("network larger than the configured n");

  const MaskGraph mg = MaskGraph::from(pn.g);
  const std::uint64_t delta = mask_of(pn.delta);
  const std::uint64_t byz_mask = mask_of(byzantine) & mg.all;
  const std::uint64_t attack_sub = mg.all & ~(delta & ~byz_mask);
  std::uint64_t comps[detail::kMaxMaskNodes];
  const int m = detail::components_of(mg, attack_sub, comps);
  std::uint64_t comp_of[detail::kMaxMaskNodes] = {};
  for (int i = 0; i < m; ++i)
    for (std::uint64_t c = comps[i]; c; c &= c - 1)
      comp_of[std::countr_zero(c)] = comps[i];

  const std::vector<NodeId> nodes = pn.g.nodes();
  const int n_a = cfg.attack_count();
  if (n_a > static_cast<int>(nodes.size()))
    throw std::invalid_argument("attack count exceeds the node count");

  const auto& f = cfg.f_table();
  Int best_phi;
  bool first = true;
  std::vector<std::vector<NodeId>> best;
  std::vector<NodeId> chosen;

  // Lexicographic enumeration of attack sets.
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (static_cast<int>(chosen.size()) == n_a) {
      std::uint64_t destroyed = 0;
      for (NodeId a : chosen)
        destroyed |= comp_of[a];  // zero when a is protected genuine
      Int phi = phi_int(mg, mg.all & ~destroyed, f);
      if (first || phi < best_phi) {
        best_phi = std::move(phi);
        best.clear();
        first = false;
        best.push_back(chosen);
      } else if (phi == best_phi) {
        best.push_back(chosen);
      }
      return;
    }
    const int missing = n_a - static_cast<int>(chosen.size());
    for (std::size_t i = idx; i + static_cast<std::size_t>(missing) <= nodes.size(); ++i) {
      chosen.push_back(nodes[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

Rational pessimistic_designer_utility(const ProtectedNetwork& pn,
                                      const GameConfig& cfg) {
  if (pn.g.node_count() > cfg.n())
    throw std::invalid_argument("network larger than the configured n");
  const MaskGraph mg = MaskGraph::from(pn.g);
  const std::uint64_t delta = mask_of(pn.delta);
  const int present = std::popcount(mg.all);
  const int outside = present - static_cast<int>(pn.delta.size());
  const auto& f = cfg.f_table();

  Int worst;
  bool found = false;
  for_each_delta_subset(delta, cfg.byzantine_count(),
                        [&](std::uint64_t s, int size) {
    const int need = cfg.byzantine_count() - size;
    if (need < 0 || need > outside) return;
    detail::for_each_destroyed(mg, delta, s, cfg.attack_count(),
                               [&](std::uint64_t destroyed) {
      Int phi = phi_int(mg, mg.all & ~destroyed, f);
      if (!found || phi < worst) {
        worst = std::move(phi);
        found = true;
      }
    });
  });
  if (!found)
    throw std::invalid_argument("no feasible byzantine placement");
  return Rational(worst) -
         Rational(static_cast<int>(pn.delta.size())) * cfg.cost();
}

Rational pessimistic_node_utility(const Network& g,
                                  const std::vector<std::uint8_t>& strategies,
                                  NodeId j, const GameConfig& cfg) {
  if (static_cast<int>(strategies.size()) != g.label_count())
    throw std::invalid_argument("strategy vector must cover every label");
  if (!g.has_node(j)) throw std::invalid_argument("node is not present");
  if (g.node_count() > cfg.n())
    throw std::invalid_argument("network larger than the configured n");

  const MaskGraph mg = MaskGraph::from(g);
  std::uint64_t delta = 0;
  for (NodeId v : g.nodes())
    if (strategies[static_cast<std::size_t>(v)])
      delta |= std::uint64_t(1) << v;
  const bool j_protected = (delta >> j) & 1;
  const std::uint64_t j_bit = std::uint64_t(1) << j;
  const int present = std::popcount(mg.all);
  const int outside = present - std::popcount(delta);
  const auto& f = cfg.f_table();

  int min_level = -1;
  for_each_delta_subset(delta, cfg.byzantine_count(),
                        [&](std::uint64_t s, int size) {
    if (s & j_bit) return;
    const int need = cfg.byzantine_count() - size;
    const int avail = outside - (j_protected ? 0 : 1);
    if (need < 0 || need > avail) return;
    IntEval eval = evaluate_attacks_int(mg, f, delta, s, cfg.attack_count());
    for (std::uint64_t destroyed : eval.best_destroyed) {
      const int level = (destroyed & j_bit)
                            ? 0
                            : component_size_of(mg, mg.all & ~destroyed, j);
      if (min_level < 0 || level < min_level) min_level = level;
    }
  });
  if (min_level < 0)
    throw std::invalid_argument("no byzantine placement avoids the node");

  Rational u = share_of(min_level, f);
  if (j_protected) u -= cfg.cost();
  return u;
}

ExpectedUtilities expected_utilities(const Network& g,
                                     const std::vector<std::uint8_t>& strategies,
                                     const GameConfig& cfg) {
  if (static_cast<int>(strategies.size()) != g.label_count())
    throw std::invalid_argument("strategy vector must cover every label");
  if (g.node_count() > cfg.n())
    throw std::invalid_argument("network larger than the configured n");

  const MaskGraph mg = MaskGraph::from(g);
  std::uint64_t delta = 0;
  for (NodeId v : g.nodes())
    if (strategies[static_cast<std::size_t>(v)])
      delta |= std::uint64_t(1) << v;
  const int present = std::popcount(mg.all);
  const int n_b = cfg.byzantine_count();
  if (n_b >= present)
    throw std::invalid_argument("byzantine count must be below the node count");
  const int outside = present - std::popcount(delta);
  const auto& f = cfg.f_table();
  const std::vector<Int> c_out = binomials(outside, std::min(outside, n_b));
  // One fewer outside node is available when the evaluated node is outside
  // the defense set.
  const std::vector<Int> c_out1 =
      outside > 0 ? binomials(outside - 1, std::min(outside - 1, n_b))
                  : std::vector<Int>{Int(1)};

  Rational designer_sum = 0;
  std::vector<Rational> node_sum(static_cast<std::size_t>(g.label_count()), 0);

  for_each_delta_subset(delta, n_b, [&](std::uint64_t s, int size) {
    const int need = n_b - size;
    if (need < 0 || need > outside) return;
    IntEval eval = evaluate_attacks_int(mg, f, delta, s, cfg.attack_count());
    const Int weight_all = c_out[static_cast<std::size_t>(need)];
    designer_sum += Rational(weight_all) * Rational(eval.min_phi);

    // Average share per node over the tied best responses.
    const int bc = static_cast<int>(eval.best_destroyed.size());
    std::uint64_t comps[detail::kMaxMaskNodes];
    std::vector<Rational> avg(static_cast<std::size_t>(g.label_count()), 0);
    for (std::uint64_t destroyed : eval.best_destroyed) {
      const std::uint64_t resid = mg.all & ~destroyed;
      const int cnt = detail::components_of(mg, resid, comps);
      for (int i = 0; i < cnt; ++i) {
        const Rational sh = share_of(std::popcount(comps[i]), f);
        for (std::uint64_t c = comps[i]; c; c &= c - 1)
          avg[static_cast<std::size_t>(std::countr_zero(c))] += sh;
      }
    }
    for (NodeId v : g.nodes()) {
      if (s & (std::uint64_t(1) << v)) continue;
      const bool v_protected = (delta >> v) & 1;
      const int avail = outside - (v_protected ? 0 : 1);
      if (need > avail) continue;
      const Int& w = v_protected ? c_out[static_cast<std::size_t>(need)]
                                 : c_out1[static_cast<std::size_t>(need)];
      if (w == 0) continue;
      node_sum[static_cast<std::size_t>(v)] +=
          Rational(w) * avg[static_cast<std::size_t>(v)] / bc;
    }
  });

  const std::vector<Int> c_present = binomials(present, n_b);
  const std::vector<Int> c_present1 = binomials(present - 1, n_b);

  ExpectedUtilities out;
  out.designer = designer_sum / Rational(c_present[static_cast<std::size_t>(n_b)]) -
                 Rational(std::popcount(delta)) * cfg.cost();
  out.nodes.assign(static_cast<std::size_t>(g.label_count()), Rational(0));
  for (NodeId v : g.nodes()) {
    Rational u = node_sum[static_cast<std::size_t>(v)] /
                 Rational(c_present1[static_cast<std::size_t>(n_b)]);
    if ((delta >> v) & 1) u -= cfg.cost();
    out.nodes[static_cast<std::size_t>(v)] = std::move(u);
  }
  return out;
}

}  // namespace netdef
