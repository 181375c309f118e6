#pragma once

// Bitmask evaluation core for the exhaustive game computations. Node sets are
// uint64_t masks (node count <= 62). Values are carried as int64_t, which the
// callers guarantee is exact by bounding the value function table.

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "netdefend/game.hpp"

namespace netdef::detail {

inline constexpr int kMaxMaskNodes = 62;

struct MaskGraph {
  int n = 0;             // label space
  std::uint64_t all = 0; // present nodes
  std::uint64_t adj[kMaxMaskNodes] = {};

  static MaskGraph from(const Network& g) {
    if (g.label_count() > kMaxMaskNodes)
      throw limit_error("game engine supports at most 62 nodes");
    MaskGraph m;
    m.n = g.label_count();
    for (NodeId v : g.nodes()) m.all |= std::uint64_t(1) << v;
    for (auto [u, v] : g.edges()) {
      m.adj[u] |= std::uint64_t(1) << v;
      m.adj[v] |= std::uint64_t(1) << u;
    }
    return m;
  }
};

/// Builds the int64 f table for sizes [0, n]; throws when values are too
/// large for overflow-free summation of up to n+1 components.
inline std::vector<std::int64_t> narrow_f_table(const std::vector<Int>& table) {
  const Int limit =
      Int(std::numeric_limits<std::int64_t>::max()) / Int(table.size() + 1);
  std::vector<std::int64_t> out;
  out.reserve(table.size());
  for (const Int& v : table) {
    if (v < 0 || v > limit)
      throw limit_error("value function values too large for the engine");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

inline int components_of(const MaskGraph& g, std::uint64_t sub,
                         std::uint64_t* comps) {
  int cnt = 0;
  std::uint64_t rem = sub;
  while (rem) {
    std::uint64_t frontier = rem & (~rem + 1);
    std::uint64_t comp = 0;
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
    comps[cnt++] = comp;
    rem &= ~comp;
  }
  return cnt;
}

inline std::int64_t phi_of(const MaskGraph& g, std::uint64_t sub,
                           const std::int64_t* f64) {
  std::uint64_t comps[kMaxMaskNodes];
  int cnt = components_of(g, sub, comps);
  std::int64_t total = 0;
  for (int i = 0; i < cnt; ++i) total += f64[std::popcount(comps[i])];
  return total;
}

/// Result of the adversary's optimization for one (defense, byzantine-in-
/// defense) pair: the minimal residual value and every distinct destroyed set
/// achieving it.
struct AttackEval {
  std::int64_t min_phi = 0;
  std::vector<std::uint64_t> best_destroyed;
};

/// Enumerates the distinct destroyed sets reachable with n_a attacked nodes.
/// A destroyed set is a union of components of the attack graph; attacks on
/// protected genuine nodes destroy nothing, so the empty union is feasible
/// whenever enough such nodes exist.
template <class Fn>
void for_each_destroyed(const MaskGraph& g, std::uint64_t delta,
                        std::uint64_t byz_in_delta, int n_a, Fn&& consider) {
  const std::uint64_t removed = delta & ~byz_in_delta;
  const std::uint64_t attack_sub = g.all & ~removed;
  const int zero_nodes = std::popcount(removed);

  std::uint64_t comps[kMaxMaskNodes];
  const int m = components_of(g, attack_sub, comps);

  // Choose up to n_a components (each contributes at least one attacked
  // node); remaining attacks land on protected genuine nodes or inside the
  // chosen components.
  struct Rec {
    Fn& consider;
    const std::uint64_t* comps;
    int m, n_a, zero_nodes;
    void run(int idx, int taken, int size_taken, std::uint64_t destroyed) {
      if (taken <= n_a && n_a <= size_taken + zero_nodes) consider(destroyed);
      if (taken == n_a) return;
      for (int i = idx; i < m; ++i)
        run(i + 1, taken + 1, size_taken + std::popcount(comps[i]),
            destroyed | comps[i]);
    }
  } rec{consider, comps, m, n_a, zero_nodes};
  rec.run(0, 0, 0, 0);
}

inline void evaluate_attacks(const MaskGraph& g, const std::int64_t* f64,
                             std::uint64_t delta, std::uint64_t byz_in_delta,
                             int n_a, AttackEval& out) {
  out.min_phi = std::numeric_limits<std::int64_t>::max();
  out.best_destroyed.clear();
  for_each_destroyed(g, delta, byz_in_delta, n_a, [&](std::uint64_t destroyed) {
    const std::int64_t phi = phi_of(g, g.all & ~destroyed, f64);
    if (phi < out.min_phi) {
      out.min_phi = phi;
      out.best_destroyed.clear();
    }
    if (phi == out.min_phi) out.best_destroyed.push_back(destroyed);
  });
  if (out.best_destroyed.empty())
    throw std::logic_error("no feasible attack set");
}

/// Per-node worst gross outcome over the given best responses: 0 when the
/// node can be destroyed, otherwise the smallest surviving component size
/// (f(s)/s is nondecreasing in s, so the size orders the share).
inline void worst_levels(const MaskGraph& g, const AttackEval& eval,
                         std::uint8_t* levels) {
  for (int v = 0; v < g.n; ++v) levels[v] = 255;
  std::uint64_t comps[kMaxMaskNodes];
  std::uint8_t tmp[kMaxMaskNodes];
  for (std::uint64_t destroyed : eval.best_destroyed) {
    const std::uint64_t resid = g.all & ~destroyed;
    const int cnt = components_of(g, resid, comps);
    for (int i = 0; i < cnt; ++i) {
      const std::uint8_t size = static_cast<std::uint8_t>(std::popcount(comps[i]));
      std::uint64_t c = comps[i];
      while (c) {
        tmp[std::countr_zero(c)] = size;
        c &= c - 1;
      }
    }
    std::uint64_t d = destroyed;
    while (d) {
      tmp[std::countr_zero(d)] = 0;
      d &= d - 1;
    }
    std::uint64_t p = g.all;
    while (p) {
      const int v = std::countr_zero(p);
      p &= p - 1;
      if (tmp[v] < levels[v]) levels[v] = tmp[v];
    }
  }
}

/// Pessimistic statistics of one type-independent profile: the designer's
/// worst best-response residual value and, per node, the worst gross level
/// over byzantine placements avoiding that node.
///
/// Byzantine placements are grouped by their intersection with the defense
/// set; placements sharing the intersection produce the same attack graph
/// and therefore the same plays.
struct ProfileStats {
  std::int64_t min_phi = 0;
  std::uint8_t levels[kMaxMaskNodes] = {};
};

inline void profile_stats(const MaskGraph& g, const std::int64_t* f64,
                          std::uint64_t delta, int n_b, int n_a,
                          bool want_levels, ProfileStats& out) {
  const int present = std::popcount(g.all);
  const int outside = present - std::popcount(delta);
  out.min_phi = std::numeric_limits<std::int64_t>::max();
  for (int v = 0; v < g.n; ++v) out.levels[v] = 255;

  AttackEval eval;
  std::uint8_t lv[kMaxMaskNodes];

  auto handle_subset = [&](std::uint64_t s, int size) {
    const int need = n_b - size;  // byzantine nodes drawn from outside delta
    if (need < 0 || need > outside) return;
    evaluate_attacks(g, f64, delta, s, n_a, eval);
    if (eval.min_phi < out.min_phi) out.min_phi = eval.min_phi;
    if (!want_levels) return;
    worst_levels(g, eval, lv);
    // A placement avoiding node j exists iff j is not in s and, when every
    // outside node is needed to fill the placement, j is protected.
    const bool outside_slack = need <= outside - 1;
    std::uint64_t eligible = outside_slack ? (g.all & ~s) : (delta & ~s);
    while (eligible) {
      const int v = std::countr_zero(eligible);
      eligible &= eligible - 1;
      if (lv[v] < out.levels[v]) out.levels[v] = lv[v];
    }
  };

  // All subsets s of delta with |s| <= n_b.
  std::uint64_t bits[kMaxMaskNodes];
  int nbits = 0;
  for (std::uint64_t d = delta; d; d &= d - 1)
    bits[nbits++] = d & (~d + 1);
  struct Rec {
    decltype(handle_subset)& handle;
    const std::uint64_t* bits;
    int nbits, n_b;
    void run(int idx, int size, std::uint64_t s) {
      handle(s, size);
      if (size == n_b) return;
      for (int i = idx; i < nbits; ++i) run(i + 1, size + 1, s | bits[i]);
    }
  } rec{handle_subset, bits, nbits, n_b};
  rec.run(0, 0, 0);

  if (out.min_phi == std::numeric_limits<std::int64_t>::max())
    throw std::invalid_argument("no feasible byzantine placement");
}

}  // namespace netdef::detail
