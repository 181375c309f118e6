#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdefend/game.hpp"
#include "netdefend/star.hpp"

namespace netdef {

/// w_k(n) plus the side information needed to rebuild the witness network.
struct WValue {
  Int value;
  int best_q = -1;            // k = 2 only: smallest maximizing q
  bool with_singleton = false;  // k = 2: the B_q + f(1) term won
  bool triple_split = false;    // k = 0, n mod 6 = 3: three n/3 components won
};

/// Network value the designer secures with k protected nodes in the canonical
/// structures (k in {0..n}, w_1 = w_0). Throws std::invalid_argument for k
/// out of range.
WValue w_value(int n, int k, const ValueFunction& f);

struct DesignOutcome {
  int k = 0;
  Network network;
  std::vector<NodeId> delta;
  Rational payoff;
  std::vector<int> alternatives;  // all k in K*(n, c), sorted
  std::string structure;

  nlohmann::json to_json() const;
};

/// Closed-form optimal centralized defense for n_B = n_A = 1: computes
/// K*(n,c) = argmax_k w_k(n) - kc, builds the canonical witness network, and
/// cross-checks its pessimistic designer utility against the formula.
/// Throws unsupported_error when n_byzantine or n_attacked differ from 1.
DesignOutcome optimal_design(int n, const Rational& cost,
                             const ValueFunction& f, int n_byzantine = 1,
                             int n_attacked = 1);

struct ThresholdRow {
  Rational c_low;                  // 0 for the first row
  std::optional<Rational> c_high;  // empty for the unbounded last row
  int k = 0;
  Int w_k;
  std::string structure;
};

/// Exact cost intervals of the upper envelope of the lines c -> w_k(n) - kc.
/// Intervals partition (0, inf); dominated k never appear. n_B = n_A = 1.
std::vector<ThresholdRow> threshold_table(int n, const ValueFunction& f);

std::string threshold_table_csv(int n, const ValueFunction& f,
                                const std::vector<ThresholdRow>& rows,
                                const std::string& config_line);
nlohmann::json threshold_table_json(int n, const std::vector<ThresholdRow>& rows);

enum class SearchMode { AllGraphs, Structured };

/// Independent oracle: maximizes the pessimistic designer utility by search.
/// AllGraphs enumerates every graph and defense set (n <= 6); Structured
/// searches protected generalized k-stars plus up to three unprotected
/// components (n <= 60). Works for general (n_B, n_A).
DesignOutcome brute_force_optimal(const GameConfig& cfg, SearchMode mode);

/// Step 1 of the star canonicalization: completes the defense set into a
/// clique.
ProtectedNetwork defense_clique(const ProtectedNetwork& pn);

/// Step 2: for each protected node i, detaches the unprotected nodes
/// reachable from i through unprotected nodes and reattaches each to i with a
/// single edge.
ProtectedNetwork cloud_creation(const ProtectedNetwork& pn);

/// Step 3: moves periphery nodes pairwise between protected nodes while some
/// load exceeds another by 2 or more.
ProtectedNetwork rebalance_loads(const ProtectedNetwork& pn);

/// Full transformation; the protected component of the output is a
/// generalized |Delta|-star with the defense set as its core, and the
/// pessimistic designer utility never decreases (n_B = n_A = 1). Requires
/// |Delta| >= 2.
ProtectedNetwork canonicalize_to_star(const ProtectedNetwork& pn,
                                      const GameConfig& cfg);

}  // namespace netdef
