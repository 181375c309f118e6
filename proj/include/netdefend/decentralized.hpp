#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netdefend/game.hpp"

namespace netdef {

enum class UtilityMode { Pessimistic, Expected };

struct EquilibriumProfile {
  std::vector<std::uint8_t> strategies;  // type-independent protection bits
  Rational designer_value;
  std::vector<Rational> node_utilities;
};

struct EquilibriumSet {
  std::vector<EquilibriumProfile> equilibria;  // sorted by strategy bit-vector
  bool any() const { return !equilibria.empty(); }
  nlohmann::json to_json() const;
};

/// Enumerates all 2^n type-independent pure profiles on g and keeps those
/// where no node, evaluated as genuine, can strictly gain by flipping her
/// bit. An empty result is the first-class "no pure equilibrium" outcome.
/// Throws limit_error for n > 20.
EquilibriumSet node_game_equilibria(const Network& g, const GameConfig& cfg,
                                    UtilityMode mode);

struct RegimeCheck {
  Rational cost;
  std::string regime;  // "all-protected", "core-protected", "none-protected",
                       // "uncharacterized"
  bool characterized = false;
  bool pass = false;  // meaningful only when characterized
  std::string detail;
};

struct StarCharacterizationReport {
  int n = 0, k = 0;
  int x = 0, y = 0;
  std::vector<RegimeCheck> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Builds the generalized k-star and checks the three-regime equilibrium
/// characterization at each grid cost. Requires n >= k >= n_B + 1 and
/// x = floor(n/k) - n_A + 1 >= 2; grid costs must avoid the regime
/// boundaries {f(1), f(x)/x, f(y)/y}.
StarCharacterizationReport verify_star_characterization(
    int n, int k, int n_byzantine, int n_attacked, const ValueFunction& f,
    const std::vector<Rational>& cost_grid);

/// Six interior points per characterized cost interval for the star above.
std::vector<Rational> default_characterization_grid(int n, int k,
                                                    int n_byzantine,
                                                    int n_attacked,
                                                    const ValueFunction& f);

struct ByzantineCoreAttackReport {
  int configurations_checked = 0;
  bool pass = true;
  std::string counterexample;
  nlohmann::json to_json() const;
};

/// On the generalized k-star, over all (or sampled) defense sets and
/// byzantine placements containing a core node, asserts that every adversary
/// best response infects that core node. Requires floor(n/k) >= 2.
/// trials = 0 means exhaustive over defense sets.
ByzantineCoreAttackReport verify_byzantine_core_attack(
    int n, int k, int n_byzantine, int n_attacked, const ValueFunction& f,
    int trials = 0, std::uint64_t seed = 0);

struct PoAReport {
  int n = 0;
  Rational cost;
  Rational numerator;    // centralized optimum
  Rational denominator;  // worst-equilibrium designer value over the family
  std::optional<Rational> ratio;  // empty when the denominator is <= 0
  std::string family;
  std::string worst_design;  // family member attaining the denominator
  bool below_theorem_regime = false;
  nlohmann::json to_json() const;
};

/// PoA(n, c) over the default design family: generalized k-stars for
/// k in {n_B+1..n} plus the unprotected equal splits. The denominator is the
/// max over family members of their worst-equilibrium designer value. For
/// n <= 20 subgame equilibria are enumerated exhaustively; above that, only
/// core/periphery-uniform profiles are considered and each candidate is
/// verified exactly against all single-node deviations.
PoAReport price_of_anarchy(int n, const Rational& cost, int n_byzantine,
                           int n_attacked, const ValueFunction& f);

struct PoATrendReport {
  std::vector<PoAReport> points;
  bool hypothesis_warning = false;  // f(n)/f(n-t) not close to 1 at the top n
  std::string hypothesis_detail;
  nlohmann::json to_json() const;
};

/// PoA for increasing n at fixed cost, with the finite-range check of the
/// theorem hypothesis f(n)/f(n-t) -> 1 attached as a warning when it fails.
PoATrendReport poa_trend(const Rational& cost, const std::vector<int>& ns,
                         int n_byzantine, int n_attacked,
                         const ValueFunction& f);

}  // namespace netdef
