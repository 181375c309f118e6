#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netdefend/graph.hpp"
#include "netdefend/rational.hpp"
#include "netdefend/value_function.hpp"

namespace netdef {

/// Thrown when an input exceeds an enumeration limit or asks for an
/// unsupported configuration.
class limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed game parameters. Construction validates the value function on
/// [0, n] and refuses configurations whose assumptions fail there.
class GameConfig {
 public:
  GameConfig(int n, int n_byzantine, int n_attacked, Rational cost,
             ValueFunction f);

  int n() const { return n_; }
  int byzantine_count() const { return n_b_; }
  int attack_count() const { return n_a_; }
  const Rational& cost() const { return cost_; }
  const ValueFunction& value_function() const { return f_; }

  /// f(s) for s in [0, n], precomputed.
  const std::vector<Int>& f_table() const { return f_table_; }

 private:
  int n_;
  int n_b_;
  int n_a_;
  Rational cost_;
  ValueFunction f_;
  std::vector<Int> f_table_;
};

/// A network together with its defense set; what the adversary observes.
struct ProtectedNetwork {
  Network g;
  std::vector<NodeId> delta;  // sorted, subset of g's nodes
};

ProtectedNetwork make_protected(Network g, std::vector<NodeId> delta);

struct PlayOutcome {
  Network residual;
  std::vector<NodeId> destroyed;
  Rational designer_payoff;
  Rational adversary_payoff;
  std::map<NodeId, Rational> node_payoffs;

  nlohmann::json to_json() const;
};

/// G - (Delta \ B): genuine protected nodes removed, byzantine nodes retained.
Network attack_graph(const ProtectedNetwork& pn,
                     const std::vector<NodeId>& byzantine);

/// Full semantics of one play: destroyed set, residual network, and every
/// player's payoff. Attacks on protected genuine nodes destroy nothing.
PlayOutcome residual_network(const ProtectedNetwork& pn,
                             const std::vector<NodeId>& byzantine,
                             const std::vector<NodeId>& attack,
                             const GameConfig& cfg);

/// All attack sets of size n_A minimizing Phi(residual), in lexicographic
/// order over sorted node ids.
std::vector<std::vector<NodeId>> best_response_attacks(
    const ProtectedNetwork& pn, const std::vector<NodeId>& byzantine,
    const GameConfig& cfg);

/// min over byzantine placements B of the designer payoff under an adversary
/// best response (all best responses give the same designer payoff).
Rational pessimistic_designer_utility(const ProtectedNetwork& pn,
                                      const GameConfig& cfg);

/// Worst-case utility of node j, treated as genuine, for a type-independent
/// strategy profile: min over byzantine sets avoiding j and, within each,
/// over the adversary best responses worst for j.
Rational pessimistic_node_utility(const Network& g,
                                  const std::vector<std::uint8_t>& strategies,
                                  NodeId j, const GameConfig& cfg);

struct ExpectedUtilities {
  Rational designer;
  std::vector<Rational> nodes;
};

/// Uniform averaging over byzantine placements (avoiding j for node j's
/// utility); adversary ties are resolved by averaging over all best
/// responses.
ExpectedUtilities expected_utilities(const Network& g,
                                     const std::vector<std::uint8_t>& strategies,
                                     const GameConfig& cfg);

}  // namespace netdef
