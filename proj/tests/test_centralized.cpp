#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "netdefend/centralized.hpp"
#include "netdefend/star.hpp"

using namespace netdef;

namespace {

const ValueFunction kSquare = ValueFunction::power(2);

GameConfig cfg_of(int n, const char* cost, int nb = 1, int na = 1) {
  return GameConfig(n, nb, na, parse_rational(cost), kSquare);
}

}  // namespace

TEST_CASE("w values, hand-checked") {
  // n = 9, k = 0: three size-3 components beat 4+4+1 (18 > 17).
  auto w0 = w_value(9, 0, kSquare);
  CHECK(w0.value == 18);
  CHECK(w0.triple_split);
  // n = 6, k = 0: two halves, f(3) = 9.
  CHECK(w_value(6, 0, kSquare).value == 9);
  CHECK(w_value(6, 1, kSquare).value == 9);
  // n = 6, k = 2: best split q keeps 9 as well.
  CHECK(w_value(6, 2, kSquare).value == 9);
  // n = 12, k = 12: protected clique keeps f(11).
  CHECK(w_value(12, 12, kSquare).value == 121);
  // n = 12, k = 4: f(12 - 3) = 81.
  CHECK(w_value(12, 4, kSquare).value == 81);
  // n = 13, k = 4: 13 mod 4 = 1, star on 12 plus a singleton.
  CHECK(w_value(13, 4, kSquare).value == 81 + 1);
  CHECK_THROWS_AS(w_value(6, 7, kSquare), std::invalid_argument);
}

TEST_CASE("w values match the search oracle for every k") {
  // exhaustive check that the canonical witness is optimal among all graphs
  for (int n : {4, 5, 6}) {
    for (const char* c : {"1/4", "2", "10"}) {
      auto cfg = cfg_of(n, c);
      auto oracle = brute_force_optimal(cfg, SearchMode::AllGraphs);
      auto closed = optimal_design(n, cfg.cost(), kSquare);
      CHECK(oracle.payoff == closed.payoff);
    }
  }
}

TEST_CASE("optimal design at n=12, c=2 protects everything") {
  auto out = optimal_design(12, Rational(2), kSquare);
  CHECK(out.k == 12);
  CHECK(out.payoff == Rational(121 - 24));
  CHECK(out.delta.size() == 12);
  CHECK(out.structure == "protected clique");
}

TEST_CASE("optimal design never defends exactly one node") {
  for (int n : {4, 7, 9, 12}) {
    for (const char* c : {"1/3", "1", "3", "7", "20"}) {
      auto out = optimal_design(n, parse_rational(c), kSquare);
      for (int k : out.alternatives) CHECK(k != 1);
    }
  }
}

TEST_CASE("high costs push the optimum to the unprotected split") {
  // n = 9: for c > 31/5 the optimum is k = 0 with three 3-cliques.
  auto out = optimal_design(9, Rational(63, 10), kSquare);
  CHECK(out.k == 0);
  CHECK(out.delta.empty());
  CHECK(out.payoff == Rational(18));
  auto comps = out.network.components();
  REQUIRE(comps.size() == 3);
  for (const auto& comp : comps) CHECK(comp.size() == 3);
  // just below the threshold, defense still wins
  CHECK(optimal_design(9, Rational(61, 10), kSquare).k != 0);
}

TEST_CASE("witnesses achieve the formula under the game engine") {
  for (int n : {7, 10, 13}) {
    for (const char* c : {"1/2", "2", "5", "15"}) {
      auto out = optimal_design(n, parse_rational(c), kSquare);
      auto cfg = cfg_of(n, c);
      auto pn = make_protected(out.network, out.delta);
      CHECK(pessimistic_designer_utility(pn, cfg) +
                Rational(out.delta.size()) * cfg.cost() ==
            Rational(w_value(n, out.k, kSquare).value));
    }
  }
}

TEST_CASE("unsupported byzantine counts are refused by the closed form") {
  CHECK_THROWS_AS(optimal_design(9, Rational(1), kSquare, 2, 1),
                  unsupported_error);
  CHECK_THROWS_AS(optimal_design(9, Rational(1), kSquare, 1, 2),
                  unsupported_error);
}

TEST_CASE("threshold table n=12") {
  auto rows = threshold_table(12, kSquare);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].k == 12);
  CHECK(rows[1].k == 6);
  CHECK(rows[2].k == 4);
  CHECK(rows[3].k == 0);
  CHECK(rows[0].c_low == 0);
  CHECK(*rows[0].c_high == Rational(7, 2));
  CHECK(*rows[1].c_high == Rational(19, 2));
  CHECK(*rows[2].c_high == Rational(45, 4));
  CHECK_FALSE(rows[3].c_high.has_value());
  CHECK(rows[0].w_k == 121);
  CHECK(rows[3].w_k == 36);  // two halves of 6, f(6) survives
}

TEST_CASE("threshold table rows tile the cost axis consistently") {
  for (int n : {9, 17, 30}) {
    auto rows = threshold_table(n, kSquare);
    REQUIRE(!rows.empty());
    CHECK(rows.front().c_low == 0);
    CHECK(rows.back().k == 0);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      REQUIRE(rows[i].c_high.has_value());
      CHECK(*rows[i].c_high == rows[i + 1].c_low);
      CHECK(rows[i].k > rows[i + 1].k);
      // inside the interval the row's k beats the neighbors
      Rational mid = (rows[i].c_low + *rows[i].c_high) / 2;
      Rational best = Rational(rows[i].w_k) - Rational(rows[i].k) * mid;
      for (int k = 0; k <= n; ++k) {
        if (k == 1) continue;
        CHECK(best >= Rational(w_value(n, k, kSquare).value) - Rational(k) * mid);
      }
    }
  }
}

TEST_CASE("threshold csv carries the config header") {
  auto rows = threshold_table(12, kSquare);
  auto csv = threshold_table_csv(12, kSquare, rows, "unit-test");
  CHECK(csv.find("unit-test") != std::string::npos);
  CHECK(csv.find("c_low,c_high,k,w_k,structure") != std::string::npos);
  CHECK(csv.find("7/2") != std::string::npos);
  CHECK(csv.find("inf") != std::string::npos);
}

TEST_CASE("all-graphs oracle bounds") {
  CHECK_THROWS_AS(brute_force_optimal(cfg_of(7, "1"), SearchMode::AllGraphs),
                  limit_error);
}

TEST_CASE("structured search agrees with the exhaustive one off the closed form") {
  // n_B, n_A combinations outside the closed form's scope
  for (auto [nb, na] : {std::pair{2, 1}, std::pair{1, 2}}) {
    for (const char* c : {"1/2", "3"}) {
      auto cfg = cfg_of(6, c, nb, na);
      auto all = brute_force_optimal(cfg, SearchMode::AllGraphs);
      auto structured = brute_force_optimal(cfg, SearchMode::Structured);
      CHECK(all.payoff == structured.payoff);
    }
  }
}

TEST_CASE("defense clique completes the core") {
  Network g(4, {{0, 1}, {1, 2}, {2, 3}});
  auto pn = defense_clique(make_protected(g, {0, 2}));
  CHECK(pn.g.has_edge(0, 2));
  CHECK(pn.delta == std::vector<NodeId>{0, 2});
}

TEST_CASE("cloud creation hangs unprotected clouds off their anchor") {
  // protected 0 with a path of unprotected nodes behind it
  Network g(4, {{0, 1}, {1, 2}, {2, 3}});
  auto pn = cloud_creation(make_protected(g, {0}));
  CHECK(pn.g.has_edge(0, 1));
  CHECK(pn.g.has_edge(0, 2));
  CHECK(pn.g.has_edge(0, 3));
  CHECK_FALSE(pn.g.has_edge(1, 2));
  CHECK_FALSE(pn.g.has_edge(2, 3));
}

TEST_CASE("rebalancing evens the loads") {
  // 2-core with loads 3 and 1
  Network g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}});
  auto pn = rebalance_loads(make_protected(g, {0, 1}));
  CHECK(check_generalized_star(pn.g, {0, 1}));
}

TEST_CASE("canonicalization yields a star and never hurts the designer") {
  std::mt19937_64 rng(20240817);
  auto cfg_cache = [](int n) { return cfg_of(n, "1"); };
  for (int trial = 0; trial < 60; ++trial) {
    int n = 5 + static_cast<int>(rng() % 5);  // 5..9
    Network g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) g.add_edge(u, v);
    int dsize = 2 + static_cast<int>(rng() % 3);
    std::vector<NodeId> delta;
    for (int v = 0; v < n && static_cast<int>(delta.size()) < dsize; ++v)
      if (rng() % 2 == 0) delta.push_back(v);
    if (static_cast<int>(delta.size()) < 2) delta = {0, 1};
    auto cfg = cfg_cache(n);
    auto pn = make_protected(g, delta);
    auto star = canonicalize_to_star(pn, cfg);
    CHECK(pessimistic_designer_utility(star, cfg) >=
          pessimistic_designer_utility(pn, cfg));
    // the protected component must be a generalized |delta|-star
    std::vector<std::vector<NodeId>> comps = star.g.components();
    for (const auto& comp : comps) {
      bool has_core = false;
      for (NodeId v : star.delta)
        if (std::find(comp.begin(), comp.end(), v) != comp.end())
          has_core = true;
      if (!has_core) continue;
      Network sub = star.g;
      for (const auto& other : comps)
        if (&other != &comp && !other.empty()) sub = sub.without_nodes(other);
      CHECK(check_generalized_star(sub, star.delta));
    }
  }
}

TEST_CASE("canonicalization requires at least two protected nodes") {
  Network g(4, {{0, 1}, {1, 2}, {2, 3}});
  auto cfg = cfg_of(4, "1");
  CHECK_THROWS_AS(canonicalize_to_star(make_protected(g, {0}), cfg),
                  unsupported_error);
}

TEST_CASE("design outcome json") {
  auto j = optimal_design(12, Rational(2), kSquare).to_json();
  CHECK(j.at("payoff") == "97");
  CHECK(j.at("k") == 12);
  CHECK(j.at("alternatives").is_array());
}
