#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "netdefend/graph.hpp"
#include "netdefend/rational.hpp"
#include "netdefend/star.hpp"
#include "netdefend/value_function.hpp"

using namespace netdef;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("3.50") == Rational(7, 2));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("6.2") == Rational(31, 5));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}

TEST_CASE("rational formatting") {
  CHECK(format_rational(Rational(91, 3)) == "91/3");
  CHECK(format_rational(Rational(6, 2)) == "3");
  CHECK(format_rational(Rational(-7, 2)) == "-7/2");
}

TEST_CASE("repeating decimal rendering") {
  CHECK(format_repeating_decimal(Rational(91, 3)) == "30.(3)");
  CHECK(format_repeating_decimal(Rational(7, 2)) == "3.5");
  CHECK(format_repeating_decimal(Rational(11)) == "11");
  CHECK(format_repeating_decimal(Rational(1, 7)) == "0.(142857)");
  CHECK(format_repeating_decimal(Rational(1, 6)) == "0.1(6)");
  CHECK(format_repeating_decimal(Rational(-91, 3)) == "-30.(3)");
  CHECK(format_repeating_decimal(Rational(45, 4)) == "11.25");
}

TEST_CASE("round trip parse/format") {
  for (const char* s : {"91/3", "-5/7", "0", "12", "351/5"}) {
    CHECK(format_rational(parse_rational(s)) == s);
  }
}

TEST_CASE("value function families") {
  auto sq = ValueFunction::power(2);
  CHECK(sq(0) == 0);
  CHECK(sq(12) == 144);
  auto cube = ValueFunction::power(3);
  CHECK(cube(4) == 64);
  auto e = ValueFunction::exp_minus_one();
  CHECK(e(0) == 0);
  CHECK(e(5) == 31);
  CHECK(e(40) == (Int(1) << 40) - 1);
  auto t = ValueFunction::table({Int(0), Int(1), Int(4), Int(9)});
  CHECK(t(3) == 9);
  CHECK(t.max_argument() == 3);
  CHECK_THROWS_AS(t(4), std::domain_error);
  CHECK_THROWS_AS(sq(-1), std::domain_error);
  CHECK_THROWS_AS(ValueFunction::power(1), std::invalid_argument);
}

TEST_CASE("value function json round trip") {
  auto sq = ValueFunction::power(2);
  auto back = ValueFunction::from_json(sq.to_json());
  CHECK(back(7) == 49);
  auto t = ValueFunction::table({Int(0), Int(2), Int(6), Int(14)});
  auto tb = ValueFunction::from_json(t.to_json());
  CHECK(tb(3) == 14);
}

TEST_CASE("assumption validation accepts the model families") {
  CHECK(validate_value_function(ValueFunction::power(2), 100).all_pass());
  CHECK(validate_value_function(ValueFunction::power(3), 100).all_pass());
  CHECK(validate_value_function(ValueFunction::exp_minus_one(), 40).all_pass());
}

TEST_CASE("assumption validation rejects linear growth with a witness") {
  std::vector<Int> lin;
  for (int i = 0; i <= 20; ++i) lin.emplace_back(i);
  auto report = validate_value_function(ValueFunction::table(std::move(lin)), 20);
  CHECK_FALSE(report.all_pass());
  bool witnessed = false;
  for (const auto& check : report.checks)
    if (!check.pass && check.witness >= 0) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("validation refuses short tables") {
  auto t = ValueFunction::table({Int(0), Int(1)});
  CHECK_THROWS(validate_value_function(t, 10));
}

TEST_CASE("network basics") {
  Network g(5, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(g.node_count() == 5);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  auto comps = g.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<NodeId>{0, 1, 2});
  CHECK(comps[1] == std::vector<NodeId>{3, 4});
}

TEST_CASE("node removal keeps identities") {
  Network g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  Network h = g.without_nodes({2});
  CHECK(h.node_count() == 4);
  CHECK_FALSE(h.has_node(2));
  CHECK(h.has_node(4));
  auto comps = h.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<NodeId>{0, 1});
  CHECK(comps[1] == std::vector<NodeId>{3, 4});
  CHECK_THROWS_AS(h.without_nodes({2}), std::invalid_argument);
}

TEST_CASE("network json round trip") {
  Network g(4, {{0, 3}, {1, 2}});
  auto j = g.to_json();
  CHECK(Network::from_json(j) == g);
  auto bad = nlohmann::json{{"n", 3}, {"edges", {{0, 5}}}};
  CHECK_THROWS(Network::from_json(bad));
}

TEST_CASE("network value sums f over components") {
  Network g(6, {{0, 1}, {1, 2}, {3, 4}});
  auto sq = ValueFunction::power(2);
  CHECK(network_value(g, sq) == 9 + 4 + 1);
}

TEST_CASE("disjoint union shifts labels") {
  Network a(2, {{0, 1}});
  Network b(3, {{0, 2}});
  Network u = disjoint_union(a, b);
  CHECK(u.node_count() == 5);
  CHECK(u.has_edge(0, 1));
  CHECK(u.has_edge(2, 4));
  CHECK(u.components().size() == 3);  // {0,1}, {2,4}, {3}
}

TEST_CASE("generalized star construction") {
  auto gs = build_generalized_star(12, 4);
  CHECK(gs.core == std::vector<NodeId>{0, 1, 2, 3});
  CHECK(gs.periphery.size() == 8);
  // clique core
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(gs.network.has_edge(i, j));
  // each periphery node hangs off one core node
  for (NodeId p : gs.periphery) CHECK(gs.network.degree(p) == 1);
  CHECK(check_generalized_star(gs.network, gs.core));
}

TEST_CASE("star checker detects imbalance") {
  // 2-clique core, loads 3 and 1: out of balance by 2.
  Network g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}});
  CHECK_FALSE(check_generalized_star(g, {0, 1}));
  Network ok(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
  CHECK(check_generalized_star(ok, {0, 1}));
}

TEST_CASE("star recognition") {
  auto gs = build_generalized_star(10, 3);
  auto found = find_generalized_star(gs.network);
  REQUIRE(found.has_value());
  CHECK(found->core == gs.core);
  Network cycle(4, {{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK_FALSE(find_generalized_star(cycle).has_value());
}

TEST_CASE("star edge cases") {
  auto k1 = build_generalized_star(1, 1);
  CHECK(k1.network.node_count() == 1);
  auto clique = build_generalized_star(5, 5);
  CHECK(clique.periphery.empty());
  CHECK(check_generalized_star(clique.network, clique.core));
  CHECK_THROWS_AS(build_generalized_star(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_generalized_star(3, 0), std::invalid_argument);
}
