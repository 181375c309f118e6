#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "netdefend.h"

using nlohmann::json;

namespace {

struct Vf {
  nd_value_function* h = nullptr;
  explicit Vf(const char* spec) { REQUIRE(nd_vf_create(spec, &h) == ND_OK); }
  ~Vf() { nd_vf_destroy(h); }
};

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  nd_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("value function creation and validation") {
  Vf sq("{\"family\":\"power\",\"a\":2}");
  int all_pass = 0;
  char* report = nullptr;
  REQUIRE(nd_validate_value_function(sq.h, 100, &all_pass, &report) == ND_OK);
  CHECK(all_pass == 1);
  auto j = json::parse(take(report));
  CHECK(j.at("all_pass") == true);

  nd_value_function* bad = nullptr;
  CHECK(nd_vf_create("{\"family\":\"nope\"}", &bad) ==
        ND_ERR_INVALID_ARGUMENT);
  CHECK(nd_vf_create("not json", &bad) == ND_ERR_PARSE);
  CHECK(std::strlen(nd_last_error()) > 0);
}

TEST_CASE("linear table fails validation with a witness") {
  Vf lin("{\"family\":\"table\",\"values\":[0,1,2,3,4,5,6,7,8,9,10]}");
  int all_pass = 1;
  char* report = nullptr;
  REQUIRE(nd_validate_value_function(lin.h, 10, &all_pass, &report) == ND_OK);
  CHECK(all_pass == 0);
  auto j = json::parse(take(report));
  bool witnessed = false;
  for (const auto& check : j.at("checks"))
    if (check.at("pass") == false && check.at("witness").get<int>() >= 0)
      witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("network json round trip") {
  nd_network* g = nullptr;
  REQUIRE(nd_network_from_json("{\"n\":4,\"edges\":[[0,1],[2,3]]}", &g) ==
          ND_OK);
  char* out = nullptr;
  REQUIRE(nd_network_to_json(g, &out) == ND_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("n") == 4);
  CHECK(j.at("edges").size() == 2);
  nd_network_destroy(g);

  nd_network* bad = nullptr;
  CHECK(nd_network_from_json("{\"n\":2,\"edges\":[[0,5]]}", &bad) != ND_OK);
  CHECK(nd_network_from_json("{", &bad) == ND_ERR_PARSE);
}

TEST_CASE("play through the C surface") {
  nd_network* g = nullptr;
  REQUIRE(nd_network_from_json(
              "{\"n\":5,\"edges\":[[0,1],[1,2],[2,3],[3,4]]}", &g) == ND_OK);
  Vf sq("{\"family\":\"power\",\"a\":2}");
  char* out = nullptr;
  REQUIRE(nd_play(g, "[1,3]", "[3]", "[4]", 1, 1, "1", sq.h, &out) == ND_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("destroyed") == json({2, 3, 4}));
  CHECK(j.at("designer_payoff") == "2");
  nd_network_destroy(g);
}

TEST_CASE("star construction and equilibria") {
  nd_network* g = nullptr;
  REQUIRE(nd_network_build_star(12, 4, &g) == ND_OK);
  Vf sq("{\"family\":\"power\",\"a\":2}");
  char* out = nullptr;
  REQUIRE(nd_node_game_equilibria(g, "2", 1, 1, sq.h, "pessimistic", &out) ==
          ND_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("count") == 1);
  CHECK(j.at("equilibria")[0].at("strategies") ==
        json({1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(nd_node_game_equilibria(g, "2", 1, 1, sq.h, "sideways", &out) ==
        ND_ERR_INVALID_ARGUMENT);
  nd_network_destroy(g);
}

TEST_CASE("optimal design and the embedded reference tables") {
  Vf sq("{\"family\":\"power\",\"a\":2}");
  char* out = nullptr;
  REQUIRE(nd_optimal_design(12, "2", sq.h, 1, 1, &out) == ND_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("payoff") == "97");
  CHECK(j.at("k") == 12);
  CHECK(nd_optimal_design(12, "2", sq.h, 2, 1, &out) == ND_ERR_UNSUPPORTED);
  CHECK(nd_optimal_design(12, "x", sq.h, 1, 1, &out) == ND_ERR_PARSE);

  for (int n : {12, 30, 50}) {
    int match = 0;
    char* detail = nullptr;
    REQUIRE(nd_threshold_table_expect_reference(n, sq.h, &match, &detail) ==
            ND_OK);
    INFO(take(detail));
    CHECK(match == 1);
  }
  int match = 0;
  char* detail = nullptr;
  CHECK(nd_threshold_table_expect_reference(13, sq.h, &match, &detail) !=
        ND_OK);
}

TEST_CASE("threshold table CSV via the C surface") {
  Vf sq("{\"family\":\"power\",\"a\":2}");
  char* json_out = nullptr;
  char* csv_out = nullptr;
  REQUIRE(nd_threshold_table(12, sq.h, "cfgline", &json_out, &csv_out) ==
          ND_OK);
  CHECK(take(json_out).find("45/4") != std::string::npos);
  auto csv = take(csv_out);
  CHECK(csv.find("cfgline") != std::string::npos);
  CHECK(csv.rfind("#", 0) == 0);
}

TEST_CASE("search oracle limits surface as ND_ERR_LIMIT") {
  Vf sq("{\"family\":\"power\",\"a\":2}");
  char* out = nullptr;
  CHECK(nd_brute_force_optimal(7, "1", 1, 1, sq.h, "all-graphs", &out) ==
        ND_ERR_LIMIT);
  REQUIRE(nd_brute_force_optimal(5, "1", 1, 1, sq.h, "all-graphs", &out) ==
          ND_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("payoff") == "11");  // w_5(5) - 5c = f(4) - 5
}

TEST_CASE("property verifiers and poa through the C surface") {
  Vf sq("{\"family\":\"power\",\"a\":2}");
  int pass = 0;
  char* out = nullptr;
  REQUIRE(nd_verify_byzantine_core_attack(8, 2, 1, 1, sq.h, 0, 0, &pass,
                                          &out) == ND_OK);
  CHECK(pass == 1);
  nd_string_free(out);
  out = nullptr;
  REQUIRE(nd_verify_star_characterization(12, 4, 1, 1, sq.h, &pass, &out) ==
          ND_OK);
  CHECK(pass == 1);
  nd_string_free(out);
  out = nullptr;
  REQUIRE(nd_price_of_anarchy(12, "1", 1, 1, sq.h, &out) == ND_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("ratio") == "109/89");

  char* trend = nullptr;
  char* svg = nullptr;
  REQUIRE(nd_poa_trend("1", "[12,24]", 1, 1, sq.h, &trend, &svg) == ND_OK);
  CHECK(json::parse(take(trend)).at("points").size() == 2);
  auto chart = take(svg);
  CHECK(chart.find("<svg") != std::string::npos);
}

TEST_CASE("string free tolerates null") { nd_string_free(nullptr); }
