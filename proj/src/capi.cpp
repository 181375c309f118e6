#include "netdefend.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netdefend/centralized.hpp"
#include "netdefend/decentralized.hpp"
#include "netdefend/game.hpp"
#include "netdefend/graph.hpp"
#include "netdefend/rational.hpp"
#include "netdefend/star.hpp"
#include "netdefend/value_function.hpp"

using namespace netdef;

struct nd_value_function {
  ValueFunction f;
};
struct nd_network {
  Network g;
};

namespace {

thread_local std::string g_last_error;

struct parse_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
nd_status guard(Fn&& fn) {
  try {
    fn();
    return ND_OK;
  } catch (const parse_failure& e) {
    g_last_error = e.what();
    return ND_ERR_PARSE;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ND_ERR_PARSE;
  } catch (const limit_error& e) {
    g_last_error = e.what();
    return ND_ERR_LIMIT;
  } catch (const unsupported_error& e) {
    g_last_error = e.what();
    return ND_ERR_UNSUPPORTED;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return ND_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return ND_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ND_ERR_INTERNAL;
  }
}

Rational parse_cost(const char* text) {
  if (!text) throw parse_failure("cost string is null");
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(std::string("cannot parse cost: ") + e.what());
  }
}

std::vector<NodeId> parse_node_array(const char* json, const char* what) {
  if (!json) throw parse_failure(std::string(what) + " array is null");
  nlohmann::json j = nlohmann::json::parse(json);
  if (!j.is_array()) throw parse_failure(std::string(what) + " must be an array");
  std::vector<NodeId> out;
  for (const auto& v : j) out.push_back(v.get<int>());
  return out;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

extern "C" {

const char* nd_last_error(void) { return g_last_error.c_str(); }

void nd_string_free(char* s) { std::free(s); }

nd_status nd_vf_create(const char* json_spec, nd_value_function** out) {
  return guard([&] {
    require(json_spec && out, "null argument");
    ValueFunction f = ValueFunction::from_json(nlohmann::json::parse(json_spec));
    *out = new nd_value_function{std::move(f)};
  });
}

void nd_vf_destroy(nd_value_function* vf) { delete vf; }

nd_status nd_validate_value_function(const nd_value_function* vf, int x_max,
                                     int* all_pass, char** report_json) {
  return guard([&] {
    require(vf != nullptr, "null value function");
    ValidationReport report = validate_value_function(vf->f, x_max);
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
    if (report_json) *report_json = dup_string(report.to_json().dump(2));
  });
}

nd_status nd_network_from_json(const char* json, nd_network** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = new nd_network{Network::from_json(nlohmann::json::parse(json))};
  });
}

nd_status nd_network_to_json(const nd_network* g, char** json) {
  return guard([&] {
    require(g && json, "null argument");
    *json = dup_string(g->g.to_json().dump());
  });
}

nd_status nd_network_build_star(int n, int k, nd_network** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new nd_network{build_generalized_star(n, k).network};
  });
}

void nd_network_destroy(nd_network* g) { delete g; }

nd_status nd_play(const nd_network* g, const char* delta_json,
                  const char* byzantine_json, const char* attack_json,
                  int n_byzantine, int n_attacked, const char* cost,
                  const nd_value_function* vf, char** outcome_json) {
  return guard([&] {
    require(g && vf && outcome_json, "null argument");
    GameConfig cfg(g->g.node_count(), n_byzantine, n_attacked,
                   parse_cost(cost), vf->f);
    ProtectedNetwork pn =
        make_protected(g->g, parse_node_array(delta_json, "delta"));
    PlayOutcome outcome =
        residual_network(pn, parse_node_array(byzantine_json, "byzantine"),
                         parse_node_array(attack_json, "attack"), cfg);
    *outcome_json = dup_string(outcome.to_json().dump(2));
  });
}

nd_status nd_optimal_design(int n, const char* cost, const nd_value_function* vf,
                            int n_byzantine, int n_attacked, char** json) {
  return guard([&] {
    require(vf && json, "null argument");
    DesignOutcome out =
        optimal_design(n, parse_cost(cost), vf->f, n_byzantine, n_attacked);
    *json = dup_string(out.to_json().dump(2));
  });
}

nd_status nd_threshold_table(int n, const nd_value_function* vf,
                             const char* config_line, char** json, char** csv) {
  return guard([&] {
    require(vf != nullptr, "null value function");
    std::vector<ThresholdRow> rows = threshold_table(n, vf->f);
    if (json) *json = dup_string(threshold_table_json(n, rows).dump(2));
    if (csv)
      *csv = dup_string(threshold_table_csv(
          n, vf->f, rows, config_line ? config_line : ""));
  });
}

namespace {

struct ReferenceTable {
  int n;
  std::vector<int> ks;
  std::vector<const char*> breakpoints;
};

// Regression references for f(x) = x^2.
const ReferenceTable kReferenceTables[] = {
    {12, {12, 6, 4, 0}, {"7/2", "19/2", "45/4"}},
    {30, {30, 15, 10, 6, 5, 0}, {"19/5", "11", "26", "49", "351/5"}},
    {50,
     {50, 25, 17, 13, 10, 5, 0},
     {"97/25", "95/8", "93/4", "91/3", "85", "195"}},
};

}  // namespace

nd_status nd_threshold_table_expect_reference(int n, const nd_value_function* vf,
                                              int* match, char** detail) {
  return guard([&] {
    require(vf && match, "null argument");
    const ReferenceTable* ref = nullptr;
    for (const auto& r : kReferenceTables)
      if (r.n == n) ref = &r;
    if (!ref)
      throw unsupported_error("no embedded reference table for this n");

    std::vector<ThresholdRow> rows = threshold_table(n, vf->f);
    std::ostringstream report;
    bool ok = rows.size() == ref->ks.size();
    if (!ok)
      report << "row count " << rows.size() << ", expected " << ref->ks.size()
             << "\n";
    for (std::size_t i = 0; ok && i < rows.size(); ++i) {
      if (rows[i].k != ref->ks[i]) {
        ok = false;
        report << "row " << i << ": k = " << rows[i].k << ", expected "
               << ref->ks[i] << "\n";
        break;
      }
      if (i + 1 < rows.size()) {
        Rational expected = parse_rational(ref->breakpoints[i]);
        if (!rows[i].c_high || *rows[i].c_high != expected) {
          ok = false;
          report << "row " << i << ": breakpoint "
                 << (rows[i].c_high ? format_rational(*rows[i].c_high)
                                    : std::string("inf"))
                 << ", expected " << ref->breakpoints[i] << "\n";
          break;
        }
      }
    }
    if (ok) {
      report << "n=" << n << ": all " << rows.size()
             << " intervals match the reference\n";
      for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        report << "  k=" << rows[i].k << " until c = "
               << format_rational(*rows[i].c_high) << " ("
               << format_repeating_decimal(*rows[i].c_high) << ")\n";
    }
    *match = ok ? 1 : 0;
    if (detail) *detail = dup_string(report.str());
  });
}

nd_status nd_brute_force_optimal(int n, const char* cost, int n_byzantine,
                                 int n_attacked, const nd_value_function* vf,
                                 const char* mode, char** json) {
  return guard([&] {
    require(vf && json && mode, "null argument");
    SearchMode m;
    if (std::strcmp(mode, "all-graphs") == 0)
      m = SearchMode::AllGraphs;
    else if (std::strcmp(mode, "structured") == 0)
      m = SearchMode::Structured;
    else
      throw std::invalid_argument("mode must be all-graphs or structured");
    GameConfig cfg(n, n_byzantine, n_attacked, parse_cost(cost), vf->f);
    *json = dup_string(brute_force_optimal(cfg, m).to_json().dump(2));
  });
}

nd_status nd_node_game_equilibria(const nd_network* g, const char* cost,
                                  int n_byzantine, int n_attacked,
                                  const nd_value_function* vf, const char* mode,
                                  char** json) {
  return guard([&] {
    require(g && vf && json && mode, "null argument");
    UtilityMode m;
    if (std::strcmp(mode, "pessimistic") == 0)
      m = UtilityMode::Pessimistic;
    else if (std::strcmp(mode, "expected") == 0)
      m = UtilityMode::Expected;
    else
      throw std::invalid_argument("mode must be pessimistic or expected");
    GameConfig cfg(g->g.node_count(), n_byzantine, n_attacked,
                   parse_cost(cost), vf->f);
    *json = dup_string(node_game_equilibria(g->g, cfg, m).to_json().dump(2));
  });
}

nd_status nd_verify_star_characterization(int n, int k, int n_byzantine,
                                          int n_attacked,
                                          const nd_value_function* vf,
                                          int* all_pass, char** json) {
  return guard([&] {
    require(vf != nullptr, "null value function");
    std::vector<Rational> grid =
        default_characterization_grid(n, k, n_byzantine, n_attacked, vf->f);
    StarCharacterizationReport report =
        verify_star_characterization(n, k, n_byzantine, n_attacked, vf->f, grid);
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
    if (json) *json = dup_string(report.to_json().dump(2));
  });
}

nd_status nd_verify_byzantine_core_attack(int n, int k, int n_byzantine,
                                          int n_attacked,
                                          const nd_value_function* vf,
                                          int trials, uint64_t seed,
                                          int* pass, char** json) {
  return guard([&] {
    require(vf != nullptr, "null value function");
    ByzantineCoreAttackReport report = verify_byzantine_core_attack(
        n, k, n_byzantine, n_attacked, vf->f, trials, seed);
    if (pass) *pass = report.pass ? 1 : 0;
    if (json) *json = dup_string(report.to_json().dump(2));
  });
}

nd_status nd_price_of_anarchy(int n, const char* cost, int n_byzantine,
                              int n_attacked, const nd_value_function* vf,
                              char** json) {
  return guard([&] {
    require(vf && json, "null argument");
    PoAReport report =
        price_of_anarchy(n, parse_cost(cost), n_byzantine, n_attacked, vf->f);
    *json = dup_string(report.to_json().dump(2));
  });
}

namespace {

double to_double(const Rational& r) {
  return numerator(r).convert_to<double>() /
         denominator(r).convert_to<double>();
}

std::string trend_svg(const PoATrendReport& report) {
  const int w = 640, h = 400, ml = 70, mr = 20, mt = 20, mb = 50;
  double lo = 1.0, hi = 1.0;
  for (const auto& p : report.points)
    if (p.ratio) hi = std::max(hi, to_double(*p.ratio));
  hi = hi * 1.05 + 1e-9;
  int n_lo = report.points.front().n, n_hi = report.points.back().n;
  for (const auto& p : report.points) {
    n_lo = std::min(n_lo, p.n);
    n_hi = std::max(n_hi, p.n);
  }
  auto sx = [&](int n) {
    return n_hi == n_lo
               ? ml
               : ml + (w - ml - mr) * (n - n_lo) / double(n_hi - n_lo);
  };
  auto sy = [&](double v) { return h - mb - (h - mt - mb) * (v - lo) / (hi - lo); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
         "points=\"";
  for (const auto& p : report.points)
    if (p.ratio) svg << sx(p.n) << "," << sy(to_double(*p.ratio)) << " ";
  svg << "\"/>\n";
  for (const auto& p : report.points) {
    if (!p.ratio) continue;
    svg << "<circle cx=\"" << sx(p.n) << "\" cy=\"" << sy(to_double(*p.ratio))
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    svg << "<text x=\"" << sx(p.n) << "\" y=\"" << h - mb + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">" << p.n << "</text>\n";
  }
  svg << "<text x=\"" << ml - 10 << "\" y=\"" << sy(lo)
      << "\" text-anchor=\"end\" font-size=\"12\">1</text>\n";
  std::ostringstream hi_label;
  hi_label.precision(4);
  hi_label << hi;
  svg << "<text x=\"" << ml - 10 << "\" y=\"" << sy(hi)
      << "\" text-anchor=\"end\" font-size=\"12\">" << hi_label.str()
      << "</text>\n";
  svg << "<text x=\"" << (w / 2) << "\" y=\"" << h - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">n</text>\n";
  svg << "<text x=\"15\" y=\"" << (h / 2)
      << "\" font-size=\"13\" transform=\"rotate(-90 15 " << (h / 2)
      << ")\">price of anarchy</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

nd_status nd_poa_trend(const char* cost, const char* ns, int n_byzantine,
                       int n_attacked, const nd_value_function* vf,
                       char** json, char** svg) {
  return guard([&] {
    require(vf && ns, "null argument");
    nlohmann::json jns = nlohmann::json::parse(ns);
    if (!jns.is_array()) throw parse_failure("n sequence must be an array");
    std::vector<int> sizes;
    for (const auto& v : jns) sizes.push_back(v.get<int>());
    PoATrendReport report =
        poa_trend(parse_cost(cost), sizes, n_byzantine, n_attacked, vf->f);
    if (json) *json = dup_string(report.to_json().dump(2));
    if (svg) *svg = dup_string(trend_svg(report));
  });
}

}  // extern "C"
