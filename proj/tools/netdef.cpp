// netdef: command-line front end for the network design-and-defense library.
//
// Exit codes: 0 success, 1 check failed, 2 input error, 3 limit/unsupported.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "netdefend.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitLimit = 3;

int exit_code_of(nd_status status) {
  switch (status) {
    case ND_OK:
      return kExitOk;
    case ND_ERR_CHECK_FAILED:
      return kExitCheckFailed;
    case ND_ERR_LIMIT:
    case ND_ERR_UNSUPPORTED:
      return kExitLimit;
    default:
      return kExitInputError;
  }
}

int fail(nd_status status) {
  std::cerr << "error: " << nd_last_error() << "\n";
  return exit_code_of(status);
}

/// Owns a string returned by the library.
struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { nd_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct FSpec {
  std::string family = "power";
  int a = 2;
  std::string values;  // comma-separated, table family

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--family", family, "value function family: power|exp|table")
        ->check(CLI::IsMember({"power", "exp", "table"}));
    cmd->add_option("--a", a, "exponent for the power family (default 2)");
    cmd->add_option("--values", values,
                    "comma-separated f(0),f(1),... for the table family");
  }

  nlohmann::json to_json() const {
    if (family == "power") return {{"family", "power"}, {"a", a}};
    if (family == "exp") return {{"family", "exp"}};
    nlohmann::json vals = nlohmann::json::array();
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(item);
    return {{"family", "table"}, {"values", vals}};
  }
};

struct VfHandle {
  nd_value_function* vf = nullptr;
  ~VfHandle() { nd_vf_destroy(vf); }
};

struct NetworkHandle {
  nd_network* g = nullptr;
  ~NetworkHandle() { nd_network_destroy(g); }
};

bool write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

/// JSON results carry the run configuration so every output is reproducible
/// from the file alone.
std::string wrap_result(const nlohmann::json& config,
                        const std::string& result_json) {
  nlohmann::json out;
  out["config"] = config;
  out["result"] = nlohmann::json::parse(result_json);
  return out.dump(2) + "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network design-and-defense game analysis"};
  app.require_subcommand(1);

  int jobs = 1;
  if (const char* env = std::getenv("NETDEF_JOBS")) jobs = std::atoi(env);
  app.add_option("--jobs", jobs, "worker cap (default from NETDEF_JOBS)");

  // validate-f
  auto* c_validate = app.add_subcommand("validate-f", "check the value function assumptions");
  FSpec vf_f;
  vf_f.add_flags(c_validate);
  int xmax = 0;
  std::string v_out;
  c_validate->add_option("--xmax", xmax, "validate f on [0, xmax]")->required();
  c_validate->add_option("--out", v_out, "output path (default stdout)");

  // thresholds
  auto* c_thresholds = app.add_subcommand("thresholds", "cost intervals of the optimal defense size");
  FSpec th_f;
  th_f.add_flags(c_thresholds);
  int th_n = 0;
  std::string th_expect, th_out;
  c_thresholds->add_option("--n", th_n, "number of nodes")->required();
  c_thresholds->add_option("--expect", th_expect,
                           "compare against an embedded reference (table2)");
  c_thresholds->add_option("--out", th_out, "output path (default stdout)");

  // optimal
  auto* c_optimal = app.add_subcommand("optimal", "closed-form optimal centralized design");
  FSpec op_f;
  op_f.add_flags(c_optimal);
  int op_n = 0, op_nb = 1, op_na = 1;
  std::string op_c, op_out;
  c_optimal->add_option("--n", op_n)->required();
  c_optimal->add_option("--c", op_c, "protection cost, rational or decimal")->required();
  c_optimal->add_option("--nb", op_nb, "byzantine count");
  c_optimal->add_option("--na", op_na, "attack count");
  c_optimal->add_option("--out", op_out, "output path (default stdout)");

  // oracle
  auto* c_oracle = app.add_subcommand("oracle", "search-based optimal design");
  FSpec or_f;
  or_f.add_flags(c_oracle);
  int or_n = 0, or_nb = 1, or_na = 1;
  std::string or_c, or_mode = "all-graphs", or_out;
  bool or_compare = false;
  c_oracle->add_option("--n", or_n)->required();
  c_oracle->add_option("--c", or_c)->required();
  c_oracle->add_option("--nb", or_nb);
  c_oracle->add_option("--na", or_na);
  c_oracle->add_option("--mode", or_mode, "all-graphs|structured")
      ->check(CLI::IsMember({"all-graphs", "structured"}));
  c_oracle->add_flag("--compare", or_compare,
                     "cross-check against the closed form (or the other mode)");
  c_oracle->add_option("--out", or_out, "output path (default stdout)");

  // equilibria
  auto* c_eq = app.add_subcommand("equilibria", "node-protection subgame equilibria");
  FSpec eq_f;
  eq_f.add_flags(c_eq);
  std::string eq_star, eq_network, eq_c, eq_mode = "pessimistic", eq_out;
  int eq_nb = 1, eq_na = 1;
  c_eq->add_option("--star", eq_star, "generalized star as n:k");
  c_eq->add_option("--network", eq_network, "path to a network JSON file");
  c_eq->add_option("--c", eq_c)->required();
  c_eq->add_option("--nb", eq_nb);
  c_eq->add_option("--na", eq_na);
  c_eq->add_option("--mode", eq_mode, "pessimistic|expected")
      ->check(CLI::IsMember({"pessimistic", "expected"}));
  c_eq->add_option("--out", eq_out, "output path (default stdout)");

  // poa
  auto* c_poa = app.add_subcommand("poa", "price of anarchy over the star family");
  FSpec poa_f;
  poa_f.add_flags(c_poa);
  std::string poa_n, poa_c, poa_out, poa_svg;
  int poa_nb = 1, poa_na = 1;
  bool poa_trend = false;
  c_poa->add_option("--n", poa_n, "n or comma-separated list with --trend")->required();
  c_poa->add_option("--c", poa_c)->required();
  c_poa->add_option("--nb", poa_nb);
  c_poa->add_option("--na", poa_na);
  c_poa->add_flag("--trend", poa_trend, "compute the whole sequence");
  c_poa->add_option("--svg", poa_svg, "write an SVG chart (trend only)");
  c_poa->add_option("--out", poa_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  auto make_vf = [](const FSpec& spec, VfHandle& handle) -> nd_status {
    return nd_vf_create(spec.to_json().dump().c_str(), &handle.vf);
  };

  try {
  if (*c_validate) {
    VfHandle vf;
    if (nd_status s = make_vf(vf_f, vf); s != ND_OK) return fail(s);
    int all_pass = 0;
    OwnedString report;
    nd_status s = nd_validate_value_function(vf.vf, xmax, &all_pass, &report.ptr);
    if (s != ND_OK) return fail(s);
    nlohmann::json config = {{"command", "validate-f"},
                             {"f", vf_f.to_json()},
                             {"xmax", xmax}};
    if (!write_output(v_out, wrap_result(config, report.str())))
      return kExitInputError;
    return all_pass ? kExitOk : kExitCheckFailed;
  }

  if (*c_thresholds) {
    VfHandle vf;
    if (nd_status s = make_vf(th_f, vf); s != ND_OK) return fail(s);
    std::string config_line =
        "n_B=1 n_A=1 command=thresholds";
    OwnedString json, csv;
    nd_status s = nd_threshold_table(th_n, vf.vf, config_line.c_str(),
                                     &json.ptr, &csv.ptr);
    if (s != ND_OK) return fail(s);
    if (!write_output(th_out, csv.str())) return kExitInputError;
    if (!th_expect.empty()) {
      if (th_expect != "table2") {
        std::cerr << "error: unknown reference '" << th_expect << "'\n";
        return kExitInputError;
      }
      int match = 0;
      OwnedString detail;
      s = nd_threshold_table_expect_reference(th_n, vf.vf, &match, &detail.ptr);
      if (s != ND_OK) return fail(s);
      std::cerr << detail.str();
      if (!match) return kExitCheckFailed;
    }
    return kExitOk;
  }

  if (*c_optimal) {
    VfHandle vf;
    if (nd_status s = make_vf(op_f, vf); s != ND_OK) return fail(s);
    OwnedString json;
    nd_status s = nd_optimal_design(op_n, op_c.c_str(), vf.vf, op_nb, op_na,
                                    &json.ptr);
    if (s != ND_OK) return fail(s);
    nlohmann::json config = {{"command", "optimal"}, {"n", op_n},
                             {"c", op_c},           {"nb", op_nb},
                             {"na", op_na},         {"f", op_f.to_json()}};
    if (!write_output(op_out, wrap_result(config, json.str())))
      return kExitInputError;
    return kExitOk;
  }

  if (*c_oracle) {
    VfHandle vf;
    if (nd_status s = make_vf(or_f, vf); s != ND_OK) return fail(s);
    OwnedString json;
    nd_status s = nd_brute_force_optimal(or_n, or_c.c_str(), or_nb, or_na,
                                         vf.vf, or_mode.c_str(), &json.ptr);
    if (s != ND_OK) return fail(s);
    nlohmann::json config = {{"command", "oracle"}, {"n", or_n},
                             {"c", or_c},          {"nb", or_nb},
                             {"na", or_na},        {"mode", or_mode},
                             {"f", or_f.to_json()}};
    if (!write_output(or_out, wrap_result(config, json.str())))
      return kExitInputError;
    if (or_compare) {
      std::string oracle_payoff =
          nlohmann::json::parse(json.str()).at("payoff").get<std::string>();
      std::string other_payoff;
      if (or_nb == 1 && or_na == 1) {
        OwnedString closed;
        s = nd_optimal_design(or_n, or_c.c_str(), vf.vf, 1, 1, &closed.ptr);
        if (s != ND_OK) return fail(s);
        other_payoff =
            nlohmann::json::parse(closed.str()).at("payoff").get<std::string>();
      } else {
        const char* other_mode =
            or_mode == "all-graphs" ? "structured" : "all-graphs";
        OwnedString other;
        s = nd_brute_force_optimal(or_n, or_c.c_str(), or_nb, or_na, vf.vf,
                                   other_mode, &other.ptr);
        if (s != ND_OK) return fail(s);
        other_payoff =
            nlohmann::json::parse(other.str()).at("payoff").get<std::string>();
      }
      if (oracle_payoff == other_payoff) {
        std::cout << "MATCH " << oracle_payoff << "\n";
      } else {
        std::cout << "MISMATCH oracle=" << oracle_payoff
                  << " reference=" << other_payoff << "\n";
        return kExitCheckFailed;
      }
    }
    return kExitOk;
  }

  if (*c_eq) {
    VfHandle vf;
    if (nd_status s = make_vf(eq_f, vf); s != ND_OK) return fail(s);
    NetworkHandle net;
    if (!eq_star.empty()) {
      auto colon = eq_star.find(':');
      if (colon == std::string::npos) {
        std::cerr << "error: --star expects n:k\n";
        return kExitInputError;
      }
      int n = std::stoi(eq_star.substr(0, colon));
      int k = std::stoi(eq_star.substr(colon + 1));
      if (nd_status s = nd_network_build_star(n, k, &net.g); s != ND_OK)
        return fail(s);
    } else if (!eq_network.empty()) {
      std::ifstream in(eq_network, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read " << eq_network << "\n";
        return kExitInputError;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      if (nd_status s = nd_network_from_json(buffer.str().c_str(), &net.g);
          s != ND_OK)
        return fail(s);
    } else {
      std::cerr << "error: provide --star or --network\n";
      return kExitInputError;
    }
    OwnedString json;
    nd_status s = nd_node_game_equilibria(net.g, eq_c.c_str(), eq_nb, eq_na,
                                          vf.vf, eq_mode.c_str(), &json.ptr);
    if (s != ND_OK) return fail(s);
    nlohmann::json config = {{"command", "equilibria"},
                             {"star", eq_star},
                             {"network", eq_network},
                             {"c", eq_c},
                             {"nb", eq_nb},
                             {"na", eq_na},
                             {"mode", eq_mode},
                             {"f", eq_f.to_json()}};
    if (!write_output(eq_out, wrap_result(config, json.str())))
      return kExitInputError;
    return kExitOk;
  }

  if (*c_poa) {
    VfHandle vf;
    if (nd_status s = make_vf(poa_f, vf); s != ND_OK) return fail(s);
    nlohmann::json config = {{"command", "poa"}, {"n", poa_n},
                             {"c", poa_c},      {"nb", poa_nb},
                             {"na", poa_na},    {"trend", poa_trend},
                             {"f", poa_f.to_json()}};
    if (poa_trend) {
      nlohmann::json ns = parse_int_list(poa_n);
      OwnedString json, svg;
      nd_status s = nd_poa_trend(poa_c.c_str(), ns.dump().c_str(), poa_nb,
                                 poa_na, vf.vf, &json.ptr,
                                 poa_svg.empty() ? nullptr : &svg.ptr);
      if (s != ND_OK) return fail(s);
      if (!write_output(poa_out, wrap_result(config, json.str())))
        return kExitInputError;
      if (!poa_svg.empty() && !write_output(poa_svg, svg.str()))
        return kExitInputError;
      return kExitOk;
    }
    OwnedString json;
    nd_status s = nd_price_of_anarchy(std::stoi(poa_n), poa_c.c_str(), poa_nb,
                                      poa_na, vf.vf, &json.ptr);
    if (s != ND_OK) return fail(s);
    if (!write_output(poa_out, wrap_result(config, json.str())))
      return kExitInputError;
    return kExitOk;
  }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  (void)jobs;
  return kExitOk;
}
