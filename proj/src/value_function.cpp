#include "netdefend/value_function.hpp"

#include <climits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace netdef {

ValueFunction ValueFunction::power(int exponent) {
  if (exponent < 2)
    throw std::invalid_argument("power family requires exponent >= 2");
  ValueFunction f;
  f.family_ = VfFamily::Power;
  f.exponent_ = exponent;
  return f;
}

ValueFunction ValueFunction::exp_minus_one() {
  ValueFunction f;
  f.family_ = VfFamily::ExpMinusOne;
  return f;
}

ValueFunction ValueFunction::table(std::vector<Int> values) {
  if (values.empty()) throw std::invalid_argument("empty value table");
  ValueFunction f;
  f.family_ = VfFamily::Table;
  f.values_ = std::move(values);
  return f;
}

ValueFunction ValueFunction::from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "power") return power(j.at("a").get<int>());
  if (family == "exp") return exp_minus_one();
  if (family == "table") {
    std::vector<Int> values;
    for (const auto& v : j.at("values")) {
      if (v.is_string())
        values.emplace_back(v.get<std::string>());
      else
        values.emplace_back(v.get<long long>());
    }
    return table(std::move(values));
  }
  throw std::invalid_argument("unknown value function family: " + family);
}

nlohmann::json ValueFunction::to_json() const {
  switch (family_) {
    case VfFamily::Power:
      return {{"family", "power"}, {"a", exponent_}};
    case VfFamily::ExpMinusOne:
      return {{"family", "exp"}};
    case VfFamily::Table: {
      nlohmann::json values = nlohmann::json::array();
      for (const auto& v : values_) values.push_back(v.str());
      return {{"family", "table"}, {"values", values}};
    }
  }
  throw std::logic_error("unreachable");
}

Int ValueFunction::operator()(int x) const {
  if (x < 0) throw std::domain_error("value function argument must be >= 0");
  switch (family_) {
    case VfFamily::Power: {
      Int result = 1;
      for (int i = 0; i < exponent_; ++i) result *= x;
      return result;
    }
    case VfFamily::ExpMinusOne:
      return (Int(1) << x) - 1;
    case VfFamily::Table:
      if (static_cast<std::size_t>(x) >= values_.size())
        throw std::domain_error("value table does not cover x = " +
                                std::to_string(x));
      return values_[static_cast<std::size_t>(x)];
  }
  throw std::logic_error("unreachable");
}

int ValueFunction::max_argument() const {
  if (family_ == VfFamily::Table) return static_cast<int>(values_.size()) - 1;
  return INT_MAX;
}

std::string ValueFunction::describe() const {
  switch (family_) {
    case VfFamily::Power:
      return "x^" + std::to_string(exponent_);
    case VfFamily::ExpMinusOne:
      return "2^x-1";
    case VfFamily::Table:
      return "table[0.." + std::to_string(values_.size() - 1) + "]";
  }
  return "?";
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const AssumptionCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc = {{"name", c.name}, {"pass", c.pass}};
    if (!c.pass) {
      jc["witness"] = c.witness;
      jc["detail"] = c.detail;
    }
    arr.push_back(jc);
  }
  return {{"x_max", x_max}, {"all_pass", all_pass()}, {"checks", arr}};
}

ValidationReport validate_value_function(const ValueFunction& f, int x_max) {
  if (x_max < 3) throw std::invalid_argument("x_max must be >= 3");
  if (f.max_argument() < x_max)
    throw std::invalid_argument(
        "value table must cover [0, x_max]; no interpolation is performed");

  std::vector<Int> v(static_cast<std::size_t>(x_max) + 1);
  for (int x = 0; x <= x_max; ++x) v[static_cast<std::size_t>(x)] = f(x);

  ValidationReport report;
  report.x_max = x_max;
  auto add = [&](std::string name, bool pass, int witness, std::string detail) {
    report.checks.push_back(
        {std::move(name), pass, pass ? -1 : witness, std::move(detail)});
  };

  add("f0-zero", v[0] == 0, 0, "f(0) = " + v[0].str());

  {
    bool pass = true;
    int w = -1;
    for (int x = 0; x < x_max && pass; ++x)
      if (v[x + 1] <= v[x]) pass = false, w = x;
    add("strictly-increasing", pass, w, "f(x+1) <= f(x)");
  }
  {
    // Strict discrete convexity: gaps f(x+1) - f(x) strictly increase.
    bool pass = true;
    int w = -1;
    for (int x = 0; x + 2 <= x_max && pass; ++x)
      if (v[x + 2] - v[x + 1] <= v[x + 1] - v[x]) pass = false, w = x;
    add("strictly-convex", pass, w, "gap at x+1 not larger than gap at x");
  }
  {
    bool pass = true;
    int w = -1;
    for (int x = 1; 3 * x <= x_max && pass; ++x)
      if (v[3 * x] < 2 * v[2 * x]) pass = false, w = x;
    add("growth-3x", pass, w, "f(3x) < 2 f(2x)");
  }
  {
    bool pass = true;
    int w = -1;
    for (int x = 1; 3 * x + 2 <= x_max && pass; ++x)
      if (v[3 * x + 2] < v[2 * x + 2] + v[2 * x + 1]) pass = false, w = x;
    add("growth-3x2", pass, w, "f(3x+2) < f(2x+2) + f(2x+1)");
  }
  {
    bool pass = true;
    int w = -1;
    for (int x = 1; x <= x_max / 2 && pass; ++x)
      for (int y = x; x + y <= x_max; ++y)
        if (v[x + y] <= v[x] + v[y]) {
          pass = false;
          w = x;
          break;
        }
    add("superadditive", pass, w, "f(x+y) <= f(x) + f(y)");
  }
  {
    // f(x)/x nondecreasing: x f(x+1) >= (x+1) f(x).
    bool pass = true;
    int w = -1;
    for (int x = 1; x < x_max && pass; ++x)
      if (Int(x) * v[x + 1] < Int(x + 1) * v[x]) pass = false, w = x;
    add("ratio-nondecreasing", pass, w, "f(x+1)/(x+1) < f(x)/x");
  }
  {
    bool pass = true;
    int w = -1;
    for (int t = 1; t <= x_max - 2 && pass; ++t)
      for (int x = 1; x + 1 + t <= x_max; ++x)
        if (v[x + 1 + t] - v[x + 1] <= v[x + t] - v[x]) {
          pass = false;
          w = x;
          break;
        }
    add("gap-increasing", pass, w, "f(x+t) - f(x) not strictly increasing");
  }
  {
    bool pass = true;
    int w = -1;
    for (int y = 1; pass && 3 * y <= x_max; ++y)
      for (int x = 2 * y; x + y <= x_max; ++x)
        if (v[x + y] < v[x] + v[2 * y]) {
          pass = false;
          w = x;
          break;
        }
    add("moving-half", pass, w, "f(x+y) < f(x) + f(2y)");
  }
  return report;
}

}  // namespace netdef
