#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netdefend/rational.hpp"

namespace netdef {

enum class VfFamily { Power, ExpMinusOne, Table };

/// Component value function f evaluated on nonnegative integers with exact
/// integer arithmetic. Built-in families: x^a (a >= 2) and 2^x - 1. User
/// tables must cover every argument they are queried at; there is no
/// interpolation.
class ValueFunction {
 public:
  static ValueFunction power(int exponent);
  static ValueFunction exp_minus_one();
  static ValueFunction table(std::vector<Int> values);

  static ValueFunction from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  VfFamily family() const { return family_; }
  int exponent() const { return exponent_; }

  /// f(x). Throws std::domain_error for x < 0 or beyond a table's range.
  Int operator()(int x) const;

  /// Largest valid argument (table size - 1 for tables, INT_MAX otherwise).
  int max_argument() const;

  std::string describe() const;

 private:
  ValueFunction() = default;

  VfFamily family_ = VfFamily::Power;
  int exponent_ = 2;
  std::vector<Int> values_;
};

struct AssumptionCheck {
  std::string name;
  bool pass = true;
  int witness = -1;  // first counterexample point, -1 if none
  std::string detail;
};

struct ValidationReport {
  int x_max = 0;
  std::vector<AssumptionCheck> checks;

  bool all_pass() const;
  const AssumptionCheck* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Checks the model assumptions on the integer points of [0, x_max]:
/// f(0) = 0, strict increase, strict discrete convexity, the growth
/// inequalities f(3x) >= 2 f(2x) and f(3x+2) >= f(2x+2) + f(2x+1), plus the
/// derived properties (superadditivity, nondecreasing f(x)/x, increasing gaps
/// f(x+t) - f(x), and f(x+y) >= f(x) + f(2y) instances). Failures are
/// reported with a witness, never thrown. Requires x_max >= 3.
ValidationReport validate_value_function(const ValueFunction& f, int x_max);

}  // namespace netdef
