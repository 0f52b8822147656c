#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tracelab {

/// One gated comparison: `value` against `threshold` under `relation`
/// ("<=", "<" or ">=").
struct Verdict {
  std::string name;
  double value = 0;
  std::string relation;
  double threshold = 0;
  bool pass = false;
};

/// Named residuals, empirical constants and verdicts of one verification
/// run on one mesh (or on the operator fixtures, for the oplab suite).
struct SuiteReport {
  std::string suite;
  std::string mesh;  // "none" for mesh-free suites
  int n = 0;
  std::map<std::string, double> residuals;
  std::map<std::string, double> constants;
  std::map<std::string, Eigen::MatrixXd> matrices;
  std::vector<Verdict> verdicts;

  /// Residuals must be finite and non-negative; anything else is stored as
  /// +inf so that any gate on it fails.
  void residual(const std::string& name, double value);
  void constant(const std::string& name, double value) { constants[name] = value; }

  /// Records residual `name` and gates it with `value <= threshold`.
  void gate_residual(const std::string& name, double value, double threshold);

  void gate(const std::string& name, double value, const std::string& relation, double threshold);

  bool passed() const;
};

/// Default thresholds by name, optionally overridden from the command line.
class Tolerances {
 public:
  Tolerances();

  double get(const std::string& name) const;
  void set(const std::string& name, double value);
  bool known(const std::string& name) const { return values_.count(name) > 0; }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace tracelab
