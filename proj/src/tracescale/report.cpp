#include "tracelab/report.hpp"

#include <cmath>
#include <limits>

#include "tracelab/error.hpp"

namespace tracelab {

void SuiteReport::residual(const std::string& name, double value) {
  residuals[name] = (std::isfinite(value) && value >= 0) ? value : std::numeric_limits<double>::infinity();
}

void SuiteReport::gate_residual(const std::string& name, double value, double threshold) {
  residual(name, value);
  gate(name, residuals[name], "<=", threshold);
}

void SuiteReport::gate(const std::string& name, double value, const std::string& relation,
                       double threshold) {
  bool pass = false;
  if (std::isfinite(value)) {
    if (relation == "<=") {
      pass = value <= threshold;
    } else if (relation == "<") {
      pass = value < threshold;
    } else if (relation == ">=") {
      pass = value >= threshold;
    } else {
      throw Error(ErrorKind::BadParameter, "unknown relation " + relation);
    }
  }
  verdicts.push_back({name, value, relation, threshold, pass});
}

bool SuiteReport::passed() const {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

Tolerances::Tolerances()
    : values_{
          {"penrose", 1e-10},
          {"involution_adjoint", 1e-12},
          {"involution_pinv", 1e-9},
          {"adjointness", 1e-10},
          {"labrousse", 1e-10},
          {"norm_identity", 1e-10},
          {"tb_penrose", 1e-10},
          {"tb_crosscheck", 1e-9},
          {"decompose", 1e-10},
          {"douglas_factor", 1e-10},
          {"douglas_kernel", 1e-8},
          {"douglas_mu_lower", 1e-10},
          {"two_path", 1e-8},
          {"hand_values", 1e-12},
          {"harmonic_gate", 1e-8},
          {"green", 1e-10},
          {"robin_identity", 1e-10},
          {"proof_identity", 1e-9},
          {"energy_split", 1e-10},
          {"hhalf_drift", 0.25},
          {"h1_growth", 3.0},
          {"necas_growth", 3.0},
          {"reproduction", 1e-10},
          {"interp", 1e-10},
          {"duality", 1e-9},
      } {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw Error(ErrorKind::BadParameter, "unknown tolerance '" + name + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  if (!known(name)) throw Error(ErrorKind::ConfigParseError, "unknown tolerance '" + name + "'");
  if (!(value > 0) || !std::isfinite(value)) {
    throw Error(ErrorKind::ConfigParseError, "tolerance '" + name + "' must be positive");
  }
  values_[name] = value;
}

}  // namespace tracelab
