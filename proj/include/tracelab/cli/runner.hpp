#pragma once

#include <string>
#include <vector>

#include "tracelab/cli/config.hpp"
#include "tracelab/report.hpp"

namespace tracelab::cli {

struct RunResult {
  std::vector<SuiteReport> reports;
  bool passed() const;
};

/// Executes every (suite, mesh, n) cell in config order, followed by the
/// refinement summary of each (suite, mesh) with more than one level.
/// A cell that throws contributes a failing "error" verdict.
RunResult run_suites(const RunConfig& cfg);

/// Serializations; byte-identical for identical inputs.
std::string to_json(const RunConfig& cfg, const RunResult& result);
std::string to_csv(const RunResult& result);

std::string json_path(const RunConfig& cfg);
std::string csv_path(const RunConfig& cfg);

/// Writes the JSON report and, if enabled, the CSV table.
void write_reports(const RunConfig& cfg, const RunResult& result);

/// Validate, run, write. Returns 0 when every verdict passes, 1 otherwise
/// and 2 on a configuration error (nothing written).
int run(const RunConfig& cfg, std::string* message = nullptr);

}  // namespace tracelab::cli
