#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tracelab/fem2d/mesh.hpp"
#include "tracelab/report.hpp"

namespace tracelab::cli {

/// Everything a run needs. Refinement lists are per mesh kind; a kind
/// without an entry uses `refinements`.
struct RunConfig {
  std::vector<std::string> suites;
  std::vector<fem2d::MeshKind> meshes{fem2d::MeshKind::Interval, fem2d::MeshKind::Square, fem2d::MeshKind::LShape};
  std::vector<int> refinements{4, 8, 16};
  std::map<fem2d::MeshKind, std::vector<int>> mesh_refinements;
  std::uint64_t seed = 0;
  int trials = 100;
  std::map<std::string, double> tolerance_overrides;
  std::string out_dir = ".";
  bool csv = true;

  const std::vector<int>& refinements_for(fem2d::MeshKind kind) const;
  Tolerances tolerances() const;
};

const std::vector<std::string>& known_suites();
bool is_mesh_suite(const std::string& suite);

/// Flat key=value lines; '#' starts a comment. Keys:
///   suites, meshes, refinements, refinements.<mesh>, seed, trials, out,
///   csv, tol.<name>
/// Throws ConfigParseError.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// One assignment, as from a config line or a command-line flag.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Throws ConfigParseError on an empty or unknown suite list, non-positive
/// or (for lshape) odd refinements, trials < 1, bad tolerances.
void validate(const RunConfig& cfg);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& text);

/// seed XOR fnv1a64("suite/mesh/n").
std::uint64_t cell_seed(std::uint64_t seed, const std::string& suite, const std::string& mesh, int n);

}  // namespace tracelab::cli
