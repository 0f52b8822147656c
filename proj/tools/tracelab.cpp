#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracelab/cli/runner.hpp"
#include "tracelab/error.hpp"
#include "tracelab/fem2d/mesh.hpp"

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracelab: trace-space verification runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run verification suites and write JSON/CSV reports");
  std::string config_file;
  std::vector<std::string> suites, meshes, refinements, tols;
  std::string seed, trials, out;
  bool no_csv = false;
  run->add_option("--config", config_file, "Flat key=value config file");
  run->add_option("--suite", suites, "Suites: oplab,pde,hhalf,h1,necas,interp,dual")->delimiter(',');
  run->add_option("--mesh", meshes, "Mesh kinds: interval,square,lshape")->delimiter(',');
  run->add_option("--n", refinements, "Refinement levels")->delimiter(',');
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--trials", trials, "Random operator fixtures for the oplab suite");
  run->add_option("--tol", tols, "Tolerance override NAME=VAL");
  run->add_option("--out", out, "Output directory (default $TRACELAB_OUT or .)");
  run->add_flag("--no-csv", no_csv, "Skip the CSV table");

  auto* dump = app.add_subcommand("mesh", "Print a generated mesh");
  std::string dump_kind = "square";
  int dump_n = 4;
  dump->add_option("--mesh", dump_kind, "Mesh kind");
  dump->add_option("--n", dump_n, "Refinement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (dump->parsed()) {
    try {
      namespace fem2d = tracelab::fem2d;
      fem2d::write_mesh(std::cout, fem2d::gen_mesh(fem2d::parse_mesh_kind(dump_kind), dump_n));
    } catch (const tracelab::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  tracelab::cli::RunConfig cfg;
  if (const char* env = std::getenv("TRACELAB_OUT"); env && *env) cfg.out_dir = env;
  try {
    using tracelab::cli::apply_setting;
    if (!config_file.empty()) tracelab::cli::apply_config_file(cfg, config_file);
    if (!suites.empty()) apply_setting(cfg, "suites", join(suites));
    if (!meshes.empty()) apply_setting(cfg, "meshes", join(meshes));
    if (!refinements.empty()) apply_setting(cfg, "refinements", join(refinements));
    if (!seed.empty()) apply_setting(cfg, "seed", seed);
    if (!trials.empty()) apply_setting(cfg, "trials", trials);
    if (!out.empty()) apply_setting(cfg, "out", out);
    if (no_csv) cfg.csv = false;
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw tracelab::Error(tracelab::ErrorKind::ConfigParseError, "--tol expects NAME=VAL");
      }
      apply_setting(cfg, "tol." + t.substr(0, eq), t.substr(eq + 1));
    }
  } catch (const tracelab::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::string message;
  const int code = tracelab::cli::run(cfg, &message);
  if (code == 2) {
    std::cerr << "config error: " << message << "\n";
  } else {
    std::cout << message << "\n" << tracelab::cli::json_path(cfg) << "\n";
  }
  return code;
}
