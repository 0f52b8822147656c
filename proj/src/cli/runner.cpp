#include "tracelab/cli/runner.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tracelab/error.hpp"
#include "tracelab/fem2d/assembly.hpp"
#include "tracelab/tracescale/suites.hpp"

namespace tracelab::cli {

namespace {

using json = nlohmann::ordered_json;

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::string format(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

SuiteReport run_cell(const std::string& suite, const fem2d::Assembly* a, const tracescale::SuiteOptions& opt) {
  using namespace tracescale;
  if (suite == "oplab") return suite_oplab(opt);
  if (suite == "pde") return suite_pde(*a, opt);
  if (suite == "hhalf") return suite_hhalf(*a, opt);
  if (suite == "h1") return suite_h1(*a, opt);
  if (suite == "necas") return necas_constants(*a, opt.necas_samples, opt.seed, opt.tol);
  if (suite == "interp") return suite_interp(*a, opt);
  if (suite == "dual") return suite_dual(*a, opt);
  throw Error(ErrorKind::ConfigParseError, "unknown suite '" + suite + "'");
}

SuiteReport failed_cell(const std::string& suite, const std::string& mesh, int n, const std::string& what) {
  SuiteReport r;
  r.suite = suite;
  r.mesh = mesh;
  r.n = n;
  r.gate("error: " + what, std::numeric_limits<double>::infinity(), "<=", 0);
  return r;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

bool RunResult::passed() const {
  for (const auto& r : reports) {
    if (!r.passed()) return false;
  }
  return true;
}

RunResult run_suites(const RunConfig& cfg) {
  RunResult out;
  const Tolerances tol = cfg.tolerances();
  std::map<std::pair<fem2d::MeshKind, int>, std::unique_ptr<fem2d::Assembly>> assemblies;
  auto assembly = [&](fem2d::MeshKind kind, int n) -> const fem2d::Assembly& {
    auto& slot = assemblies[{kind, n}];
    if (!slot) slot = std::make_unique<fem2d::Assembly>(fem2d::assemble(fem2d::gen_mesh(kind, n)));
    return *slot;
  };

  for (const auto& suite : cfg.suites) {
    tracescale::SuiteOptions opt;
    opt.tol = tol;
    opt.trials = cfg.trials;
    if (!is_mesh_suite(suite)) {
      opt.seed = cell_seed(cfg.seed, suite, "none", 0);
      try {
        out.reports.push_back(run_cell(suite, nullptr, opt));
      } catch (const std::exception& e) {
        out.reports.push_back(failed_cell(suite, "none", 0, e.what()));
      }
      continue;
    }
    for (auto kind : cfg.meshes) {
      const std::string mesh(fem2d::to_string(kind));
      std::vector<SuiteReport> levels;
      for (int n : cfg.refinements_for(kind)) {
        opt.seed = cell_seed(cfg.seed, suite, mesh, n);
        try {
          levels.push_back(run_cell(suite, &assembly(kind, n), opt));
        } catch (const std::exception& e) {
          levels.push_back(failed_cell(suite, mesh, n, e.what()));
        }
        out.reports.push_back(levels.back());
      }
      if (levels.size() > 1 && tracescale::has_refinement_gates(suite)) {
        out.reports.push_back(tracescale::refinement_report(levels, tol));
      }
    }
  }
  return out;
}

std::string to_json(const RunConfig& cfg, const RunResult& result) {
  json config;
  config["suites"] = cfg.suites;
  json meshes = json::object();
  for (auto kind : cfg.meshes) meshes[std::string(fem2d::to_string(kind))] = cfg.refinements_for(kind);
  config["meshes"] = meshes;
  config["seed"] = cfg.seed;
  config["trials"] = cfg.trials;
  json tol = json::object();
  const Tolerances effective = cfg.tolerances();
  for (const auto& [name, value] : effective.values()) tol[name] = value;
  config["tolerances"] = tol;

  json results = json::array();
  json failed = json::array();
  std::size_t gated = 0;
  for (const auto& r : result.reports) {
    json item;
    item["suite"] = r.suite;
    item["mesh"] = r.mesh;
    item["n"] = r.n;
    item["pass"] = r.passed();
    json residuals = json::object();
    for (const auto& [k, v] : r.residuals) residuals[k] = number(v);
    item["residuals"] = residuals;
    json constants = json::object();
    for (const auto& [k, v] : r.constants) constants[k] = number(v);
    item["constants"] = constants;
    json matrices = json::object();
    for (const auto& [k, m] : r.matrices) matrices[k] = matrix_json(m);
    item["matrices"] = matrices;
    json verdicts = json::array();
    for (const auto& v : r.verdicts) {
      verdicts.push_back({{"name", v.name},
                          {"value", number(v.value)},
                          {"relation", v.relation},
                          {"threshold", number(v.threshold)},
                          {"pass", v.pass}});
      ++gated;
      if (!v.pass) failed.push_back(r.suite + "/" + r.mesh + "/" + std::to_string(r.n) + "/" + v.name);
    }
    item["verdicts"] = verdicts;
    results.push_back(item);
  }

  json doc;
  doc["config"] = config;
  doc["results"] = results;
  doc["verdict"] = {{"pass", result.passed()}, {"gated", gated}, {"failed", failed}};
  return doc.dump(2) + "\n";
}

std::string to_csv(const RunResult& result) {
  std::ostringstream out;
  out << "suite,mesh,n,metric,value\n";
  for (const auto& r : result.reports) {
    const std::string prefix = r.suite + "," + r.mesh + "," + std::to_string(r.n) + ",";
    std::set<std::string> seen;
    for (const auto& [k, v] : r.residuals) {
      out << prefix << k << "," << format(v) << "\n";
      seen.insert(k);
    }
    for (const auto& [k, v] : r.constants) {
      out << prefix << k << "," << format(v) << "\n";
      seen.insert(k);
    }
    for (const auto& v : r.verdicts) {
      if (seen.count(v.name) == 0 && v.name.find(',') == std::string::npos) {
        out << prefix << v.name << "," << format(v.value) << "\n";
      }
    }
  }
  return out.str();
}

std::string json_path(const RunConfig& cfg) {
  return (std::filesystem::path(cfg.out_dir) / "tracelab_report.json").string();
}

std::string csv_path(const RunConfig& cfg) {
  return (std::filesystem::path(cfg.out_dir) / "tracelab_report.csv").string();
}

void write_reports(const RunConfig& cfg, const RunResult& result) {
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream(json_path(cfg), std::ios::binary) << to_json(cfg, result);
  if (cfg.csv) std::ofstream(csv_path(cfg), std::ios::binary) << to_csv(result);
}

int run(const RunConfig& cfg, std::string* message) {
  try {
    validate(cfg);
    (void)cfg.tolerances();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return 2;
  }
  const RunResult result = run_suites(cfg);
  write_reports(cfg, result);
  if (message) {
    std::size_t failures = 0;
    for (const auto& r : result.reports) {
      for (const auto& v : r.verdicts) failures += !v.pass;
    }
    *message = result.passed() ? "all verdicts pass" : std::to_string(failures) + " verdict(s) failed";
  }
  return result.passed() ? 0 : 1;
}

}  // namespace tracelab::cli
