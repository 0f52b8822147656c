#include "tracelab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tracelab/error.hpp"

namespace tracelab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ConfigParseError, msg); }

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail("bad value '" + text + "' for " + key);
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) fail("bad value '" + text + "' for " + key);
    return v;
  } catch (const std::logic_error&) {
    fail("bad value '" + text + "' for " + key);
  }
}

std::vector<int> parse_refinements(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<int>(key, item));
  if (out.empty()) fail(key + " is empty");
  return out;
}

fem2d::MeshKind parse_mesh(const std::string& name) {
  try {
    return fem2d::parse_mesh_kind(name);
  } catch (const Error&) {
    fail("unknown mesh kind '" + name + "'");
  }
}

}  // namespace

const std::vector<int>& RunConfig::refinements_for(fem2d::MeshKind kind) const {
  const auto it = mesh_refinements.find(kind);
  return it == mesh_refinements.end() ? refinements : it->second;
}

Tolerances RunConfig::tolerances() const {
  Tolerances tol;
  for (const auto& [name, value] : tolerance_overrides) tol.set(name, value);
  return tol;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites = {"oplab", "pde", "hhalf", "h1", "necas", "interp", "dual"};
  return suites;
}

bool is_mesh_suite(const std::string& suite) { return suite != "oplab"; }

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "suites" || key == "suite") {
    cfg.suites = split_list(value);
  } else if (key == "meshes" || key == "mesh") {
    cfg.meshes.clear();
    for (const auto& name : split_list(value)) cfg.meshes.push_back(parse_mesh(name));
  } else if (key == "refinements" || key == "n") {
    cfg.refinements = parse_refinements(key, value);
    cfg.mesh_refinements.clear();
  } else if (key.rfind("refinements.", 0) == 0) {
    cfg.mesh_refinements[parse_mesh(key.substr(12))] = parse_refinements(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_number<int>(key, value);
  } else if (key == "out") {
    cfg.out_dir = trim(value);
  } else if (key == "csv") {
    const std::string v = trim(value);
    if (v != "true" && v != "false") fail("csv must be true or false");
    cfg.csv = v == "true";
  } else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    if (!Tolerances().known(name)) fail("unknown tolerance '" + name + "'");
    cfg.tolerance_overrides[name] = parse_real(key, value);
  } else {
    fail("unknown config key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("line " + std::to_string(number) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(cfg, buffer.str());
}

void validate(const RunConfig& cfg) {
  if (cfg.suites.empty()) fail("no suites selected");
  for (const auto& s : cfg.suites) {
    const auto& known = known_suites();
    if (std::find(known.begin(), known.end(), s) == known.end()) fail("unknown suite '" + s + "'");
  }
  const bool needs_mesh = std::any_of(cfg.suites.begin(), cfg.suites.end(), is_mesh_suite);
  if (needs_mesh && cfg.meshes.empty()) fail("no meshes selected");
  for (auto kind : cfg.meshes) {
    for (int n : cfg.refinements_for(kind)) {
      if (n < 1) fail("refinements must be positive");
      if (kind == fem2d::MeshKind::LShape && n % 2 != 0) fail("lshape refinements must be even");
    }
  }
  if (cfg.trials < 1) fail("trials must be at least 1");
  for (const auto& [name, value] : cfg.tolerance_overrides) {
    if (!(value > 0)) fail("tolerance '" + name + "' must be positive");
  }
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t cell_seed(std::uint64_t seed, const std::string& suite, const std::string& mesh, int n) {
  return seed ^ fnv1a64(suite + "/" + mesh + "/" + std::to_string(n));
}

}  // namespace tracelab::cli
