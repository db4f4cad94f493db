#include "mhdshell/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mhdshell/errors.hpp"

namespace mhdshell::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + v + "' as a number");
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + v + "' as an unsigned integer");
  }
}

int parse_int(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + v + "' as an integer");
  }
}

const char* kRecipes[] = {"equilibrium", "density-bump", "magnetic-bump", "shell-kick",
                          "collapse"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunParams::validate() const {
  if (T < 0.0) throw ConfigError("run.T must be nonnegative");
  if (!(dt > 0.0)) throw ConfigError("run.dt must be positive");
  const double windows = T / dt;
  if (std::abs(windows - std::round(windows)) > 1e-9 * std::max(1.0, windows))
    throw ConfigError("run.dt must divide run.T into an integer number of windows");
  if (std::find(std::begin(kRecipes), std::end(kRecipes), recipe) == std::end(kRecipes))
    throw ConfigError("run.recipe '" + recipe + "' is not one of equilibrium, density-bump, magnetic-bump, shell-kick, collapse");
}

void RunConfig::validate() const {
  geometry.validate();
  eos.validate();
  shell.validate();
  fluid.validate();
  run.validate();
  const double h = 2.0 * geometry.box_halfwidth / fluid.nx;
  const double reach = geometry.radius + geometry.beta_bound + (fluid.kernel_halfwidth + 1) * h;
  if (geometry.box_halfwidth < reach)
    throw ConfigError("geometry.box_halfwidth too small: spreading kernels around the most deformed interface would touch the box rim");
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  os << "eos.a=" << fmt(eos.a) << "\n";
  os << "eos.beta=" << fmt(eos.beta) << "\n";
  os << "eos.delta=" << fmt(eos.delta) << "\n";
  os << "eos.eta_bar=" << fmt(eos.eta_bar) << "\n";
  os << "eos.gamma=" << fmt(eos.gamma) << "\n";
  os << "eos.kappa_bar=" << fmt(eos.kappa_bar) << "\n";
  os << "eos.mu_bar=" << fmt(eos.mu_bar) << "\n";
  os << "eos.rho_ref=" << fmt(eos.rho_ref) << "\n";
  os << "eos.theta_ref=" << fmt(eos.theta_ref) << "\n";
  os << "eos.xi=" << fmt(eos.xi) << "\n";
  os << "fluid.cfl=" << fmt(fluid.cfl) << "\n";
  os << "fluid.eps_vacuum=" << fmt(fluid.eps_vacuum) << "\n";
  os << "fluid.kernel_halfwidth=" << fluid.kernel_halfwidth << "\n";
  os << "fluid.markers=" << fluid.markers << "\n";
  os << "fluid.nx=" << fluid.nx << "\n";
  os << "geometry.bounds.alpha=" << fmt(geometry.alpha_bound) << "\n";
  os << "geometry.bounds.beta=" << fmt(geometry.beta_bound) << "\n";
  os << "geometry.box_halfwidth=" << fmt(geometry.box_halfwidth) << "\n";
  os << "geometry.cutoff.M1=" << fmt(geometry.M1) << "\n";
  os << "geometry.cutoff.M2=" << fmt(geometry.M2) << "\n";
  os << "geometry.cutoff.m1=" << fmt(geometry.m1) << "\n";
  os << "geometry.cutoff.m2=" << fmt(geometry.m2) << "\n";
  os << "geometry.radius=" << fmt(geometry.radius) << "\n";
  os << "run.T=" << fmt(run.T) << "\n";
  os << "run.dt=" << fmt(run.dt) << "\n";
  os << "run.recipe=" << run.recipe << "\n";
  os << "run.seed=" << run.seed << "\n";
  os << "shell.alpha1=" << fmt(shell.alpha1) << "\n";
  os << "shell.alpha2=" << fmt(shell.alpha2) << "\n";
  os << "shell.n_nodes=" << shell.n_nodes << "\n";
  os << "shell.substeps=" << shell.substeps << "\n";
  return os.str();
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, bool> seen;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (seen[key]) throw ConfigError(where + ": duplicate key '" + key + "'");
    seen[key] = true;

    if (key == "geometry.radius") cfg.geometry.radius = parse_double(val, where);
    else if (key == "geometry.cutoff.m2") cfg.geometry.m2 = parse_double(val, where);
    else if (key == "geometry.cutoff.m1") cfg.geometry.m1 = parse_double(val, where);
    else if (key == "geometry.cutoff.M1") cfg.geometry.M1 = parse_double(val, where);
    else if (key == "geometry.cutoff.M2") cfg.geometry.M2 = parse_double(val, where);
    else if (key == "geometry.bounds.alpha") cfg.geometry.alpha_bound = parse_double(val, where);
    else if (key == "geometry.bounds.beta") cfg.geometry.beta_bound = parse_double(val, where);
    else if (key == "geometry.box_halfwidth") cfg.geometry.box_halfwidth = parse_double(val, where);
    else if (key == "eos.gamma") cfg.eos.gamma = parse_double(val, where);
    else if (key == "eos.a") cfg.eos.a = parse_double(val, where);
    else if (key == "eos.beta") cfg.eos.beta = parse_double(val, where);
    else if (key == "eos.delta") cfg.eos.delta = parse_double(val, where);
    else if (key == "eos.mu_bar") cfg.eos.mu_bar = parse_double(val, where);
    else if (key == "eos.eta_bar") cfg.eos.eta_bar = parse_double(val, where);
    else if (key == "eos.kappa_bar") cfg.eos.kappa_bar = parse_double(val, where);
    else if (key == "eos.xi") cfg.eos.xi = parse_double(val, where);
    else if (key == "eos.rho_ref") cfg.eos.rho_ref = parse_double(val, where);
    else if (key == "eos.theta_ref") cfg.eos.theta_ref = parse_double(val, where);
    else if (key == "shell.n_nodes") cfg.shell.n_nodes = static_cast<std::size_t>(parse_u64(val, where));
    else if (key == "shell.alpha1") cfg.shell.alpha1 = parse_double(val, where);
    else if (key == "shell.alpha2") cfg.shell.alpha2 = parse_double(val, where);
    else if (key == "shell.substeps") cfg.shell.substeps = parse_int(val, where);
    else if (key == "fluid.nx") cfg.fluid.nx = parse_int(val, where);
    else if (key == "fluid.cfl") cfg.fluid.cfl = parse_double(val, where);
    else if (key == "fluid.eps_vacuum") cfg.fluid.eps_vacuum = parse_double(val, where);
    else if (key == "fluid.kernel_halfwidth") cfg.fluid.kernel_halfwidth = parse_int(val, where);
    else if (key == "fluid.markers") cfg.fluid.markers = static_cast<std::size_t>(parse_u64(val, where));
    else if (key == "run.T") cfg.run.T = parse_double(val, where);
    else if (key == "run.dt") cfg.run.dt = parse_double(val, where);
    else if (key == "run.recipe") cfg.run.recipe = val;
    else if (key == "run.seed") cfg.run.seed = parse_u64(val, where);
    else throw ConfigError(where + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string default_config_text() {
  return R"(# mhdshell default run configuration
geometry.radius = 1.0
geometry.cutoff.m2 = -0.35
geometry.cutoff.m1 = -0.05
geometry.cutoff.M1 = 0.05
geometry.cutoff.M2 = 0.35
geometry.bounds.alpha = -0.45
geometry.bounds.beta = 0.45
geometry.box_halfwidth = 2.0

eos.gamma = 2.0
eos.a = 1.0
eos.beta = 4.0
eos.delta = 0.01
eos.mu_bar = 1.0
eos.eta_bar = 1.0
eos.kappa_bar = 1.0
eos.xi = 0.1
eos.rho_ref = 1.0
eos.theta_ref = 1.0

shell.n_nodes = 256
shell.alpha1 = 1.0
shell.alpha2 = 1.0
shell.substeps = 4

fluid.nx = 128
fluid.cfl = 0.4
fluid.eps_vacuum = 1e-8
fluid.kernel_halfwidth = 2
fluid.markers = 256

run.T = 0.05
run.dt = 2.5e-3
run.recipe = density-bump
run.seed = 12345
)";
}

}  // namespace mhdshell::io
