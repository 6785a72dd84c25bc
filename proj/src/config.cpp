#include "magmin/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace magmin {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean value for " + key + ": '" + v + "'");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "grid.nx", "grid.ny", "grid.nz", "grid.lx", "grid.ly", "grid.lz",
      "grid.origin_x", "grid.origin_y", "grid.origin_z",
      "material.Cex", "material.Ku", "material.Ms", "material.mu0",
      "material.alpha", "material.gamma",
      "material.he_x", "material.he_y", "material.he_z",
      "run.scheme", "run.dt", "run.T", "run.initial", "run.trace_stride",
      "run.steady_threshold", "run.tolerance", "run.max_iters",
      "output.dir", "output.base", "output.write_initial",
  };
  return keys;
}

}  // namespace

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  ConfigMap map;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": expected key = value";
      throw ConfigError(msg.str());
    }
    map[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return map;
}

void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) {
    const std::size_t eq = o.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must look like key=value: '" + o + "'");
    map[trim(o.substr(0, eq))] = trim(o.substr(eq + 1));
  }
}

SimulationConfig config_from_map(const ConfigMap& map) {
  for (const auto& [key, value] : map) {
    (void)value;
    if (!known_keys().count(key)) throw ConfigError("unknown config key: " + key);
  }
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
  };

  SimulationConfig cfg;
  int nx = 100, ny = 50, nz = 1;
  double lx = 2e-6, ly = 1e-6, lz = 2e-8;
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  if (const auto* v = get("grid.nx")) nx = to_int("grid.nx", *v);
  if (const auto* v = get("grid.ny")) ny = to_int("grid.ny", *v);
  if (const auto* v = get("grid.nz")) nz = to_int("grid.nz", *v);
  if (const auto* v = get("grid.lx")) lx = to_double("grid.lx", *v);
  if (const auto* v = get("grid.ly")) ly = to_double("grid.ly", *v);
  if (const auto* v = get("grid.lz")) lz = to_double("grid.lz", *v);
  if (const auto* v = get("grid.origin_x")) origin[0] = to_double("grid.origin_x", *v);
  if (const auto* v = get("grid.origin_y")) origin[1] = to_double("grid.origin_y", *v);
  if (const auto* v = get("grid.origin_z")) origin[2] = to_double("grid.origin_z", *v);
  if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("grid counts must be positive");
  if (lx <= 0 || ly <= 0 || lz <= 0) throw ConfigError("grid extents must be positive");
  cfg.grid = Grid(nx, ny, nz, lx / nx, ly / ny, lz / nz, origin);

  if (const auto* v = get("material.Cex")) cfg.material.Cex = to_double("material.Cex", *v);
  if (const auto* v = get("material.Ku")) cfg.material.Ku = to_double("material.Ku", *v);
  if (const auto* v = get("material.Ms")) cfg.material.Ms = to_double("material.Ms", *v);
  if (const auto* v = get("material.mu0")) cfg.material.mu0 = to_double("material.mu0", *v);
  if (const auto* v = get("material.alpha")) cfg.material.alpha = to_double("material.alpha", *v);
  if (const auto* v = get("material.gamma")) cfg.material.gamma = to_double("material.gamma", *v);
  if (const auto* v = get("material.he_x")) cfg.material.h_e[0] = to_double("material.he_x", *v);
  if (const auto* v = get("material.he_y")) cfg.material.h_e[1] = to_double("material.he_y", *v);
  if (const auto* v = get("material.he_z")) cfg.material.h_e[2] = to_double("material.he_z", *v);
  cfg.material.validate();

  if (const auto* v = get("run.scheme")) cfg.scheme = scheme_from_string(*v);
  if (const auto* v = get("run.dt")) cfg.dt = to_double("run.dt", *v);
  if (const auto* v = get("run.T")) cfg.T = to_double("run.T", *v);
  if (const auto* v = get("run.initial")) cfg.initial = *v;
  if (const auto* v = get("run.trace_stride")) cfg.trace_stride = to_int("run.trace_stride", *v);
  if (const auto* v = get("run.steady_threshold"))
    cfg.steady_threshold = to_double("run.steady_threshold", *v);
  if (const auto* v = get("run.tolerance")) cfg.iteration.tolerance = to_double("run.tolerance", *v);
  if (const auto* v = get("run.max_iters")) cfg.iteration.max_iters = to_int("run.max_iters", *v);
  if (cfg.dt <= 0) throw ConfigError("run.dt must be positive");
  if (cfg.T < 0) throw ConfigError("run.T must be nonnegative");
  if (cfg.trace_stride < 1) throw ConfigError("run.trace_stride must be at least 1");

  if (const auto* v = get("output.dir")) cfg.output_dir = *v;
  if (const auto* v = get("output.base")) cfg.output_base = *v;
  if (const auto* v = get("output.write_initial"))
    cfg.write_initial_state = to_bool("output.write_initial", *v);
  return cfg;
}

}  // namespace magmin
