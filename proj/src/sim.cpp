#include "magmin/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "magmin/ovf.hpp"

namespace magmin {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kTraceHeader =
    "step,time,exchange,anisotropy,magnetostatic,r_squared,total,"
    "modified_total,normalized_total,max_norm_deviation,step_wall_seconds";

}  // namespace

Scheme scheme_from_string(const std::string& name) {
  if (name == "sav1") return Scheme::sav1;
  if (name == "sav2") return Scheme::sav2;
  if (name == "fep") return Scheme::fep;
  if (name == "bep") return Scheme::bep;
  if (name == "llg_midpoint") return Scheme::llg_midpoint;
  if (name == "llg_backward_euler") return Scheme::llg_backward_euler;
  if (name == "llg_forward_euler") return Scheme::llg_forward_euler;
  throw ConfigError("unknown scheme: " + name);
}

std::string scheme_to_string(Scheme s) {
  switch (s) {
    case Scheme::sav1: return "sav1";
    case Scheme::sav2: return "sav2";
    case Scheme::fep: return "fep";
    case Scheme::bep: return "bep";
    case Scheme::llg_midpoint: return "llg_midpoint";
    case Scheme::llg_backward_euler: return "llg_backward_euler";
    case Scheme::llg_forward_euler: return "llg_forward_euler";
  }
  return "?";
}

Magnetization preset_initial(const std::string& name, const Grid& g) {
  enum class Preset { diamond, sct, dct };
  Preset preset;
  if (name == "diamond") preset = Preset::diamond;
  else if (name == "single_cross_tie") preset = Preset::sct;
  else if (name == "double_cross_tie") preset = Preset::dct;
  else throw UnknownPreset("unknown initial-state preset: " + name);

  const double um = 1e-6;
  VectorField f(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::array<double, 3> c = g.cell_center(i, j, k);
        const double x = c[0], y = c[1];
        double vx = 0, vy = 0, vz = 0;
        switch (preset) {
          case Preset::diamond: {
            // Four rectangles with head-on walls; ties go to the
            // left/lower rectangle.
            const bool left = x <= 1.0 * um;
            const bool lower = y <= 0.5 * um;
            vx = (left == lower) ? -1.0 : 1.0;
            break;
          }
          case Preset::sct:
            vx = (y <= 0.5 * um) ? 1.0 : -1.0;
            break;
          case Preset::dct: {
            const bool up = (x <= 0.5 * um) ||
                            (x > 0.75 * um && x <= 1.0 * um) ||
                            (x > 1.25 * um && x <= 1.5 * um);
            vy = up ? 1.0 : -1.0;
            break;
          }
        }
        f.set(g.index(i, j, k), vx, vy, vz);
      }
  return Magnetization::assume_unit(std::move(f));
}

Magnetization initial_state(const SimulationConfig& cfg) {
  const std::string& spec = cfg.initial;
  auto args_of = [&](const std::string& prefix) -> std::optional<std::string> {
    const std::string open = prefix + "(";
    if (spec.size() > open.size() && spec.compare(0, open.size(), open) == 0 &&
        spec.back() == ')')
      return spec.substr(open.size(), spec.size() - open.size() - 1);
    return std::nullopt;
  };
  if (auto args = args_of("uniform")) {
    double x, y, z;
    char comma1, comma2;
    std::istringstream in(*args);
    if (!(in >> x >> comma1 >> y >> comma2 >> z) || comma1 != ',' ||
        comma2 != ',')
      throw ConfigError("uniform initial state needs uniform(x,y,z): " + spec);
    const double len = std::sqrt(x * x + y * y + z * z);
    if (len < 1e-12)
      throw ConfigError("uniform initial direction must be nonzero");
    VectorField f(cfg.grid);
    const std::size_t n = f.cells();
    for (std::size_t c = 0; c < n; ++c) f.set(c, x / len, y / len, z / len);
    return Magnetization::assume_unit(std::move(f));
  }
  if (auto args = args_of("file")) {
    VectorField f = read_ovf(*args);
    if (f.grid() != cfg.grid)
      throw ConfigError("initial-state file grid does not match run grid: " +
                        *args);
    return project_unit(f);
  }
  return preset_initial(spec, cfg.grid);
}

bool steady_state_reached(double max_step_delta, double dt, double threshold) {
  if (threshold <= 0.0) return false;
  return max_step_delta / dt < threshold;
}

namespace {

EnergyTraceRow make_row(long step, double time, const VectorField& m,
                        const VectorField& h_m, const MaterialParams& p,
                        std::optional<double> r, double wall) {
  EnergyBreakdown e = gibbs_energy(m, h_m, p);
  const double r_val = r ? *r : std::sqrt(std::max(0.0, e.magnetostatic));
  e.set_aux(r_val);
  EnergyTraceRow row;
  row.step = step;
  row.time = time;
  row.exchange = e.exchange;
  row.anisotropy = e.anisotropy;
  row.magnetostatic = e.magnetostatic;
  row.r_squared = r_val * r_val;
  row.total = e.total;
  row.modified_total = e.modified_total;
  row.normalized_total = e.total / m.grid().domain_volume();
  row.max_norm_deviation = max_norm_deviation(m);
  row.step_wall_seconds = wall;
  return row;
}

void write_outputs(const SimulationConfig& cfg, const RunResult& result,
                   const VectorField* initial) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.output_dir);
  const std::string base = cfg.output_dir + "/" + cfg.output_base;
  write_trace_csv(base + "_trace.csv", result.trace);
  write_ovf(base + "_final.ovf", result.m_final,
            scheme_to_string(result.scheme) + " final state");
  write_field_csv(base + "_final.csv", result.m_final);
  if (initial)
    write_ovf(base + "_initial.ovf", *initial,
              scheme_to_string(result.scheme) + " initial state");
}

}  // namespace

RunResult run(const SimulationConfig& cfg) {
  cfg.material.validate();
  const Grid& g = cfg.grid;
  const MaterialParams& p = cfg.material;
  const DemagKernel kernel(g);
  const bool is_sav =
      cfg.scheme == Scheme::sav1 || cfg.scheme == Scheme::sav2;
  const bool needs_operator = is_sav || cfg.scheme == Scheme::bep;
  std::optional<SpectralOperatorA> A;
  if (needs_operator) A.emplace(g, p, cfg.dt);

  Magnetization m = initial_state(cfg);
  VectorField initial_copy;
  if (!cfg.output_dir.empty() && cfg.write_initial_state)
    initial_copy = m.vec();

  const long nsteps =
      (cfg.T <= 0.0) ? 0 : std::llround(std::ceil(cfg.T / cfg.dt - 1e-9));

  RunResult result;
  result.scheme = cfg.scheme;
  const auto run_start = Clock::now();

  SavState sav;
  VectorField h;  // stray field of the current state for non-SAV schemes
  if (is_sav) {
    sav = make_sav_state(std::move(m), kernel);
  } else {
    h = kernel.apply(m.vec());
  }

  auto current_m = [&]() -> const VectorField& {
    return is_sav ? sav.m.vec() : m.vec();
  };
  auto current_h = [&]() -> const VectorField& {
    return is_sav ? sav.h_m : h;
  };
  auto current_r = [&]() -> std::optional<double> {
    return is_sav ? std::optional<double>(sav.r) : std::nullopt;
  };

  result.trace.push_back(
      make_row(0, 0.0, current_m(), current_h(), p, current_r(), 0.0));

  for (long n = 1; n <= nsteps; ++n) {
    const auto step_start = Clock::now();
    double delta = 0.0;
    switch (cfg.scheme) {
      case Scheme::sav1:
      case Scheme::sav2: {
        SavState next = (cfg.scheme == Scheme::sav1)
                            ? sav1_step(sav, *A, kernel, p, cfg.dt)
                            : sav2_step(sav, *A, kernel, p, cfg.dt);
        delta = max_cell_delta(next.m.vec(), sav.m.vec());
        sav = std::move(next);
        break;
      }
      default: {
        Magnetization next = [&] {
          switch (cfg.scheme) {
            case Scheme::fep:
              return fep_step(m, h, p, cfg.dt);
            case Scheme::bep:
              return bep_step(m, *A, kernel, h, p, cfg.dt, cfg.iteration);
            case Scheme::llg_midpoint:
              return llg_midpoint_step(m, kernel, h, p, cfg.dt, cfg.iteration);
            case Scheme::llg_backward_euler:
              return llg_backward_euler_step(m, kernel, h, p, cfg.dt,
                                             cfg.iteration);
            default:
              return llg_forward_euler_step(m, h, p, cfg.dt);
          }
        }();
        delta = max_cell_delta(next.vec(), m.vec());
        m = std::move(next);
        h = kernel.apply(m.vec());
        break;
      }
    }
    const double wall = seconds_since(step_start);
    const bool steady = steady_state_reached(delta, cfg.dt, cfg.steady_threshold);
    const bool last = steady || n == nsteps;
    if (last || n % cfg.trace_stride == 0)
      result.trace.push_back(make_row(n, n * cfg.dt, current_m(), current_h(),
                                      p, current_r(), wall));
    if (steady) {
      result.steady_stop = true;
      result.steps_taken = n;
      break;
    }
    result.steps_taken = n;
  }

  result.wall_seconds = seconds_since(run_start);
  result.m_final = current_m();
  result.r_final = is_sav ? sav.r
                          : std::sqrt(std::max(
                                0.0, magnetostatic_energy(current_h(),
                                                          current_m())));
  if (!cfg.output_dir.empty())
    write_outputs(cfg, result,
                  cfg.write_initial_state ? &initial_copy : nullptr);
  return result;
}

void write_trace_csv(const std::string& path,
                     const std::vector<EnergyTraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kTraceHeader << "\n";
  for (const EnergyTraceRow& r : trace) {
    out << r.step << "," << fmt(r.time) << "," << fmt(r.exchange) << ","
        << fmt(r.anisotropy) << "," << fmt(r.magnetostatic) << ","
        << fmt(r.r_squared) << "," << fmt(r.total) << ","
        << fmt(r.modified_total) << "," << fmt(r.normalized_total) << ","
        << fmt(r.max_norm_deviation) << "," << fmt(r.step_wall_seconds)
        << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<EnergyTraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw IoError(path + ": unexpected trace header");
  std::vector<EnergyTraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    double vals[11];
    for (int c = 0; c < 11; ++c) {
      if (!std::getline(ss, tok, ','))
        throw IoError(path + ": short trace row: " + line);
      vals[c] = std::stod(tok);
    }
    EnergyTraceRow r;
    r.step = static_cast<long>(vals[0]);
    r.time = vals[1];
    r.exchange = vals[2];
    r.anisotropy = vals[3];
    r.magnetostatic = vals[4];
    r.r_squared = vals[5];
    r.total = vals[6];
    r.modified_total = vals[7];
    r.normalized_total = vals[8];
    r.max_norm_deviation = vals[9];
    r.step_wall_seconds = vals[10];
    rows.push_back(r);
  }
  return rows;
}

void write_field_csv(const std::string& path, const VectorField& v) {
  const Grid& g = v.grid();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "x,y,z,mx,my,mz\n";
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::array<double, 3> c = g.cell_center(i, j, k);
        const std::size_t idx = g.index(i, j, k);
        out << fmt(c[0]) << "," << fmt(c[1]) << "," << fmt(c[2]) << ","
            << fmt(v[0][idx]) << "," << fmt(v[1][idx]) << ","
            << fmt(v[2][idx]) << "\n";
      }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace magmin
