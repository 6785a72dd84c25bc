#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "magmin/config.hpp"
#include "magmin/sim.hpp"

namespace {

using namespace magmin;

SimulationConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
  ConfigMap map = parse_config_file(path);
  apply_overrides(map, overrides);
  return config_from_map(map);
}

void print_summary(const SimulationConfig& cfg, const RunResult& res) {
  const EnergyTraceRow& last = res.trace.back();
  std::printf("scheme              %s\n", scheme_to_string(cfg.scheme).c_str());
  std::printf("steps               %ld%s\n", res.steps_taken,
              res.steady_stop ? " (steady-state stop)" : "");
  std::printf("final time          %.6g s\n", last.time);
  std::printf("wall time           %.3f s\n", res.wall_seconds);
  std::printf("energy density      %.6g (total / volume)\n",
              last.normalized_total);
  std::printf("energy density x2   %.6g (relative to the stray-field scale)\n",
              2.0 * last.normalized_total);
  std::printf("exchange            %.9g\n", last.exchange);
  std::printf("anisotropy          %.9g\n", last.anisotropy);
  std::printf("magnetostatic       %.9g\n", last.magnetostatic);
  std::printf("r^2                 %.9g\n", last.r_squared);
  std::printf("max | |m| - 1 |     %.3g\n", last.max_norm_deviation);
  if (!cfg.output_dir.empty())
    std::printf("outputs             %s/%s_*\n", cfg.output_dir.c_str(),
                cfg.output_base.c_str());
}

struct BenchEntry {
  std::string scheme;
  double dt = 0.0;
  bool ok = false;
  std::string error;
  long steps = 0;
  double wall = 0.0;
  double density = 0.0;
  double rel_err = -1.0;
};

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& overrides) {
  const SimulationConfig cfg = load_config(config_path, overrides);
  const RunResult res = run(cfg);
  print_summary(cfg, res);
  return 0;
}

int cmd_bench(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::vector<std::string>& schemes,
              const std::vector<double>& dts, const std::string& ref_path,
              double tol, const std::string& out_csv, int jobs) {
  const SimulationConfig base = load_config(config_path, overrides);
  double ref_density = 0.0;
  bool have_ref = false;
  if (!ref_path.empty()) {
    const auto ref = read_trace_csv(ref_path);
    if (ref.empty()) throw IoError("reference trace is empty: " + ref_path);
    ref_density = ref.back().normalized_total;
    have_ref = true;
  }

  std::vector<BenchEntry> entries;
  for (const std::string& s : schemes)
    for (double dt : dts) {
      BenchEntry e;
      e.scheme = s;
      e.dt = dt;
      entries.push_back(e);
    }

  auto run_one = [&](BenchEntry e) {
    SimulationConfig cfg = base;
    cfg.output_dir.clear();
    try {
      cfg.scheme = scheme_from_string(e.scheme);
      cfg.dt = e.dt;
      const RunResult res = run(cfg);
      e.ok = true;
      e.steps = res.steps_taken;
      e.wall = res.wall_seconds;
      e.density = res.trace.back().normalized_total;
      if (have_ref && ref_density != 0.0)
        e.rel_err = std::abs(e.density - ref_density) / std::abs(ref_density);
    } catch (const std::exception& ex) {
      e.ok = false;
      e.error = ex.what();
    }
    return e;
  };

  if (jobs <= 1) {
    for (BenchEntry& e : entries) e = run_one(e);
  } else {
    std::vector<std::future<BenchEntry>> futures;
    futures.reserve(entries.size());
    std::size_t next = 0;
    std::size_t done = 0;
    std::vector<BenchEntry> results(entries.size());
    while (done < entries.size()) {
      while (futures.size() < static_cast<std::size_t>(jobs) &&
             next < entries.size()) {
        futures.push_back(std::async(std::launch::async, run_one,
                                     entries[next]));
        ++next;
      }
      BenchEntry got = futures.front().get();
      futures.erase(futures.begin());
      results[done++] = got;
    }
    // std::async completion order matches submission order here because we
    // always wait on the oldest future first.
    entries = std::move(results);
  }

  std::printf("%-22s %-10s %8s %10s %14s %10s %s\n", "scheme", "dt", "steps",
              "wall_s", "density", "rel_err", "verdict");
  std::ostringstream csv;
  csv << "scheme,dt,steps,wall_seconds,density,rel_err,ok,verdict\n";
  for (const BenchEntry& e : entries) {
    if (e.ok) {
      const bool measured = e.rel_err >= 0.0;
      const std::string verdict =
          measured ? (e.rel_err < tol ? "PASS" : "FAIL") : "-";
      char err_txt[32] = "-";
      if (measured) std::snprintf(err_txt, sizeof err_txt, "%.3g", e.rel_err);
      std::printf("%-22s %-10.3g %8ld %10.2f %14.6g %10s %s\n",
                  e.scheme.c_str(), e.dt, e.steps, e.wall, e.density, err_txt,
                  verdict.c_str());
      csv << e.scheme << "," << e.dt << "," << e.steps << "," << e.wall << ","
          << e.density << ",";
      if (measured) csv << e.rel_err;
      csv << ",1," << verdict << "\n";
    } else {
      std::printf("%-22s %-10.3g %8s %10s %14s %10s FAILED (%s)\n",
                  e.scheme.c_str(), e.dt, "-", "-", "-", "-", e.error.c_str());
      csv << e.scheme << "," << e.dt << ",,,,,0,FAILED\n";
    }
  }
  if (!out_csv.empty()) {
    const auto parent = std::filesystem::path(out_csv).parent_path();
    if (!parent.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(parent, ec);
    }
    std::ofstream out(out_csv);
    if (!out) throw IoError("cannot open for writing: " + out_csv);
    out << csv.str();
  }
  return 0;
}

int cmd_compare(const std::string& ref_path, const std::string& test_path,
                double tol) {
  const auto ref = read_trace_csv(ref_path);
  const auto test = read_trace_csv(test_path);
  if (ref.empty() || test.empty())
    throw IoError("compare needs nonempty traces");
  const double a = ref.back().normalized_total;
  const double b = test.back().normalized_total;
  const double rel = std::abs(b - a) / std::abs(a);
  std::printf("reference density   %.9g\n", a);
  std::printf("test density        %.9g\n", b);
  std::printf("relative error      %.3e (tolerance %.3e)\n", rel, tol);
  const bool pass = rel < tol;
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

std::vector<double> parse_dt_list(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const std::string& chunk : raw) {
    std::stringstream ss(chunk);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& chunk : raw) {
    std::stringstream ss(chunk);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"micromagnetic ground-state relaxation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  CLI::App* sub_run = app.add_subcommand("run", "run one configuration");
  sub_run->add_option("--config", config_path, "configuration file")
      ->required();
  sub_run->add_option("--set", overrides, "key=value override (repeatable)");

  std::vector<std::string> scheme_args;
  std::vector<std::string> dt_args;
  std::string ref_path;
  std::string out_csv;
  double tol = 0.01;
  int jobs = 1;
  CLI::App* sub_bench =
      app.add_subcommand("bench", "run a scheme/step-size matrix");
  sub_bench->add_option("--config", config_path, "base configuration file")
      ->required();
  sub_bench->add_option("--set", overrides, "key=value override (repeatable)");
  sub_bench->add_option("--schemes", scheme_args, "comma-separated schemes")
      ->required();
  sub_bench->add_option("--dts", dt_args, "comma-separated step sizes")
      ->required();
  sub_bench->add_option("--ref", ref_path, "reference trace CSV");
  sub_bench->add_option("--tol", tol, "relative energy tolerance");
  sub_bench->add_option("--out", out_csv, "write the report as CSV");
  sub_bench->add_option("--jobs", jobs, "concurrent runs (timing runs use 1)");

  std::string cmp_ref, cmp_test;
  double cmp_tol = 0.01;
  CLI::App* sub_cmp =
      app.add_subcommand("compare", "compare two trace files");
  sub_cmp->add_option("--ref", cmp_ref, "reference trace CSV")->required();
  sub_cmp->add_option("--test", cmp_test, "test trace CSV")->required();
  sub_cmp->add_option("--tol", cmp_tol, "relative tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sub_run->parsed()) return cmd_run(config_path, overrides);
    if (sub_bench->parsed())
      return cmd_bench(config_path, overrides, parse_name_list(scheme_args),
                       parse_dt_list(dt_args), ref_path, tol, out_csv, jobs);
    if (sub_cmp->parsed()) return cmd_compare(cmp_ref, cmp_test, cmp_tol);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}
