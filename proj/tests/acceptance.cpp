// Acceptance battery for the film relaxation solver.
//
// Every numbered criterion prints exactly one [PASS]/[FAIL] line with its
// pinned tolerance and the measured value; the process exit status is the
// number of failed criteria. [run] lines report progress of the long
// relaxations, [soft-*] lines are advisory bands that do not affect the
// status. Everything runs sequentially so the wall-clock comparison in
// criterion 6 is meaningful on a single core.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "magmin/config.hpp"
#include "magmin/demag.hpp"
#include "magmin/energy.hpp"
#include "magmin/operators.hpp"
#include "magmin/sav.hpp"
#include "magmin/sim.hpp"
#include "magmin/spectral.hpp"

using namespace magmin;

namespace {

int g_failures = 0;
std::vector<std::string> g_scoreboard;  // printed in criterion order at the end

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void verdict(int id, bool pass, const char* label, const std::string& detail) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] criterion %d: ", pass ? "PASS" : "FAIL",
                id);
  g_scoreboard.push_back(head + std::string(label) + " (" + detail + ")");
  std::printf("[done] criterion %d %s\n", id, pass ? "passed" : "FAILED");
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void soft(bool pass, const std::string& text) {
  g_scoreboard.push_back(std::string(pass ? "[soft-pass] " : "[soft-warn] ") +
                         text);
}

void note(const std::string& text) {
  std::printf("[info] %s\n", text.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Shared run helpers. The defaults of SimulationConfig are the benchmark
// film: 2um x 1um x 20nm, 100 x 50 x 1 cells, permalloy-like material.

SimulationConfig film(Scheme s, double dt, double T, const std::string& initial,
                      int stride) {
  SimulationConfig cfg;
  cfg.scheme = s;
  cfg.dt = dt;
  cfg.T = T;
  cfg.initial = initial;
  cfg.trace_stride = stride;
  cfg.steady_threshold = 0.0;  // fixed horizons; no early stop
  return cfg;
}

double doubled_density(const RunResult& r) {
  return 2.0 * r.trace.back().normalized_total;
}

RunResult run_logged(const SimulationConfig& cfg, const std::string& tag) {
  std::printf("[run] %-34s scheme=%-18s dt=%-8s T=%s\n", tag.c_str(),
              scheme_to_string(cfg.scheme).c_str(), fmt(cfg.dt).c_str(),
              fmt(cfg.T).c_str());
  std::fflush(stdout);
  RunResult r = run(cfg);
  std::printf("[run] %-34s done: %ld steps, %.1f s, density x2 = %s\n",
              tag.c_str(), r.steps_taken, r.wall_seconds,
              fmt(doubled_density(r)).c_str());
  std::fflush(stdout);
  return r;
}

double rel_err(double value, double reference) {
  return std::fabs(value - reference) / std::fabs(reference);
}

// ---------------------------------------------------------------------------
// Scenario files: the shipped configs must describe the benchmark runs.

void check_scenarios(const std::string& dir) {
  bool ok = true;
  std::string why;
  try {
    auto load = [&](const char* name) {
      ConfigMap map = parse_config_file(dir + "/" + name);
      return config_from_map(map);
    };
    const SimulationConfig dia = load("diamond.cfg");
    const SimulationConfig sct = load("sct.cfg");
    const SimulationConfig dct = load("dct.cfg");
    const SimulationConfig ref = load("reference_llg.cfg");
    const SimulationConfig want;  // benchmark defaults
    for (const SimulationConfig* c : {&dia, &sct, &dct, &ref}) {
      if (c->grid != want.grid) ok = false;
      if (c->material.Cex != 1.3e-11 || c->material.Ku != 5e2 ||
          c->material.Ms != 8e5 || c->material.alpha != 0.1 ||
          c->material.gamma != 2.211e5)
        ok = false;
    }
    if (dia.scheme != Scheme::sav1 || dia.dt != 1e-12 || dia.T != 4e-10 ||
        dia.initial != "diamond")
      ok = false;
    if (sct.initial != "single_cross_tie" || sct.T != 6e-10) ok = false;
    if (dct.initial != "double_cross_tie" || dct.T != 4e-10) ok = false;
    if (ref.scheme != Scheme::llg_midpoint || ref.dt != 1e-14 || ref.T != 2e-9)
      ok = false;
    if (!ok) why = "a shipped config deviates from the benchmark settings";
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  g_scoreboard.push_back(std::string(ok ? "[PASS]" : "[FAIL]") +
                         " scenario configs: " +
                         (ok ? "shipped files describe the benchmark runs"
                             : why));
  if (!ok) ++g_failures;
}

// ---------------------------------------------------------------------------
// Criterion 1: discrete operators against dense references.

VectorField random_unit_field(const Grid& g, unsigned seed) {
  VectorField f(g);
  // Small deterministic LCG keeps this file free of <random> seeding noise.
  unsigned long s = seed;
  auto next = [&]() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>((s >> 11) & 0xfffffffful) / 4294967295.0 * 2.0 -
           1.0;
  };
  for (std::size_t c = 0; c < f.cells(); ++c) {
    double x = next(), y = next(), z = next();
    const double n = std::sqrt(x * x + y * y + z * z) + 1e-9;
    f.set(c, x / n, y / n, z / n);
  }
  return f;
}

double fft_vs_direct(const Grid& g, unsigned seed) {
  VectorField m = random_unit_field(g, seed);
  VectorField a = apply_demag(build_kernel(g), m);
  VectorField b = apply_demag_direct(m);
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < m.cells(); ++i)
      worst = std::max(worst, std::fabs(a[c][i] - b[c][i]));
  return worst;
}

double spectral_vs_dense(const Grid& g, const MaterialParams& p, double dt) {
  SpectralOperatorA A(g, p, dt);
  VectorField rhs = random_unit_field(g, 29);
  VectorField x = A.solve(rhs);
  const auto n = static_cast<Eigen::Index>(g.cell_count());
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double shift = (c == 0) ? 0.0 : p.Can() * A.dt_eff();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    ScalarField e(g);
    for (Eigen::Index col = 0; col < n; ++col) {
      e.values.assign(g.cell_count(), 0.0);
      e[static_cast<std::size_t>(col)] = 1.0;
      ScalarField le = laplacian(e);
      for (Eigen::Index row = 0; row < n; ++row)
        M(row, col) = -p.Ce() * A.dt_eff() * le[static_cast<std::size_t>(row)];
      M(col, col) += 1.0 + shift;
    }
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i)
      b(i) = rhs[c][static_cast<std::size_t>(i)];
    Eigen::VectorXd want = M.partialPivLu().solve(b);
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = x[c][static_cast<std::size_t>(i)] - want(i);
      num += d * d;
      den += want(i) * want(i);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

double field_vs_difference_quotient(const Grid& g, const MaterialParams& p) {
  DemagKernel k(g);
  VectorField m = random_unit_field(g, 71);
  VectorField h = effective_field(m, k.apply(m), p);
  const double vc = g.cell_volume();
  double href = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < m.cells(); ++i)
      href = std::max(href, std::fabs(h[c][i]));
  auto energy = [&](const VectorField& f) {
    return gibbs_energy(f, k.apply(f), p).total;
  };
  const double eps = 1e-6;
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < m.cells(); ++i) {
      const double base = m[c][i];
      m[c][i] = base + eps;
      const double ep = energy(m);
      m[c][i] = base - eps;
      const double em = energy(m);
      m[c][i] = base;
      const double fd = -(ep - em) / (2.0 * eps * vc);
      worst = std::max(worst, std::fabs(fd - h[c][i]));
    }
  return worst / href;
}

void criterion_1() {
  const double conv = std::max(fft_vs_direct(Grid(8, 8, 4, 5e-9, 5e-9, 5e-9), 3),
                               fft_vs_direct(Grid(6, 4, 2, 4e-9, 5e-9, 3e-9), 4));
  MaterialParams p;
  const double solve = spectral_vs_dense(Grid(6, 4, 2, 2e-8, 2.5e-8, 1e-8), p, 1e-12);
  const double grad = field_vs_difference_quotient(Grid(6, 4, 1, 2e-8, 2e-8, 2e-8), p);
  const bool pass = conv < 1e-10 && solve < 1e-10 && grad < 1e-5;
  verdict(1, pass, "discrete operators match dense references",
          "stray field fft vs direct " + fmt(conv) +
              " < 1e-10; implicit solve vs dense lu " + fmt(solve) +
              " < 1e-10; effective field vs difference quotient " + fmt(grad) +
              " < 1e-5");
}

// ---------------------------------------------------------------------------
// Criterion 2 and 3 share the instrumented relaxation loops.

struct DissipationScan {
  double worst_intermediate = -1.0;  // max relative modified-energy increase
  double worst_post = -1.0;          // same for the projected chain (advisory)
  double worst_norm = 0.0;           // max | |m| - 1 | after any step
};

DissipationScan scan_sav(bool variant2, double dt, double T) {
  SimulationConfig cfg = film(variant2 ? Scheme::sav2 : Scheme::sav1, dt, T,
                              "diamond", 1);
  const DemagKernel kernel(cfg.grid);
  const SpectralOperatorA A(cfg.grid, cfg.material, dt);
  SavState s = make_sav_state(initial_state(cfg), kernel);
  const long nsteps = std::llround(T / dt);
  DissipationScan out;
  double g_prev = modified_energy(s.m.vec(), s.r, cfg.material);
  for (long n = 0; n < nsteps; ++n) {
    SavStepDiagnostics diag;
    s = variant2 ? sav2_step(s, A, kernel, cfg.material, dt, &diag)
                 : sav1_step(s, A, kernel, cfg.material, dt, &diag);
    out.worst_intermediate =
        std::max(out.worst_intermediate,
                 (diag.modified_star - diag.modified_before) /
                     std::fabs(diag.modified_before));
    const double g_now = modified_energy(s.m.vec(), s.r, cfg.material);
    out.worst_post =
        std::max(out.worst_post, (g_now - g_prev) / std::fabs(g_prev));
    g_prev = g_now;
    out.worst_norm = std::max(out.worst_norm, max_norm_deviation(s.m.vec()));
  }
  return out;
}

// ---------------------------------------------------------------------------

int run_all(const std::string& scenario_dir) {
  check_scenarios(scenario_dir);
  criterion_1();

  // Criterion 2: the intermediate magnetization/auxiliary pair may never
  // raise the modified energy, at either benchmark step size.
  note("instrumented relaxations for the dissipation scan");
  const DissipationScan s1c = scan_sav(false, 1e-12, 4e-10);
  const DissipationScan s1f = scan_sav(false, 1e-13, 4e-10);
  const DissipationScan s2c = scan_sav(true, 1e-12, 4e-10);
  const DissipationScan s2f = scan_sav(true, 1e-13, 4e-10);
  const double worst_diss =
      std::max(std::max(s1c.worst_intermediate, s1f.worst_intermediate),
               std::max(s2c.worst_intermediate, s2f.worst_intermediate));
  verdict(2, worst_diss <= 1e-12,
          "modified energy dissipates at the intermediate state",
          "max relative increase over every step, both variants, dt 1e-12 and "
          "1e-13: " + fmt(worst_diss) + " <= 1e-12");
  const double worst_post =
      std::max(std::max(s1c.worst_post, s1f.worst_post),
               std::max(s2c.worst_post, s2f.worst_post));
  soft(worst_post <= 1e-10,
       "projected-chain modified energy max relative increase " +
           fmt(worst_post) + " (advisory band 1e-10)");

  // Reference relaxation and the accuracy ladder (criteria 3, 4, 8 inputs).
  const RunResult ref_dia = run_logged(
      film(Scheme::llg_midpoint, 1e-14, 2e-9, "diamond", 1000), "reference diamond");
  const double e_ref = ref_dia.trace.back().normalized_total;

  struct SavRun {
    double dt;
    RunResult r1, r2;
  };
  std::vector<SavRun> ladder;
  for (double dt : {1e-12, 1e-13, 1e-14}) {
    SavRun row;
    row.dt = dt;
    row.r1 = run_logged(film(Scheme::sav1, dt, 2e-9, "diamond", 1),
                        "diamond sav1 dt=" + fmt(dt));
    row.r2 = run_logged(film(Scheme::sav2, dt, 2e-9, "diamond", 1),
                        "diamond sav2 dt=" + fmt(dt));
    ladder.push_back(std::move(row));
  }
  const RunResult fep_run = run_logged(
      film(Scheme::fep, 5e-13, 4e-10, "diamond", 1), "diamond fep dt=5e-13");
  const RunResult bep_run = run_logged(
      film(Scheme::bep, 1e-12, 4e-11, "diamond", 1), "diamond bep dt=1e-12");

  // Criterion 3: per-cell unit length after every projected step, pulled
  // from the instrumented loops, the accuracy ladder, and the two projected
  // gradient baselines.
  {
    double worst = std::max(std::max(s1c.worst_norm, s1f.worst_norm),
                            std::max(s2c.worst_norm, s2f.worst_norm));
    for (const SavRun& row : ladder)
      for (const RunResult* r : {&row.r1, &row.r2})
        for (const EnergyTraceRow& t : r->trace)
          worst = std::max(worst, t.max_norm_deviation);
    for (const RunResult* r : {&fep_run, &bep_run})
      for (const EnergyTraceRow& t : r->trace)
        worst = std::max(worst, t.max_norm_deviation);
    verdict(3, worst < 1e-12, "unit norms preserved after every step",
            "max | |m| - 1 | over all auxiliary-variable and projected "
            "gradient steps " + fmt(worst) + " < 1e-12");
  }

  // Criterion 4: both variants land within 1% of the reference energy at
  // every benchmark step size.
  {
    double worst = 0.0;
    std::string per;
    for (const SavRun& row : ladder) {
      const double e1 = rel_err(row.r1.trace.back().normalized_total, e_ref);
      const double e2 = rel_err(row.r2.trace.back().normalized_total, e_ref);
      worst = std::max(worst, std::max(e1, e2));
      per += " dt=" + fmt(row.dt) + ": " + fmt(e1) + "/" + fmt(e2) + ";";
    }
    verdict(4, worst <= 0.01, "diamond energy matches the fine-step reference",
            "max relative error " + fmt(worst) + " <= 0.01 per dt (sav1/sav2):" + per);
    const double published = 0.004979;
    double worst_pub = rel_err(2.0 * e_ref, published);
    for (const SavRun& row : ladder) {
      worst_pub = std::max(worst_pub, rel_err(doubled_density(row.r1), published));
      worst_pub = std::max(worst_pub, rel_err(doubled_density(row.r2), published));
    }
    soft(worst_pub <= 0.05, "doubled densities within " + fmt(worst_pub) +
                                " of the tabulated 0.004979 (advisory band 5%)");
  }

  // Criterion 5: the cross-tie textures against their own references.
  const RunResult ref_sct =
      run_logged(film(Scheme::llg_midpoint, 1e-14, 2e-9, "single_cross_tie", 1000),
                 "reference single cross-tie");
  const RunResult ref_dct =
      run_logged(film(Scheme::llg_midpoint, 1e-14, 2e-9, "double_cross_tie", 1000),
                 "reference double cross-tie");
  {
    const double es = ref_sct.trace.back().normalized_total;
    const double ed = ref_dct.trace.back().normalized_total;
    const RunResult s1 = run_logged(
        film(Scheme::sav1, 1e-13, 6e-10, "single_cross_tie", 10), "sct sav1");
    const RunResult s2 = run_logged(
        film(Scheme::sav2, 1e-13, 6e-10, "single_cross_tie", 10), "sct sav2");
    const RunResult d1 = run_logged(
        film(Scheme::sav1, 1e-13, 4e-10, "double_cross_tie", 10), "dct sav1");
    const RunResult d2 = run_logged(
        film(Scheme::sav2, 1e-13, 4e-10, "double_cross_tie", 10), "dct sav2");
    const double sct_err =
        std::max(rel_err(s1.trace.back().normalized_total, es),
                 rel_err(s2.trace.back().normalized_total, es));
    const double dct_err =
        std::max(rel_err(d1.trace.back().normalized_total, ed),
                 rel_err(d2.trace.back().normalized_total, ed));
    verdict(5, sct_err <= 0.005 && dct_err <= 0.02,
            "cross-tie textures match their references",
            "single cross-tie max relative error " + fmt(sct_err) +
                " <= 0.005; double cross-tie " + fmt(dct_err) + " <= 0.02");
  }

  // Criterion 6: robustness at the large step where the explicit projected
  // scheme breaks down, and cost against the lagged implicit baseline.
  {
    const double big = 1.42e-12;
    const RunResult b1 = run_logged(film(Scheme::sav1, big, 4e-10, "diamond", 10),
                                    "diamond sav1 dt=1.42e-12");
    const RunResult b2 = run_logged(film(Scheme::sav2, big, 4e-10, "diamond", 10),
                                    "diamond sav2 dt=1.42e-12");
    const double sav_err =
        std::max(rel_err(b1.trace.back().normalized_total, e_ref),
                 rel_err(b2.trace.back().normalized_total, e_ref));

    bool fep_failed = false;
    std::string fep_note;
    try {
      const RunResult bf = run_logged(film(Scheme::fep, big, 4e-10, "diamond", 10),
                                      "diamond fep dt=1.42e-12");
      const double e = bf.trace.back().normalized_total;
      const double err = rel_err(e, e_ref);
      fep_failed = !std::isfinite(e) || err > 0.10;
      fep_note = "relative error " + fmt(err);
    } catch (const std::exception& ex) {
      fep_failed = true;
      fep_note = std::string("raised: ") + ex.what();
    }

    const RunResult t_sav = run_logged(
        film(Scheme::sav1, 1e-13, 4e-10, "diamond", 10), "timing sav1 dt=1e-13");
    const RunResult t_bep = run_logged(
        film(Scheme::bep, 1e-13, 4e-10, "diamond", 10), "timing bep dt=1e-13");
    const bool pass = sav_err <= 0.01 && fep_failed &&
                      t_bep.wall_seconds > t_sav.wall_seconds;
    verdict(6, pass, "large steps stay accurate where baselines break",
            "auxiliary-variable error at dt=1.42e-12 " + fmt(sav_err) +
                " <= 0.01; explicit projected scheme fails there (" + fep_note +
                "); lagged implicit wall " + fmt(t_bep.wall_seconds) +
                " s > " + fmt(t_sav.wall_seconds) + " s at dt=1e-13");
  }

  // Criterion 7: first-order self-convergence of both variants.
  {
    std::string detail;
    bool pass = true;
    for (Scheme s : {Scheme::sav1, Scheme::sav2}) {
      std::vector<VectorField> finals;
      for (double dt : {4e-13, 2e-13, 1e-13, 5e-14})
        finals.push_back(run(film(s, dt, 1e-11, "diamond", 1000)).m_final);
      const double d1 = max_cell_delta(finals[0], finals[1]);
      const double d2 = max_cell_delta(finals[1], finals[2]);
      const double d3 = max_cell_delta(finals[2], finals[3]);
      const double q1 = d1 / d2, q2 = d2 / d3;
      pass = pass && q1 > 1.6 && q1 < 2.4 && q2 > 1.6 && q2 < 2.4;
      detail += scheme_to_string(s) + " step-halving ratios " + fmt(q1) + ", " +
                fmt(q2) + "; ";
    }
    verdict(7, pass, "first-order self-convergence in the step size",
            detail + "band [1.6, 2.4]");
  }

  // Criterion 8: the auxiliary variable against the sampled stray-field
  // energy, from the stride-1 traces of the accuracy ladder.
  {
    double worst2 = 0.0;
    for (const SavRun& row : ladder)
      for (const EnergyTraceRow& t : row.r2.trace)
        worst2 = std::max(worst2, std::fabs(t.r_squared - t.magnetostatic) /
                                      t.magnetostatic);
    std::vector<double> gaps;
    for (const SavRun& row : ladder) {
      const EnergyTraceRow& last = row.r1.trace.back();
      gaps.push_back(std::fabs(last.r_squared - last.magnetostatic));
    }
    const double floor1 = 1e-12 * ladder[0].r1.trace.back().magnetostatic;
    const bool pass = worst2 <= 1e-12 && gaps[0] > floor1 &&
                      gaps[0] > gaps[1] && gaps[1] > gaps[2];
    verdict(8, pass, "auxiliary variable tracks the stray-field energy",
            "variant-two max relative gap " + fmt(worst2) +
                " <= 1e-12; variant-one final gaps " + fmt(gaps[0]) + " > " +
                fmt(gaps[1]) + " > " + fmt(gaps[2]) + " shrink with dt");
    const auto& fine = ladder[1].r1.trace;
    const double tail = fine.back().total;
    const double earlier = fine[fine.size() * 9 / 10].total;
    soft(rel_err(earlier, tail) < 1e-3,
         "late-time energy plateau drift " + fmt(rel_err(earlier, tail)) +
             " over the last tenth of the horizon (advisory band 1e-3)");
  }

  std::printf("\n");
  for (const std::string& line : g_scoreboard) std::printf("%s\n", line.c_str());
  std::printf("%d criterion failure%s\n", g_failures,
              g_failures == 1 ? "" : "s");
  return g_failures;
}

}  // namespace

int main(int argc, char** argv) {
  std::string scenario_dir = "scenarios";
  for (int i = 1; i < argc - 1; ++i)
    if (std::strcmp(argv[i], "--scenarios") == 0) scenario_dir = argv[i + 1];
  try {
    return run_all(scenario_dir);
  } catch (const std::exception& e) {
    for (const std::string& line : g_scoreboard)
      std::printf("%s\n", line.c_str());
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 99;
  }
}
