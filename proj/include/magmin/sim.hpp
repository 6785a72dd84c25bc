#pragma once

#include <string>
#include <vector>

#include "magmin/baselines.hpp"
#include "magmin/demag.hpp"
#include "magmin/energy.hpp"
#include "magmin/field.hpp"
#include "magmin/material.hpp"
#include "magmin/sav.hpp"
#include "magmin/spectral.hpp"

namespace magmin {

enum class Scheme {
  sav1,
  sav2,
  fep,
  bep,
  llg_midpoint,
  llg_backward_euler,
  llg_forward_euler,
};

[[nodiscard]] Scheme scheme_from_string(const std::string& name);
[[nodiscard]] std::string scheme_to_string(Scheme s);

/// Full description of one relaxation run.
struct SimulationConfig {
  Grid grid{100, 50, 1, 2e-8, 2e-8, 2e-8};
  MaterialParams material;
  Scheme scheme = Scheme::sav1;
  double dt = 1e-12;       ///< physical step, seconds
  double T = 4e-10;        ///< final time, seconds; 0 gives the initial state
  std::string initial = "diamond";  ///< preset name, uniform(x,y,z), file(path)
  int trace_stride = 100;  ///< steps between trace rows
  double steady_threshold = 10.0;  ///< max|dm|/dt stop level, 1/s; <=0 disables
  IterativeSolveConfig iteration;
  std::string output_dir;   ///< empty disables file output
  std::string output_base = "run";
  bool write_initial_state = true;
};

/// One energy-trace sample. Energies carry volume units (m^3);
/// normalized_total is total divided by the domain volume.
struct EnergyTraceRow {
  long step = 0;
  double time = 0.0;
  double exchange = 0.0;
  double anisotropy = 0.0;
  double magnetostatic = 0.0;
  double r_squared = 0.0;
  double total = 0.0;
  double modified_total = 0.0;
  double normalized_total = 0.0;
  double max_norm_deviation = 0.0;
  double step_wall_seconds = 0.0;
};

struct RunResult {
  VectorField m_final;
  std::vector<EnergyTraceRow> trace;
  double r_final = 0.0;      ///< auxiliary variable (sqrt(E_m) for non-SAV)
  bool steady_stop = false;  ///< true when the early-stop criterion fired
  long steps_taken = 0;
  double wall_seconds = 0.0;
  Scheme scheme = Scheme::sav1;
};

/// The three named film textures on [0, 2um] x [0, 1um]. Region boundaries
/// resolve ties toward the left/lower region. Throws UnknownPreset.
[[nodiscard]] Magnetization preset_initial(const std::string& name,
                                           const Grid& g);

/// Resolves the full initial grammar: presets, uniform(x,y,z), file(path).
[[nodiscard]] Magnetization initial_state(const SimulationConfig& cfg);

/// Early-stop predicate: max-cell |m^{n+1} - m^n| / dt < threshold.
/// Always false for threshold <= 0.
[[nodiscard]] bool steady_state_reached(double max_step_delta, double dt,
                                        double threshold);

/// Advances the configured scheme to T (or the steady stop), sampling the
/// energy trace every trace_stride steps plus the final step. Writes the
/// trace and state files when output_dir is set.
[[nodiscard]] RunResult run(const SimulationConfig& cfg);

void write_trace_csv(const std::string& path,
                     const std::vector<EnergyTraceRow>& trace);
[[nodiscard]] std::vector<EnergyTraceRow> read_trace_csv(
    const std::string& path);

/// Cell-center positions and components, one row per cell, x fastest.
void write_field_csv(const std::string& path, const VectorField& v);

}  // namespace magmin
