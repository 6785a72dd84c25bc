#pragma once

#include <array>

#include "magmin/demag.hpp"
#include "magmin/energy.hpp"
#include "magmin/field.hpp"
#include "magmin/spectral.hpp"

namespace magmin {

/// Sweep budget and exit tolerance for the fixed-point steppers. The
/// tolerance bounds the volume-normalized update norm_h(delta)/sqrt(V),
/// an RMS per-cell measure independent of the grid's physical size.
struct IterativeSolveConfig {
  int max_iters = 500;
  double tolerance = 1e-8;
};

/// Explicit projected gradient step: m + dt_eff h_eff(m), renormalized.
/// h_m_n is the stray field of m.
[[nodiscard]] Magnetization fep_step(const Magnetization& m,
                                     const VectorField& h_m_n,
                                     const MaterialParams& p, double dt);
[[nodiscard]] Magnetization fep_step(const Magnetization& m,
                                     const DemagKernel& kernel,
                                     const MaterialParams& p, double dt);

/// Semi-implicit projected step: exchange and anisotropy implicit through
/// the prebuilt operator, stray field lagged and iterated to tolerance,
/// then projected. Throws NoConvergence when the budget runs out.
[[nodiscard]] Magnetization bep_step(const Magnetization& m,
                                     const SpectralOperatorA& A,
                                     const DemagKernel& kernel,
                                     const VectorField& h_m_n,
                                     const MaterialParams& p, double dt,
                                     const IterativeSolveConfig& cfg);
[[nodiscard]] Magnetization bep_step(const Magnetization& m,
                                     const SpectralOperatorA& A,
                                     const DemagKernel& kernel,
                                     const MaterialParams& p, double dt,
                                     const IterativeSolveConfig& cfg);

/// Solves (I - [u]x) delta = b by partial-pivot elimination on the 3x3
/// system. Throws SingularCellSystem when |det| < 1e-14.
[[nodiscard]] std::array<double, 3> solve_cross_system(
    const std::array<double, 3>& u, const std::array<double, 3>& b);

/// Damped Landau-Lifshitz-Gilbert steppers in the rescaled time
/// tau = gamma Ms t, so dtau = gamma Ms dt.
///
/// Each sweep evaluates the stage field (midpoint average, fully implicit,
/// or explicit), then solves the cell-local relation
///   delta = -(m^n + theta delta) x (dtau h_stage - alpha delta)
/// exactly with theta = 1/2, 1, 0. The midpoint solve conserves the cell
/// norm identically; no renormalization is applied in any variant.
[[nodiscard]] Magnetization llg_midpoint_step(const Magnetization& m,
                                              const DemagKernel& kernel,
                                              const VectorField& h_m_n,
                                              const MaterialParams& p,
                                              double dt,
                                              const IterativeSolveConfig& cfg);
[[nodiscard]] Magnetization llg_midpoint_step(const Magnetization& m,
                                              const DemagKernel& kernel,
                                              const MaterialParams& p,
                                              double dt,
                                              const IterativeSolveConfig& cfg);

[[nodiscard]] Magnetization llg_backward_euler_step(
    const Magnetization& m, const DemagKernel& kernel,
    const VectorField& h_m_n, const MaterialParams& p, double dt,
    const IterativeSolveConfig& cfg);
[[nodiscard]] Magnetization llg_backward_euler_step(
    const Magnetization& m, const DemagKernel& kernel,
    const MaterialParams& p, double dt, const IterativeSolveConfig& cfg);

[[nodiscard]] Magnetization llg_forward_euler_step(const Magnetization& m,
                                                   const VectorField& h_m_n,
                                                   const MaterialParams& p,
                                                   double dt);
[[nodiscard]] Magnetization llg_forward_euler_step(const Magnetization& m,
                                                   const DemagKernel& kernel,
                                                   const MaterialParams& p,
                                                   double dt);

}  // namespace magmin
