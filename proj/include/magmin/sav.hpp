#pragma once

#include "magmin/demag.hpp"
#include "magmin/energy.hpp"
#include "magmin/field.hpp"
#include "magmin/spectral.hpp"

namespace magmin {

/// State advanced by the auxiliary-variable relaxation schemes: the unit
/// magnetization, the scalar auxiliary variable r tracking the square root
/// of the magnetostatic energy, the cached stray field of m, and time.
struct SavState {
  Magnetization m;
  double r = 0.0;
  VectorField h_m;
  double t = 0.0;
};

/// Builds the initial state: h_m from the kernel, r = sqrt(E_m).
[[nodiscard]] SavState make_sav_state(Magnetization m, const DemagKernel& kernel,
                                      double t = 0.0);

/// Result of the linearly implicit intermediate solve.
struct SavSubstepResult {
  VectorField m_star;  ///< intermediate magnetization before projection
  double ip = 0.0;     ///< (m_star, h_m)_h recovered by scalar elimination
};

/// Optional per-step diagnostics for dissipation monitoring.
struct SavStepDiagnostics {
  double modified_before = 0.0;  ///< g(m^n, r^n)
  double modified_star = 0.0;    ///< g(m*, r*) at the intermediate state
  double r_star = 0.0;
};

/// One linearly implicit substep:
///   F = m + dt_eff (r / scale - 1) h_m + dt_eff h_e,  scale = sqrt(E_m),
///   A m* - dt_eff ((h_m, m*)_h / (h_m, m)_h) h_m = F,
/// reduced by scalar elimination to two solves with A (one for F, one for
/// h_m). Throws DegenerateSav when the magnetostatic energy density is below
/// eps_sav, SingularScalarSolve when the elimination denominator vanishes.
[[nodiscard]] SavSubstepResult sav_substep(const SavState& s,
                                           const SpectralOperatorA& A,
                                           const MaterialParams& p, double dt);

/// r at the intermediate state, reconstructed from the update relation
/// r* = r - (h_m, m* - m)_h / (2 scale).
[[nodiscard]] double reconstruct_intermediate_aux(const SavState& s,
                                                  const VectorField& m_star);

/// Variant 1: project m*, then advance r by the same update relation
/// evaluated at the projected state. Clamps tiny negative r to zero and
/// throws NegativeAux below -1e-10.
[[nodiscard]] SavState sav1_step(const SavState& s, const SpectralOperatorA& A,
                                 const DemagKernel& kernel,
                                 const MaterialParams& p, double dt,
                                 SavStepDiagnostics* diag = nullptr);

/// Variant 2: project m*, then reset r = sqrt(E_m) at the new state.
[[nodiscard]] SavState sav2_step(const SavState& s, const SpectralOperatorA& A,
                                 const DemagKernel& kernel,
                                 const MaterialParams& p, double dt,
                                 SavStepDiagnostics* diag = nullptr);

/// Threshold on the magnetostatic energy density below which the
/// auxiliary-variable coupling is skipped for the step.
inline constexpr double kEpsSav = 1e-14;

}  // namespace magmin
