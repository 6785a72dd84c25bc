#pragma once

#include <cmath>

#include "magmin/field.hpp"
#include "magmin/material.hpp"
#include "magmin/operators.hpp"

namespace magmin {

/// Normalized Gibbs free energy split by contribution. All terms carry the
/// Eq-style normalization by mu0 Ms^2, so they have units of volume (m^3);
/// divide by the domain volume for a dimensionless density.
struct EnergyBreakdown {
  double exchange = 0.0;       ///< -(Ce/2) (lap m, m)_h
  double anisotropy = 0.0;     ///< (Can/2) (|m2|^2 + |m3|^2)
  double magnetostatic = 0.0;  ///< -(1/2) (h_m, m)_h
  double zeeman = 0.0;         ///< -(h_e, m)_h
  double total = 0.0;
  double modified_total = 0.0; ///< exchange + anisotropy + r^2

  /// Fills modified_total from an auxiliary-variable value.
  void set_aux(double r) { modified_total = exchange + anisotropy + r * r; }
};

/// h_eff = Ce lap m - Can (m2 e2 + m3 e3) + h_m + h_e.
/// h_m must live on the grid of m. Accepts non-unit fields.
[[nodiscard]] VectorField effective_field(const VectorField& m,
                                          const VectorField& h_m,
                                          const MaterialParams& p);

/// Gibbs energy of a state given its stray field. modified_total is left
/// equal to exchange + anisotropy (call set_aux to add r^2).
[[nodiscard]] EnergyBreakdown gibbs_energy(const VectorField& m,
                                           const VectorField& h_m,
                                           const MaterialParams& p);

/// Modified energy: exchange + anisotropy + r^2. The stray-field term is
/// replaced by the auxiliary variable squared.
[[nodiscard]] double modified_energy(const VectorField& m, double r,
                                     const MaterialParams& p);

/// Magnetostatic energy -(1/2)(h_m, m)_h. Throws NegativeEnergy when the
/// result is below -1e-8, which signals a broken stray-field kernel.
[[nodiscard]] double magnetostatic_energy(const VectorField& h_m,
                                          const VectorField& m);

/// r = sqrt(max(0, magnetostatic_energy)).
[[nodiscard]] double aux_var_from_state(const VectorField& m,
                                        const VectorField& h_m);

}  // namespace magmin
