#pragma once

#include <array>
#include <stdexcept>

namespace magmin {

/// Material constants in SI units, plus the derived dimensionless groups
/// used by the normalized energy.
///
/// The easy axis is fixed to x; the anisotropy penalty acts on the y and z
/// components of the unit magnetization.
struct MaterialParams {
  double Cex = 1.3e-11;   ///< exchange constant, J/m
  double Ku = 5.0e2;      ///< uniaxial anisotropy density, J/m^3
  double Ms = 8.0e5;      ///< saturation magnetization, A/m
  double mu0 = 1.2566370614359172e-6;  ///< vacuum permeability, T m/A
  double alpha = 0.1;     ///< Gilbert damping
  double gamma = 2.211e5; ///< gyromagnetic ratio, m/(A s)
  std::array<double, 3> h_e{0.0, 0.0, 0.0};  ///< applied field / Ms

  /// Exchange coefficient of the normalized energy, units m^2.
  [[nodiscard]] double Ce() const { return 2.0 * Cex / (mu0 * Ms * Ms); }

  /// Anisotropy coefficient of the normalized energy, dimensionless.
  [[nodiscard]] double Can() const { return 2.0 * Ku / (mu0 * Ms * Ms); }

  /// Stray-field energy scale mu0 Ms^2 / 2, J/m^3.
  [[nodiscard]] double Kd() const { return 0.5 * mu0 * Ms * Ms; }

  /// Relaxation time scale alpha / (gamma Ms), seconds. A physical time
  /// step dt enters the gradient-flow schemes as dt / eta().
  [[nodiscard]] double eta() const { return alpha / (gamma * Ms); }

  void validate() const {
    if (Ms <= 0.0 || mu0 <= 0.0)
      throw std::invalid_argument("MaterialParams: Ms and mu0 must be positive");
    if (Cex < 0.0 || Ku < 0.0)
      throw std::invalid_argument("MaterialParams: Cex and Ku must be nonnegative");
    if (alpha <= 0.0 || gamma <= 0.0)
      throw std::invalid_argument("MaterialParams: alpha and gamma must be positive");
  }
};

}  // namespace magmin
