#pragma once

#include <vector>

#include "magmin/field.hpp"
#include "magmin/material.hpp"

struct fftw_plan_s;

namespace magmin {

/// Constant-coefficient implicit operator
///   A u = u + Can dt_eff (0, u2, u3) - Ce dt_eff lap u
/// diagonalized in the cosine eigenbasis of the Neumann Laplacian.
///
/// dt is the physical step; dt_eff = dt / eta with eta = alpha / (gamma Ms)
/// the relaxation time scale. All per-mode divisors are at least 1, so the
/// solve is unconditionally well posed.
///
/// Immutable after construction; solve() and apply() use per-call scratch.
class SpectralOperatorA {
 public:
  SpectralOperatorA(const Grid& g, const MaterialParams& p, double dt);
  ~SpectralOperatorA();

  SpectralOperatorA(const SpectralOperatorA&) = delete;
  SpectralOperatorA& operator=(const SpectralOperatorA&) = delete;
  SpectralOperatorA(SpectralOperatorA&& other) noexcept;
  SpectralOperatorA& operator=(SpectralOperatorA&& other) noexcept;

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] double dt_eff() const { return dt_eff_; }

  /// Solves A x = rhs by forward cosine transform, per-mode division, and
  /// inverse transform.
  [[nodiscard]] VectorField solve(const VectorField& rhs) const;

  /// Applies A in real space through the stencil Laplacian.
  [[nodiscard]] VectorField apply(const VectorField& u) const;

 private:
  Grid grid_;
  double dt_ = 0.0, dt_eff_ = 0.0, Ce_ = 0.0, Can_ = 0.0;
  std::vector<double> div1_, div23_;  ///< divisors times DCT normalization
  double* plan_in_ = nullptr;
  double* plan_out_ = nullptr;
  fftw_plan_s* plan_fwd_ = nullptr;
  fftw_plan_s* plan_inv_ = nullptr;
};

/// Factory mirroring build_kernel.
[[nodiscard]] SpectralOperatorA build_operator(const Grid& g,
                                               const MaterialParams& p,
                                               double dt);

/// x = A^{-1} rhs.
[[nodiscard]] VectorField spectral_solve(const SpectralOperatorA& A,
                                         const VectorField& rhs);

}  // namespace magmin
