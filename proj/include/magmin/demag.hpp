#pragma once

#include <complex>
#include <vector>

#include "magmin/field.hpp"

// Forward declarations so the FFTW header stays out of the public interface.
struct fftw_plan_s;

namespace magmin {

/// Precomputed stray-field convolution kernel for one grid.
///
/// Holds the transformed cell-averaged demagnetizing tensor on a zero-padded
/// grid (2n per axis, singleton axes unpadded). The stored spectra fold in
/// the minus sign of h = -N * m and the inverse-transform normalization, so
/// apply() is three forward transforms, one pointwise tensor multiply, and
/// three inverse transforms.
///
/// Immutable after construction and safe to share across threads; apply()
/// uses per-call scratch buffers.
class DemagKernel {
 public:
  explicit DemagKernel(const Grid& g);
  ~DemagKernel();

  DemagKernel(const DemagKernel&) = delete;
  DemagKernel& operator=(const DemagKernel&) = delete;
  DemagKernel(DemagKernel&& other) noexcept;
  DemagKernel& operator=(DemagKernel&& other) noexcept;

  [[nodiscard]] const Grid& grid() const { return grid_; }

  /// Stray field h = -N * m of a (not necessarily unit) vector field.
  [[nodiscard]] VectorField apply(const VectorField& m) const;

 private:
  void build_spectra();

  Grid grid_;
  int px_ = 0, py_ = 0, pz_ = 0;  ///< padded real dimensions
  int cx_ = 0;                    ///< px/2 + 1 complex entries along x
  std::vector<std::complex<double>> spec_[6];  ///< xx, yy, zz, xy, xz, yz
  double* plan_real_ = nullptr;
  std::complex<double>* plan_cplx_ = nullptr;
  fftw_plan_s* plan_r2c_ = nullptr;
  fftw_plan_s* plan_c2r_ = nullptr;
};

/// Builds the kernel for a grid (cell sizes may be anisotropic).
[[nodiscard]] DemagKernel build_kernel(const Grid& g);

/// h = -N * m through the FFT path.
[[nodiscard]] VectorField apply_demag(const DemagKernel& k, const VectorField& m);

/// Reference O(N^2) summation over all cell pairs with tabulated tensor
/// entries. Guarded to grids of at most 4096 cells.
[[nodiscard]] VectorField apply_demag_direct(const VectorField& m);

}  // namespace magmin
