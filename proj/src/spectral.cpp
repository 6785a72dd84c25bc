#include "magmin/spectral.hpp"

#include <fftw3.h>

#include <cassert>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>

#include "magmin/operators.hpp"

namespace magmin {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

using RealBuf = std::unique_ptr<double[], FftwDeleter>;

RealBuf alloc_real(std::size_t n) {
  return RealBuf(static_cast<double*>(fftw_malloc(n * sizeof(double))));
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

SpectralOperatorA::SpectralOperatorA(const Grid& g, const MaterialParams& p,
                                     double dt)
    : grid_(g), dt_(dt) {
  p.validate();
  if (dt <= 0.0) throw Error("operator requires a positive time step");
  dt_eff_ = dt / p.eta();
  Ce_ = p.Ce();
  Can_ = p.Can();
  const std::size_t n = g.cell_count();
  div1_.resize(n);
  div23_.resize(n);
  // Forward REDFT10 followed by inverse REDFT01 scales by 2*n per axis.
  const double norm = 8.0 * g.nx * g.ny * g.nz;
  for (int k = 0; k < g.nz; ++k) {
    const double lz = (2.0 * std::cos(kPi * k / g.nz) - 2.0) / (g.hz * g.hz);
    for (int j = 0; j < g.ny; ++j) {
      const double ly = (2.0 * std::cos(kPi * j / g.ny) - 2.0) / (g.hy * g.hy);
      for (int i = 0; i < g.nx; ++i) {
        const double lx =
            (2.0 * std::cos(kPi * i / g.nx) - 2.0) / (g.hx * g.hx);
        const double lam = lx + ly + lz;
        const double d1 = 1.0 - Ce_ * dt_eff_ * lam;
        const double d23 = 1.0 + Can_ * dt_eff_ - Ce_ * dt_eff_ * lam;
        assert(d1 >= 1.0 && d23 >= 1.0);
        const std::size_t c = g.index(i, j, k);
        div1_[c] = d1 * norm;
        div23_[c] = d23 * norm;
      }
    }
  }
  plan_in_ = static_cast<double*>(fftw_malloc(n * sizeof(double)));
  plan_out_ = static_cast<double*>(fftw_malloc(n * sizeof(double)));
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_r2r_3d(g.nz, g.ny, g.nx, plan_in_, plan_out_,
                                 FFTW_REDFT10, FFTW_REDFT10, FFTW_REDFT10,
                                 FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_r2r_3d(g.nz, g.ny, g.nx, plan_in_, plan_out_,
                                 FFTW_REDFT01, FFTW_REDFT01, FFTW_REDFT01,
                                 FFTW_ESTIMATE);
  }
}

SpectralOperatorA::~SpectralOperatorA() {
  if (plan_fwd_ || plan_inv_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(plan_fwd_);
    if (plan_inv_) fftw_destroy_plan(plan_inv_);
  }
  fftw_free(plan_in_);
  fftw_free(plan_out_);
}

SpectralOperatorA::SpectralOperatorA(SpectralOperatorA&& other) noexcept
    : grid_(other.grid_),
      dt_(other.dt_), dt_eff_(other.dt_eff_),
      Ce_(other.Ce_), Can_(other.Can_),
      div1_(std::move(other.div1_)), div23_(std::move(other.div23_)),
      plan_in_(other.plan_in_), plan_out_(other.plan_out_),
      plan_fwd_(other.plan_fwd_), plan_inv_(other.plan_inv_) {
  other.plan_in_ = nullptr;
  other.plan_out_ = nullptr;
  other.plan_fwd_ = nullptr;
  other.plan_inv_ = nullptr;
}

SpectralOperatorA& SpectralOperatorA::operator=(
    SpectralOperatorA&& other) noexcept {
  if (this != &other) {
    this->~SpectralOperatorA();
    new (this) SpectralOperatorA(std::move(other));
  }
  return *this;
}

VectorField SpectralOperatorA::solve(const VectorField& rhs) const {
  if (rhs.grid() != grid_)
    throw GridMismatch("operator solve on a field from a different grid");
  const std::size_t n = grid_.cell_count();
  RealBuf in = alloc_real(n);
  RealBuf out = alloc_real(n);
  VectorField x(grid_);
  for (int d = 0; d < 3; ++d) {
    std::memcpy(in.get(), rhs[d].values.data(), n * sizeof(double));
    fftw_execute_r2r(plan_fwd_, in.get(), out.get());
    const std::vector<double>& div = (d == 0) ? div1_ : div23_;
    for (std::size_t c = 0; c < n; ++c) out.get()[c] /= div[c];
    fftw_execute_r2r(plan_inv_, out.get(), in.get());
    std::memcpy(x[d].values.data(), in.get(), n * sizeof(double));
  }
  return x;
}

VectorField SpectralOperatorA::apply(const VectorField& u) const {
  if (u.grid() != grid_)
    throw GridMismatch("operator apply on a field from a different grid");
  VectorField out = laplacian_vec(u);
  const std::size_t n = u.cells();
  for (int d = 0; d < 3; ++d) {
    double* o = out[d].values.data();
    const double* uc = u[d].values.data();
    const double an = (d == 0) ? 0.0 : Can_ * dt_eff_;
    for (std::size_t c = 0; c < n; ++c)
      o[c] = uc[c] + an * uc[c] - Ce_ * dt_eff_ * o[c];
  }
  return out;
}

SpectralOperatorA build_operator(const Grid& g, const MaterialParams& p,
                                 double dt) {
  return SpectralOperatorA(g, p, dt);
}

VectorField spectral_solve(const SpectralOperatorA& A, const VectorField& rhs) {
  return A.solve(rhs);
}

}  // namespace magmin
