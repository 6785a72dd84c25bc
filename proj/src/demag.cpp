#include "magmin/demag.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <sstream>

#include "magmin/newell.hpp"

namespace magmin {

namespace {

// FFTW plan creation and destruction are not thread safe; execution on
// distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

using RealBuf = std::unique_ptr<double[], FftwDeleter>;
using CplxBuf = std::unique_ptr<std::complex<double>[], FftwDeleter>;

RealBuf alloc_real(std::size_t n) {
  return RealBuf(static_cast<double*>(fftw_malloc(n * sizeof(double))));
}

CplxBuf alloc_cplx(std::size_t n) {
  return CplxBuf(static_cast<std::complex<double>*>(
      fftw_malloc(n * sizeof(std::complex<double>))));
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

// Entry index order: xx, yy, zz, xy, xz, yz. Parity of each entry under
// negation of the x, y, z offset.
constexpr int kParity[6][3] = {
    {+1, +1, +1}, {+1, +1, +1}, {+1, +1, +1},
    {-1, -1, +1}, {-1, +1, -1}, {+1, -1, -1},
};

double entry_value(int e, double X, double Y, double Z, double dx, double dy,
                   double dz) {
  switch (e) {
    case 0: return newell::Nxx(X, Y, Z, dx, dy, dz);
    case 1: return newell::Nyy(X, Y, Z, dx, dy, dz);
    case 2: return newell::Nzz(X, Y, Z, dx, dy, dz);
    case 3: return newell::Nxy(X, Y, Z, dx, dy, dz);
    case 4: return newell::Nxz(X, Y, Z, dx, dy, dz);
    default: return newell::Nyz(X, Y, Z, dx, dy, dz);
  }
}

void check_self_trace(const Grid& g) {
  const double tr = newell::Nxx(0, 0, 0, g.hx, g.hy, g.hz) +
                    newell::Nyy(0, 0, 0, g.hx, g.hy, g.hz) +
                    newell::Nzz(0, 0, 0, g.hx, g.hy, g.hz);
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "self-demag trace " << tr << " deviates from 1";
    throw Error(msg.str());
  }
}

}  // namespace

DemagKernel::DemagKernel(const Grid& g) : grid_(g) {
  check_self_trace(g);
  px_ = (g.nx > 1) ? 2 * g.nx : 1;
  py_ = (g.ny > 1) ? 2 * g.ny : 1;
  pz_ = (g.nz > 1) ? 2 * g.nz : 1;
  cx_ = px_ / 2 + 1;
  const std::size_t nreal = static_cast<std::size_t>(pz_) * py_ * px_;
  const std::size_t ncplx = static_cast<std::size_t>(pz_) * py_ * cx_;
  plan_real_ = static_cast<double*>(fftw_malloc(nreal * sizeof(double)));
  plan_cplx_ = static_cast<std::complex<double>*>(
      fftw_malloc(ncplx * sizeof(std::complex<double>)));
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_r2c_ = fftw_plan_dft_r2c_3d(pz_, py_, px_, plan_real_,
                                     as_fftw(plan_cplx_), FFTW_ESTIMATE);
    plan_c2r_ = fftw_plan_dft_c2r_3d(pz_, py_, px_, as_fftw(plan_cplx_),
                                     plan_real_, FFTW_ESTIMATE);
  }
  build_spectra();
}

DemagKernel::~DemagKernel() {
  if (plan_r2c_ || plan_c2r_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_r2c_) fftw_destroy_plan(plan_r2c_);
    if (plan_c2r_) fftw_destroy_plan(plan_c2r_);
  }
  fftw_free(plan_real_);
  fftw_free(plan_cplx_);
}

DemagKernel::DemagKernel(DemagKernel&& other) noexcept
    : grid_(other.grid_),
      px_(other.px_), py_(other.py_), pz_(other.pz_), cx_(other.cx_),
      plan_real_(other.plan_real_), plan_cplx_(other.plan_cplx_),
      plan_r2c_(other.plan_r2c_), plan_c2r_(other.plan_c2r_) {
  for (int e = 0; e < 6; ++e) spec_[e] = std::move(other.spec_[e]);
  other.plan_real_ = nullptr;
  other.plan_cplx_ = nullptr;
  other.plan_r2c_ = nullptr;
  other.plan_c2r_ = nullptr;
}

DemagKernel& DemagKernel::operator=(DemagKernel&& other) noexcept {
  if (this != &other) {
    this->~DemagKernel();
    new (this) DemagKernel(std::move(other));
  }
  return *this;
}

void DemagKernel::build_spectra() {
  const Grid& g = grid_;
  const std::size_t nreal = static_cast<std::size_t>(pz_) * py_ * px_;
  const std::size_t ncplx = static_cast<std::size_t>(pz_) * py_ * cx_;
  // Inverse-transform normalization and the sign of h = -N * m are folded
  // into the stored spectra.
  const double scale = -1.0 / (static_cast<double>(px_) * py_ * pz_);
  for (int e = 0; e < 6; ++e) {
    std::memset(plan_real_, 0, nreal * sizeof(double));
    for (int oz = 0; oz < g.nz; ++oz) {
      for (int oy = 0; oy < g.ny; ++oy) {
        for (int ox = 0; ox < g.nx; ++ox) {
          const double val = entry_value(e, ox * g.hx, oy * g.hy, oz * g.hz,
                                         g.hx, g.hy, g.hz);
          for (int sz = 0; sz < (oz > 0 ? 2 : 1); ++sz) {
            const int zi = sz ? pz_ - oz : oz;
            for (int sy = 0; sy < (oy > 0 ? 2 : 1); ++sy) {
              const int yi = sy ? py_ - oy : oy;
              for (int sx = 0; sx < (ox > 0 ? 2 : 1); ++sx) {
                const int xi = sx ? px_ - ox : ox;
                double sgn = 1.0;
                if (sx) sgn *= kParity[e][0];
                if (sy) sgn *= kParity[e][1];
                if (sz) sgn *= kParity[e][2];
                plan_real_[(static_cast<std::size_t>(zi) * py_ + yi) * px_ +
                           xi] = sgn * val;
              }
            }
          }
        }
      }
    }
    fftw_execute(plan_r2c_);
    spec_[e].resize(ncplx);
    for (std::size_t c = 0; c < ncplx; ++c) spec_[e][c] = plan_cplx_[c] * scale;
  }
}

VectorField DemagKernel::apply(const VectorField& m) const {
  if (m.grid() != grid_)
    throw GridMismatch("demag kernel applied to a field on a different grid");
  const Grid& g = grid_;
  const std::size_t nreal = static_cast<std::size_t>(pz_) * py_ * px_;
  const std::size_t ncplx = static_cast<std::size_t>(pz_) * py_ * cx_;

  RealBuf real[3];
  CplxBuf cplx[3];
  for (int d = 0; d < 3; ++d) {
    real[d] = alloc_real(nreal);
    cplx[d] = alloc_cplx(ncplx);
    std::memset(real[d].get(), 0, nreal * sizeof(double));
    const double* src = m[d].values.data();
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        std::memcpy(real[d].get() + (static_cast<std::size_t>(k) * py_ + j) * px_,
                    src + g.index(0, j, k), g.nx * sizeof(double));
    fftw_execute_dft_r2c(plan_r2c_, real[d].get(), as_fftw(cplx[d].get()));
  }

  for (std::size_t c = 0; c < ncplx; ++c) {
    const std::complex<double> mx = cplx[0][c], my = cplx[1][c], mz = cplx[2][c];
    cplx[0][c] = spec_[0][c] * mx + spec_[3][c] * my + spec_[4][c] * mz;
    cplx[1][c] = spec_[3][c] * mx + spec_[1][c] * my + spec_[5][c] * mz;
    cplx[2][c] = spec_[4][c] * mx + spec_[5][c] * my + spec_[2][c] * mz;
  }

  VectorField h(g);
  for (int d = 0; d < 3; ++d) {
    fftw_execute_dft_c2r(plan_c2r_, as_fftw(cplx[d].get()), real[d].get());
    double* dst = h[d].values.data();
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        std::memcpy(dst + g.index(0, j, k),
                    real[d].get() + (static_cast<std::size_t>(k) * py_ + j) * px_,
                    g.nx * sizeof(double));
  }
  return h;
}

DemagKernel build_kernel(const Grid& g) { return DemagKernel(g); }

VectorField apply_demag(const DemagKernel& k, const VectorField& m) {
  return k.apply(m);
}

VectorField apply_demag_direct(const VectorField& m) {
  const Grid& g = m.grid();
  if (g.cell_count() > 4096)
    throw Error("direct demag summation is limited to 4096 cells");
  const int wx = 2 * g.nx - 1, wy = 2 * g.ny - 1, wz = 2 * g.nz - 1;
  const std::size_t ntab = static_cast<std::size_t>(wz) * wy * wx;
  std::vector<double> tab[6];
  auto tab_index = [&](int ox, int oy, int oz) {
    return (static_cast<std::size_t>(oz + g.nz - 1) * wy + (oy + g.ny - 1)) *
               wx +
           (ox + g.nx - 1);
  };
  for (int e = 0; e < 6; ++e) {
    tab[e].assign(ntab, 0.0);
    for (int oz = 0; oz < g.nz; ++oz)
      for (int oy = 0; oy < g.ny; ++oy)
        for (int ox = 0; ox < g.nx; ++ox) {
          const double val = entry_value(e, ox * g.hx, oy * g.hy, oz * g.hz,
                                         g.hx, g.hy, g.hz);
          for (int sz = -1; sz <= 1; sz += 2) {
            if (oz == 0 && sz > 0) continue;
            for (int sy = -1; sy <= 1; sy += 2) {
              if (oy == 0 && sy > 0) continue;
              for (int sx = -1; sx <= 1; sx += 2) {
                if (ox == 0 && sx > 0) continue;
                double sgn = 1.0;
                if (sx < 0 && ox > 0) sgn *= kParity[e][0];
                if (sy < 0 && oy > 0) sgn *= kParity[e][1];
                if (sz < 0 && oz > 0) sgn *= kParity[e][2];
                tab[e][tab_index(sx < 0 ? -ox : ox, sy < 0 ? -oy : oy,
                                 sz < 0 ? -oz : oz)] = sgn * val;
              }
            }
          }
        }
  }
  VectorField h(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double hx = 0.0, hy = 0.0, hz = 0.0;
        for (int ks = 0; ks < g.nz; ++ks)
          for (int js = 0; js < g.ny; ++js)
            for (int is = 0; is < g.nx; ++is) {
              const std::size_t t = tab_index(i - is, j - js, k - ks);
              const std::size_t s = g.index(is, js, ks);
              const double mx = m[0][s], my = m[1][s], mz = m[2][s];
              hx -= tab[0][t] * mx + tab[3][t] * my + tab[4][t] * mz;
              hy -= tab[3][t] * mx + tab[1][t] * my + tab[5][t] * mz;
              hz -= tab[4][t] * mx + tab[5][t] * my + tab[2][t] * mz;
            }
        const std::size_t c = g.index(i, j, k);
        h[0][c] = hx;
        h[1][c] = hy;
        h[2][c] = hz;
      }
  return h;
}

}  // namespace magmin
