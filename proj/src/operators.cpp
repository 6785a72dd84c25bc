#include "magmin/operators.hpp"

namespace magmin {

ScalarField laplacian(const ScalarField& u) {
  const Grid& g = u.grid;
  ScalarField out(g);
  const double ax = 1.0 / (g.hx * g.hx);
  const double ay = 1.0 / (g.hy * g.hy);
  const double az = 1.0 / (g.hz * g.hz);
  const double* in = u.values.data();
  double* p = out.values.data();
  for (int k = 0; k < g.nz; ++k) {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t c = g.index(i, j, k);
        const double uc = in[c];
        // Mirror ghosts: an out-of-range neighbor contributes uc.
        const double xm = (i > 0) ? in[c - 1] : uc;
        const double xp = (i < g.nx - 1) ? in[c + 1] : uc;
        const double ym = (j > 0) ? in[c - g.nx] : uc;
        const double yp = (j < g.ny - 1) ? in[c + g.nx] : uc;
        const std::size_t sz = static_cast<std::size_t>(g.nx) * g.ny;
        const double zm = (k > 0) ? in[c - sz] : uc;
        const double zp = (k < g.nz - 1) ? in[c + sz] : uc;
        p[c] = ax * (xp - 2.0 * uc + xm) + ay * (yp - 2.0 * uc + ym) +
               az * (zp - 2.0 * uc + zm);
      }
    }
  }
  return out;
}

VectorField laplacian_vec(const VectorField& u) {
  VectorField out;
  for (int d = 0; d < 3; ++d) out[d] = laplacian(u[d]);
  return out;
}

}  // namespace magmin
