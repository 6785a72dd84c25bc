#include "magmin/energy.hpp"

#include <sstream>

namespace magmin {

VectorField effective_field(const VectorField& m, const VectorField& h_m,
                            const MaterialParams& p) {
  require_same_grid(m, h_m);
  const double Ce = p.Ce();
  const double Can = p.Can();
  VectorField h = laplacian_vec(m);
  const std::size_t n = m.cells();
  for (int d = 0; d < 3; ++d) {
    double* out = h[d].values.data();
    const double* mc = m[d].values.data();
    const double* hm = h_m[d].values.data();
    const double an = (d == 0) ? 0.0 : Can;
    const double he = p.h_e[d];
    for (std::size_t c = 0; c < n; ++c)
      out[c] = Ce * out[c] - an * mc[c] + hm[c] + he;
  }
  return h;
}

EnergyBreakdown gibbs_energy(const VectorField& m, const VectorField& h_m,
                             const MaterialParams& p) {
  require_same_grid(m, h_m);
  EnergyBreakdown e;
  const VectorField lap = laplacian_vec(m);
  e.exchange = -0.5 * p.Ce() * inner_product_h(lap, m);
  e.anisotropy = 0.5 * p.Can() *
                 (inner_product_h(m[1], m[1]) + inner_product_h(m[2], m[2]));
  e.magnetostatic = magnetostatic_energy(h_m, m);
  const double vc = m.grid().cell_volume();
  double zsum = 0.0;
  const std::size_t n = m.cells();
  for (int d = 0; d < 3; ++d) {
    if (p.h_e[d] == 0.0) continue;
    const double* mc = m[d].values.data();
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += mc[c];
    zsum += p.h_e[d] * s;
  }
  e.zeeman = -vc * zsum;
  e.total = e.exchange + e.anisotropy + e.magnetostatic + e.zeeman;
  e.modified_total = e.exchange + e.anisotropy;
  return e;
}

double modified_energy(const VectorField& m, double r,
                       const MaterialParams& p) {
  const VectorField lap = laplacian_vec(m);
  const double ex = -0.5 * p.Ce() * inner_product_h(lap, m);
  const double an = 0.5 * p.Can() *
                    (inner_product_h(m[1], m[1]) + inner_product_h(m[2], m[2]));
  return ex + an + r * r;
}

double magnetostatic_energy(const VectorField& h_m, const VectorField& m) {
  const double e = -0.5 * inner_product_h(h_m, m);
  // The stray-field energy of any magnetization is nonnegative; anything
  // measurably below zero relative to the field scale means a broken kernel.
  const double scale = inner_product_h(m, m);
  if (e < -1e-10 * scale) {
    std::ostringstream msg;
    msg << "magnetostatic energy " << e << " is negative beyond tolerance";
    throw NegativeEnergy(msg.str());
  }
  return e;
}

double aux_var_from_state(const VectorField& m, const VectorField& h_m) {
  return std::sqrt(std::max(0.0, magnetostatic_energy(h_m, m)));
}

}  // namespace magmin
