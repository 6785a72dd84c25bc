#include "magmin/field.hpp"

#include <cmath>
#include <sstream>

namespace magmin {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid != b.grid) throw GridMismatch("scalar fields on different grids");
}

void require_same_grid(const VectorField& a, const VectorField& b) {
  if (a.grid() != b.grid()) throw GridMismatch("vector fields on different grids");
}

double inner_product_h(const ScalarField& u, const ScalarField& v) {
  require_same_grid(u, v);
  double s = 0.0;
  const std::size_t n = u.size();
  for (std::size_t c = 0; c < n; ++c) s += u[c] * v[c];
  return s * u.grid.cell_volume();
}

double inner_product_h(const VectorField& u, const VectorField& v) {
  require_same_grid(u, v);
  double s = 0.0;
  const std::size_t n = u.cells();
  for (int d = 0; d < 3; ++d) {
    const double* a = u[d].values.data();
    const double* b = v[d].values.data();
    for (std::size_t c = 0; c < n; ++c) s += a[c] * b[c];
  }
  return s * u.grid().cell_volume();
}

double norm_h(const ScalarField& u) { return std::sqrt(inner_product_h(u, u)); }

double norm_h(const VectorField& u) { return std::sqrt(inner_product_h(u, u)); }

double max_cell_magnitude(const VectorField& u) {
  double m = 0.0;
  const std::size_t n = u.cells();
  for (std::size_t c = 0; c < n; ++c) {
    const double x = u[0][c], y = u[1][c], z = u[2][c];
    m = std::max(m, std::sqrt(x * x + y * y + z * z));
  }
  return m;
}

double max_cell_delta(const VectorField& u, const VectorField& v) {
  require_same_grid(u, v);
  double m = 0.0;
  const std::size_t n = u.cells();
  for (std::size_t c = 0; c < n; ++c) {
    const double x = u[0][c] - v[0][c];
    const double y = u[1][c] - v[1][c];
    const double z = u[2][c] - v[2][c];
    m = std::max(m, std::sqrt(x * x + y * y + z * z));
  }
  return m;
}

double max_norm_deviation(const VectorField& u) {
  double m = 0.0;
  const std::size_t n = u.cells();
  for (std::size_t c = 0; c < n; ++c) {
    const double x = u[0][c], y = u[1][c], z = u[2][c];
    m = std::max(m, std::abs(std::sqrt(x * x + y * y + z * z) - 1.0));
  }
  return m;
}

void add_scaled(VectorField& y, double s, const VectorField& x) {
  require_same_grid(y, x);
  const std::size_t n = y.cells();
  for (int d = 0; d < 3; ++d) {
    double* a = y[d].values.data();
    const double* b = x[d].values.data();
    for (std::size_t c = 0; c < n; ++c) a[c] += s * b[c];
  }
}

VectorField lin_comb(const VectorField& a, double s, const VectorField& b) {
  VectorField out = a;
  add_scaled(out, s, b);
  return out;
}

Magnetization Magnetization::project(const VectorField& raw, double eps) {
  VectorField f = raw;
  const std::size_t n = f.cells();
  for (std::size_t c = 0; c < n; ++c) {
    const double x = f[0][c], y = f[1][c], z = f[2][c];
    const double len = std::sqrt(x * x + y * y + z * z);
    if (len < eps) {
      std::ostringstream msg;
      msg << "projection degenerate at cell " << c << ": |m| = " << len;
      throw DegenerateProjection(msg.str());
    }
    const double inv = 1.0 / len;
    f[0][c] = x * inv;
    f[1][c] = y * inv;
    f[2][c] = z * inv;
  }
  return Magnetization(std::move(f));
}

Magnetization Magnetization::assume_unit(VectorField f, double check_tol) {
  const double dev = max_norm_deviation(f);
  if (dev > check_tol) {
    std::ostringstream msg;
    msg << "assume_unit given non-unit field, deviation " << dev;
    throw DegenerateProjection(msg.str());
  }
  return Magnetization(std::move(f));
}

Magnetization project_unit(const VectorField& raw, double eps) {
  return Magnetization::project(raw, eps);
}

}  // namespace magmin
