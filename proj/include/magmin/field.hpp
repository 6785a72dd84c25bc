#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "magmin/errors.hpp"
#include "magmin/grid.hpp"

namespace magmin {

/// One real value per grid cell.
struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), values(g.cell_count(), fill) {}

  [[nodiscard]] double& operator[](std::size_t c) { return values[c]; }
  [[nodiscard]] double operator[](std::size_t c) const { return values[c]; }
  [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// Three-component vector field, stored as one scalar field per component.
struct VectorField {
  std::array<ScalarField, 3> comp;

  VectorField() = default;
  explicit VectorField(const Grid& g)
      : comp{ScalarField(g), ScalarField(g), ScalarField(g)} {}

  [[nodiscard]] const Grid& grid() const { return comp[0].grid; }
  [[nodiscard]] ScalarField& operator[](int c) { return comp[c]; }
  [[nodiscard]] const ScalarField& operator[](int c) const { return comp[c]; }
  [[nodiscard]] std::size_t cells() const { return comp[0].size(); }

  [[nodiscard]] std::array<double, 3> at(std::size_t c) const {
    return {comp[0][c], comp[1][c], comp[2][c]};
  }
  void set(std::size_t c, double x, double y, double z) {
    comp[0][c] = x;
    comp[1][c] = y;
    comp[2][c] = z;
  }
};

/// Throws GridMismatch unless both fields live on the same grid.
void require_same_grid(const ScalarField& a, const ScalarField& b);
void require_same_grid(const VectorField& a, const VectorField& b);

/// Cell-volume-weighted inner product (u, v)_h = V_cell * sum_c u_c v_c.
[[nodiscard]] double inner_product_h(const ScalarField& u, const ScalarField& v);
[[nodiscard]] double inner_product_h(const VectorField& u, const VectorField& v);

/// Induced norm sqrt((u, u)_h).
[[nodiscard]] double norm_h(const ScalarField& u);
[[nodiscard]] double norm_h(const VectorField& u);

/// Max over cells of the Euclidean length of u_c.
[[nodiscard]] double max_cell_magnitude(const VectorField& u);

/// Max over cells of |length(u_c) - length(v_c) difference| = max_c |u_c - v_c|.
[[nodiscard]] double max_cell_delta(const VectorField& u, const VectorField& v);

/// Max over cells of | |u_c| - 1 |.
[[nodiscard]] double max_norm_deviation(const VectorField& u);

/// y_c += s * x_c.
void add_scaled(VectorField& y, double s, const VectorField& x);

/// a_c + s * b_c.
[[nodiscard]] VectorField lin_comb(const VectorField& a, double s,
                                   const VectorField& b);

/// Unit-norm magnetization state. Construct via project_unit or assume_unit.
class Magnetization {
 public:
  Magnetization() = default;

  /// Renormalizes every cell of `raw` to unit length.
  /// Throws DegenerateProjection when a cell magnitude is below eps.
  static Magnetization project(const VectorField& raw, double eps = 1e-12);

  /// Accepts a field that is already unit length per cell, checked to
  /// check_tol. Steppers without projection pass their own drift budget.
  static Magnetization assume_unit(VectorField f, double check_tol = 1e-12);

  [[nodiscard]] const VectorField& vec() const { return f_; }
  operator const VectorField&() const { return f_; }
  [[nodiscard]] const Grid& grid() const { return f_.grid(); }

 private:
  explicit Magnetization(VectorField f) : f_(std::move(f)) {}
  VectorField f_;
};

/// Per-cell renormalization m_c / |m_c|; throws DegenerateProjection below eps.
[[nodiscard]] Magnetization project_unit(const VectorField& raw,
                                         double eps = 1e-12);

}  // namespace magmin
