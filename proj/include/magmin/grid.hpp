#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace magmin {

/// Uniform rectangular cell-centered grid.
///
/// Cell (i,j,k) has center origin + ((i+1/2)hx, (j+1/2)hy, (k+1/2)hz).
/// Linear storage is x-fastest, then y, then z.
struct Grid {
  int nx = 1, ny = 1, nz = 1;
  double hx = 1.0, hy = 1.0, hz = 1.0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};

  Grid() = default;
  Grid(int nx_, int ny_, int nz_, double hx_, double hy_, double hz_,
       std::array<double, 3> origin_ = {0.0, 0.0, 0.0})
      : nx(nx_), ny(ny_), nz(nz_), hx(hx_), hy(hy_), hz(hz_), origin(origin_) {
    if (nx < 1 || ny < 1 || nz < 1)
      throw std::invalid_argument("Grid: cell counts must be positive");
    if (hx <= 0.0 || hy <= 0.0 || hz <= 0.0)
      throw std::invalid_argument("Grid: cell sizes must be positive");
  }

  [[nodiscard]] std::size_t cell_count() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }

  [[nodiscard]] double cell_volume() const { return hx * hy * hz; }

  [[nodiscard]] double domain_volume() const {
    return cell_volume() * static_cast<double>(cell_count());
  }

  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * ny + j) * nx + i;
  }

  [[nodiscard]] std::array<double, 3> cell_center(int i, int j, int k) const {
    return {origin[0] + (i + 0.5) * hx, origin[1] + (j + 0.5) * hy,
            origin[2] + (k + 0.5) * hz};
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.nx == b.nx && a.ny == b.ny && a.nz == b.nz && a.hx == b.hx &&
           a.hy == b.hy && a.hz == b.hz && a.origin == b.origin;
  }
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }
};

}  // namespace magmin
