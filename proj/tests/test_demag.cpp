#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "magmin/demag.hpp"
#include "magmin/field.hpp"
#include "magmin/newell.hpp"

using namespace magmin;

namespace {

VectorField random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  VectorField f(g);
  for (std::size_t c = 0; c < f.cells(); ++c)
    f.set(c, dist(rng), dist(rng), dist(rng));
  return f;
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a.cells(); ++i)
      worst = std::max(worst, std::fabs(a[c][i] - b[c][i]));
  return worst;
}

}  // namespace

TEST_CASE("cube self-demagnetization factor is exactly one third") {
  const double d = 5e-9;
  CHECK(newell::Nxx(0, 0, 0, d, d, d) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(newell::Nyy(0, 0, 0, d, d, d) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(newell::Nzz(0, 0, 0, d, d, d) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::fabs(newell::Nxy(0, 0, 0, d, d, d)) < 1e-14);
  CHECK(std::fabs(newell::Nxz(0, 0, 0, d, d, d)) < 1e-14);
  CHECK(std::fabs(newell::Nyz(0, 0, 0, d, d, d)) < 1e-14);
}

TEST_CASE("self tensor trace is one for anisotropic cells") {
  const double dx = 20e-9, dy = 12.5e-9, dz = 3e-9;
  const double tr = newell::Nxx(0, 0, 0, dx, dy, dz) +
                    newell::Nyy(0, 0, 0, dx, dy, dz) +
                    newell::Nzz(0, 0, 0, dx, dy, dz);
  CHECK(tr == Catch::Approx(1.0).epsilon(1e-10));
  // A flat cell demagnetizes mostly along its short axis.
  CHECK(newell::Nzz(0, 0, 0, dx, dy, dz) > newell::Nxx(0, 0, 0, dx, dy, dz));
}

TEST_CASE("interaction tensor is traceless away from the source cell") {
  const double dx = 4e-9, dy = 5e-9, dz = 3e-9;
  const int offsets[][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                            {1, 1, 0}, {2, 1, 3}, {-1, 2, -2}};
  for (const auto& o : offsets) {
    const double X = o[0] * dx, Y = o[1] * dy, Z = o[2] * dz;
    const double tr = newell::Nxx(X, Y, Z, dx, dy, dz) +
                      newell::Nyy(X, Y, Z, dx, dy, dz) +
                      newell::Nzz(X, Y, Z, dx, dy, dz);
    CHECK(std::fabs(tr) < 1e-10);
  }
}

TEST_CASE("tensor entries have the right parities in the displacement") {
  const double dx = 4e-9, dy = 5e-9, dz = 3e-9;
  const double X = 3 * dx, Y = 2 * dy, Z = 4 * dz;
  CHECK(newell::Nxx(-X, Y, Z, dx, dy, dz) ==
        Catch::Approx(newell::Nxx(X, Y, Z, dx, dy, dz)).epsilon(1e-12));
  CHECK(newell::Nxy(-X, Y, Z, dx, dy, dz) ==
        Catch::Approx(-newell::Nxy(X, Y, Z, dx, dy, dz)).epsilon(1e-12));
  CHECK(newell::Nxy(X, -Y, Z, dx, dy, dz) ==
        Catch::Approx(-newell::Nxy(X, Y, Z, dx, dy, dz)).epsilon(1e-12));
  CHECK(newell::Nxy(X, Y, -Z, dx, dy, dz) ==
        Catch::Approx(newell::Nxy(X, Y, Z, dx, dy, dz)).epsilon(1e-12));
  CHECK(newell::Nxz(X, Y, -Z, dx, dy, dz) ==
        Catch::Approx(-newell::Nxz(X, Y, Z, dx, dy, dz)).epsilon(1e-12));
  CHECK(newell::Nyz(-X, Y, Z, dx, dy, dz) ==
        Catch::Approx(newell::Nyz(X, Y, Z, dx, dy, dz)).epsilon(1e-12));
}

TEST_CASE("far cells interact like point dipoles") {
  // At separations large against the cell size the cell-averaged tensor
  // approaches V/(4 pi) (I - 3 rhat rhat^T) / |r|^3.
  const double d = 5e-9;
  const double V = d * d * d;
  const int seps[][3] = {{12, 0, 0}, {0, 14, 0}, {8, 8, 8}, {10, -6, 7}};
  for (const auto& s : seps) {
    const double X = s[0] * d, Y = s[1] * d, Z = s[2] * d;
    const double r2 = X * X + Y * Y + Z * Z;
    const double r = std::sqrt(r2), r5 = r2 * r2 * r;
    const double pref = V / (4.0 * M_PI * r5);
    const double exact[6] = {pref * (r2 - 3 * X * X), pref * (r2 - 3 * Y * Y),
                             pref * (r2 - 3 * Z * Z), pref * (-3 * X * Y),
                             pref * (-3 * X * Z),     pref * (-3 * Y * Z)};
    const double got[6] = {
        newell::Nxx(X, Y, Z, d, d, d), newell::Nyy(X, Y, Z, d, d, d),
        newell::Nzz(X, Y, Z, d, d, d), newell::Nxy(X, Y, Z, d, d, d),
        newell::Nxz(X, Y, Z, d, d, d), newell::Nyz(X, Y, Z, d, d, d)};
    const double scale = V / (4.0 * M_PI * r2 * r);
    for (int e = 0; e < 6; ++e)
      CHECK(std::fabs(got[e] - exact[e]) < 0.01 * scale);
  }
}

TEST_CASE("single cube cell sees minus one third of its own moment") {
  Grid g(1, 1, 1, 5e-9, 5e-9, 5e-9);
  VectorField m(g);
  m.set(0, 0.3, -0.4, 0.5);
  DemagKernel k(g);
  VectorField h = k.apply(m);
  CHECK(h[0][0] == Catch::Approx(-0.1).epsilon(1e-10));
  CHECK(h[1][0] == Catch::Approx(0.4 / 3.0).epsilon(1e-10));
  CHECK(h[2][0] == Catch::Approx(-0.5 / 3.0).epsilon(1e-10));
}

TEST_CASE("FFT convolution matches the direct pair sum") {
  struct Case {
    int nx, ny, nz;
    double hx, hy, hz;
  };
  const Case cases[] = {
      {8, 8, 4, 5e-9, 5e-9, 5e-9},    // even dims, cubic cells
      {5, 3, 2, 4e-9, 6e-9, 3e-9},    // odd dims, anisotropic cells
      {6, 5, 1, 20e-9, 20e-9, 8e-9},  // singleton z (thin film path)
      {1, 1, 8, 3e-9, 3e-9, 5e-9},    // two singleton axes
      {2, 2, 2, 1e-6, 1e-6, 1e-6},    // micron-scale cells
  };
  unsigned seed = 11;
  for (const auto& cs : cases) {
    Grid g(cs.nx, cs.ny, cs.nz, cs.hx, cs.hy, cs.hz);
    VectorField m = random_field(g, seed++);
    VectorField h_fft = apply_demag(build_kernel(g), m);
    VectorField h_dir = apply_demag_direct(m);
    CAPTURE(cs.nx, cs.ny, cs.nz);
    CHECK(max_abs_diff(h_fft, h_dir) < 1e-10);
  }
}

TEST_CASE("stray-field operator is linear") {
  Grid g(6, 4, 2, 5e-9, 5e-9, 5e-9);
  DemagKernel k(g);
  VectorField u = random_field(g, 5);
  VectorField v = random_field(g, 6);
  VectorField lhs = k.apply(lin_comb(u, -2.5, v));
  VectorField rhs = lin_comb(k.apply(u), -2.5, k.apply(v));
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("stray-field operator is self-adjoint and dissipative") {
  Grid g(6, 4, 3, 4e-9, 5e-9, 3e-9);
  DemagKernel k(g);
  VectorField u = random_field(g, 21);
  VectorField v = random_field(g, 22);
  VectorField hu = k.apply(u);
  VectorField hv = k.apply(v);
  const double uv = inner_product_h(hu, v);
  const double vu = inner_product_h(hv, u);
  CHECK(uv == Catch::Approx(vu).epsilon(1e-10));
  // (N u, u) >= 0, i.e. the field h = -N u does negative work against u.
  CHECK(inner_product_h(hu, u) <= 1e-12 * inner_product_h(u, u));
}

TEST_CASE("result does not depend on the grid origin") {
  Grid g0(5, 4, 2, 5e-9, 5e-9, 5e-9);
  Grid g1(5, 4, 2, 5e-9, 5e-9, 5e-9, {1e-6, -2e-6, 3e-6});
  VectorField m0 = random_field(g0, 33);
  VectorField m1(g1);
  for (int c = 0; c < 3; ++c) m1[c].values = m0[c].values;
  VectorField h0 = apply_demag(build_kernel(g0), m0);
  VectorField h1 = apply_demag(build_kernel(g1), m1);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < h0.cells(); ++i)
      CHECK(h0[c][i] == Catch::Approx(h1[c][i]).margin(1e-15));
}

TEST_CASE("thin film magnetized out of plane is strongly penalized") {
  Grid g(40, 20, 1, 20e-9, 20e-9, 20e-9);
  VectorField m(g);
  for (std::size_t c = 0; c < m.cells(); ++c) m.set(c, 0.0, 0.0, 1.0);
  VectorField h = apply_demag(build_kernel(g), m);
  const std::size_t center = g.index(20, 10, 0);
  // Near the film center the demag factor along the normal approaches 1.
  CHECK(h[2][center] < -0.9);
  CHECK(h[2][center] > -1.0);
  CHECK(std::fabs(h[0][center]) < 0.05);
  CHECK(std::fabs(h[1][center]) < 0.05);
  // In-plane magnetization costs far less stray-field energy.
  VectorField mip(g);
  for (std::size_t c = 0; c < mip.cells(); ++c) mip.set(c, 1.0, 0.0, 0.0);
  VectorField hip = apply_demag(build_kernel(g), mip);
  CHECK(std::fabs(hip[0][center]) < 0.05);
}
