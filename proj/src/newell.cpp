#include "magmin/newell.hpp"

#include <algorithm>
#include <cmath>

namespace magmin::newell {

namespace {

constexpr double kPi = 3.14159265358979323846;

long double f_impl(long double x, long double y, long double z) {
  x = std::fabs(x);
  y = std::fabs(y);
  z = std::fabs(z);
  const long double x2 = x * x, y2 = y * y, z2 = z * z;
  const long double R = std::sqrt(x2 + y2 + z2);
  long double sum = (1.0L / 6.0L) * (2.0L * x2 - y2 - z2) * R;
  if (x2 + z2 > 0.0L)
    sum += 0.5L * y * (z2 - x2) * std::asinh(y / std::sqrt(x2 + z2));
  if (x2 + y2 > 0.0L)
    sum += 0.5L * z * (y2 - x2) * std::asinh(z / std::sqrt(x2 + y2));
  if (x > 0.0L && y > 0.0L && z > 0.0L)
    sum -= x * y * z * std::atan(y * z / (x * R));
  return sum;
}

long double g_impl(long double x, long double y, long double z) {
  long double sign = 1.0L;
  if (x < 0.0L) sign = -sign;
  if (y < 0.0L) sign = -sign;
  x = std::fabs(x);
  y = std::fabs(y);
  z = std::fabs(z);
  const long double x2 = x * x, y2 = y * y, z2 = z * z;
  const long double R = std::sqrt(x2 + y2 + z2);
  long double sum = -x * y * R / 3.0L;
  if (x2 + y2 > 0.0L && z > 0.0L)
    sum += x * y * z * std::asinh(z / std::sqrt(x2 + y2));
  if (y2 + z2 > 0.0L && x > 0.0L)
    sum += (y / 6.0L) * (3.0L * z2 - y2) * std::asinh(x / std::sqrt(y2 + z2));
  if (x2 + z2 > 0.0L && y > 0.0L)
    sum += (x / 6.0L) * (3.0L * z2 - x2) * std::asinh(y / std::sqrt(x2 + z2));
  if (z > 0.0L) {
    if (x > 0.0L && y > 0.0L)
      sum -= (z * z2 / 6.0L) * std::atan(x * y / (z * R));
    if (y > 0.0L) sum -= (z * y2 / 2.0L) * std::atan(x * z / (y * R));
    if (x > 0.0L) sum -= (z * x2 / 2.0L) * std::atan(y * z / (x * R));
  }
  return sign * sum;
}

/// 27-point triple second difference of F around (X,Y,Z) with per-axis
/// weights (-1, 2, -1), summed smallest-magnitude first to limit
/// cancellation error at large separations.
template <typename F>
long double second_difference(F&& func, long double X, long double Y,
                              long double Z, long double dx, long double dy,
                              long double dz) {
  static constexpr int off[3] = {-1, 0, 1};
  static constexpr long double w[3] = {-1.0L, 2.0L, -1.0L};
  long double terms[27];
  int n = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        terms[n++] = w[a] * w[b] * w[c] *
                     func(X + off[a] * dx, Y + off[b] * dy, Z + off[c] * dz);
  std::sort(terms, terms + 27, [](long double p, long double q) {
    return std::fabs(p) < std::fabs(q);
  });
  long double sum = 0.0L;
  for (int t = 0; t < 27; ++t) sum += terms[t];
  return sum;
}

template <typename F>
double entry(F&& func, double X, double Y, double Z, double dx, double dy,
             double dz) {
  // Entries are invariant under uniform rescaling; normalize by the longest
  // edge so the antiderivative arguments stay well conditioned.
  const long double s = 1.0L / std::max({dx, dy, dz});
  const long double val =
      second_difference(func, X * s, Y * s, Z * s, dx * s, dy * s, dz * s);
  return static_cast<double>(val /
                             (4.0L * kPi * (dx * s) * (dy * s) * (dz * s)));
}

}  // namespace

double f(double x, double y, double z) {
  return static_cast<double>(f_impl(x, y, z));
}

double g(double x, double y, double z) {
  return static_cast<double>(g_impl(x, y, z));
}

double Nxx(double X, double Y, double Z, double dx, double dy, double dz) {
  return entry(f_impl, X, Y, Z, dx, dy, dz);
}

double Nyy(double X, double Y, double Z, double dx, double dy, double dz) {
  return entry(f_impl, Y, X, Z, dy, dx, dz);
}

double Nzz(double X, double Y, double Z, double dx, double dy, double dz) {
  return entry(f_impl, Z, Y, X, dz, dy, dx);
}

double Nxy(double X, double Y, double Z, double dx, double dy, double dz) {
  return entry(g_impl, X, Y, Z, dx, dy, dz);
}

double Nxz(double X, double Y, double Z, double dx, double dy, double dz) {
  return entry(g_impl, X, Z, Y, dx, dz, dy);
}

double Nyz(double X, double Y, double Z, double dx, double dy, double dz) {
  return entry(g_impl, Y, Z, X, dy, dz, dx);
}

}  // namespace magmin::newell
