#pragma once

namespace magmin::newell {

/// Antiderivative used by the diagonal demag tensor entries. Even in each
/// argument; degenerate logarithm/arctangent terms have vanishing
/// coefficients and are skipped.
[[nodiscard]] double f(double x, double y, double z);

/// Antiderivative used by the off-diagonal entries. Odd in x and y, even in z.
[[nodiscard]] double g(double x, double y, double z);

/// Cell-averaged demagnetizing tensor entries between two equal rectangular
/// cells of size (dx,dy,dz) whose centers are separated by (X,Y,Z). Each
/// entry is a 27-point triple second difference of f or g divided by
/// 4 pi dx dy dz. Dimensionless and invariant under uniform rescaling of all
/// six lengths; inputs are normalized by the longest cell edge internally.
[[nodiscard]] double Nxx(double X, double Y, double Z, double dx, double dy, double dz);
[[nodiscard]] double Nyy(double X, double Y, double Z, double dx, double dy, double dz);
[[nodiscard]] double Nzz(double X, double Y, double Z, double dx, double dy, double dz);
[[nodiscard]] double Nxy(double X, double Y, double Z, double dx, double dy, double dz);
[[nodiscard]] double Nxz(double X, double Y, double Z, double dx, double dy, double dz);
[[nodiscard]] double Nyz(double X, double Y, double Z, double dx, double dy, double dz);

}  // namespace magmin::newell
