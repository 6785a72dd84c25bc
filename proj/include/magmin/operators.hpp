#pragma once

#include "magmin/field.hpp"

namespace magmin {

/// Seven-point Laplacian with homogeneous Neumann closure.
///
/// Ghost cells mirror the boundary cell, so the boundary difference in each
/// axis degenerates to (u_neighbor - u_boundary)/h^2. The operator is
/// symmetric and negative semidefinite in (.,.)_h, and annihilates constants.
[[nodiscard]] ScalarField laplacian(const ScalarField& u);

/// Component-wise Laplacian of a vector field.
[[nodiscard]] VectorField laplacian_vec(const VectorField& u);

}  // namespace magmin
