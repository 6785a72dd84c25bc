#include "magmin/baselines.hpp"

#include <cmath>
#include <limits>

namespace magmin {

namespace {

double rms_h(const VectorField& a, const VectorField& b) {
  return norm_h(lin_comb(a, -1.0, b)) / std::sqrt(a.grid().domain_volume());
}

/// One sweep of the cell-local update
///   delta = -(m0 + theta delta) x (c - alpha delta),  c = dtau h_stage,
/// which is linear in delta: (I - [alpha m0 + theta c]x) delta = -m0 x c.
VectorField llg_local_sweep(const VectorField& m0, const VectorField& h_stage,
                            double dtau, double alpha, double theta) {
  VectorField out(m0.grid());
  const std::size_t n = m0.cells();
  for (std::size_t c = 0; c < n; ++c) {
    const std::array<double, 3> m = m0.at(c);
    const std::array<double, 3> h = h_stage.at(c);
    const std::array<double, 3> cv = {dtau * h[0], dtau * h[1], dtau * h[2]};
    const std::array<double, 3> u = {alpha * m[0] + theta * cv[0],
                                     alpha * m[1] + theta * cv[1],
                                     alpha * m[2] + theta * cv[2]};
    const std::array<double, 3> b = {-(m[1] * cv[2] - m[2] * cv[1]),
                                     -(m[2] * cv[0] - m[0] * cv[2]),
                                     -(m[0] * cv[1] - m[1] * cv[0])};
    const std::array<double, 3> d = solve_cross_system(u, b);
    out.set(c, m[0] + d[0], m[1] + d[1], m[2] + d[2]);
  }
  return out;
}

/// Shared fixed-point loop for the midpoint (theta = 1/2) and backward
/// Euler (theta = 1) steppers. The stage field is re-evaluated from the
/// current iterate each sweep; the first sweep reuses the caller's stray
/// field of m^n.
Magnetization llg_fixed_point(const Magnetization& m, const DemagKernel& kernel,
                              const VectorField& h_m_n, const MaterialParams& p,
                              double dt, const IterativeSolveConfig& cfg,
                              double theta, double norm_check) {
  const double dtau = p.gamma * p.Ms * dt;
  const VectorField h_n = effective_field(m.vec(), h_m_n, p);
  VectorField iterate = m.vec();
  for (int it = 0; it < cfg.max_iters; ++it) {
    // Stage field at the current iterate; the first sweep starts from m^n,
    // where midpoint average and implicit endpoint both reduce to h_n.
    VectorField h_stage;
    if (it == 0) {
      h_stage = h_n;
    } else {
      h_stage = effective_field(iterate, kernel.apply(iterate), p);
      if (theta == 0.5) {
        add_scaled(h_stage, 1.0, h_n);
        for (int d = 0; d < 3; ++d)
          for (double& v : h_stage[d].values) v *= 0.5;
      }
    }
    VectorField next = llg_local_sweep(m.vec(), h_stage, dtau, p.alpha, theta);
    const double diff = rms_h(next, iterate);
    iterate = std::move(next);
    if (diff < cfg.tolerance)
      return Magnetization::assume_unit(std::move(iterate), norm_check);
  }
  throw NoConvergence("fixed-point sweeps exhausted in the implicit stepper");
}

}  // namespace

std::array<double, 3> solve_cross_system(const std::array<double, 3>& u,
                                         const std::array<double, 3>& b) {
  // Rows of I - [u]x.
  double A[3][4] = {{1.0, u[2], -u[1], b[0]},
                    {-u[2], 1.0, u[0], b[1]},
                    {u[1], -u[0], 1.0, b[2]}};
  double det = 1.0;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
    if (piv != col) {
      for (int k = col; k < 4; ++k) std::swap(A[col][k], A[piv][k]);
      det = -det;
    }
    det *= A[col][col];
    if (std::abs(A[col][col]) < 1e-300)
      throw SingularCellSystem("pivot vanished in cell system");
    for (int row = col + 1; row < 3; ++row) {
      const double fac = A[row][col] / A[col][col];
      for (int k = col; k < 4; ++k) A[row][k] -= fac * A[col][k];
    }
  }
  if (std::abs(det) < 1e-14)
    throw SingularCellSystem("cell system determinant below tolerance");
  std::array<double, 3> x{};
  for (int row = 2; row >= 0; --row) {
    double s = A[row][3];
    for (int k = row + 1; k < 3; ++k) s -= A[row][k] * x[k];
    x[row] = s / A[row][row];
  }
  return x;
}

Magnetization fep_step(const Magnetization& m, const VectorField& h_m_n,
                       const MaterialParams& p, double dt) {
  const double dt_eff = dt / p.eta();
  const VectorField h = effective_field(m.vec(), h_m_n, p);
  return project_unit(lin_comb(m.vec(), dt_eff, h));
}

Magnetization fep_step(const Magnetization& m, const DemagKernel& kernel,
                       const MaterialParams& p, double dt) {
  return fep_step(m, kernel.apply(m.vec()), p, dt);
}

Magnetization bep_step(const Magnetization& m, const SpectralOperatorA& A,
                       const DemagKernel& kernel, const VectorField& h_m_n,
                       const MaterialParams& p, double dt,
                       const IterativeSolveConfig& cfg) {
  if (A.dt() != dt)
    throw Error("step dt does not match the prebuilt implicit operator");
  const double dt_eff = A.dt_eff();
  VectorField iterate = m.vec();
  const VectorField* h = &h_m_n;
  VectorField h_cur;
  for (int it = 0; it < cfg.max_iters; ++it) {
    VectorField rhs = lin_comb(m.vec(), dt_eff, *h);
    for (int d = 0; d < 3; ++d) {
      if (p.h_e[d] == 0.0) continue;
      const double add = dt_eff * p.h_e[d];
      for (double& v : rhs[d].values) v += add;
    }
    VectorField next = A.solve(rhs);
    const double diff = rms_h(next, iterate);
    iterate = std::move(next);
    if (diff < cfg.tolerance) return project_unit(iterate);
    h_cur = kernel.apply(iterate);
    h = &h_cur;
  }
  throw NoConvergence("stray-field iteration exhausted in the implicit step");
}

Magnetization bep_step(const Magnetization& m, const SpectralOperatorA& A,
                       const DemagKernel& kernel, const MaterialParams& p,
                       double dt, const IterativeSolveConfig& cfg) {
  return bep_step(m, A, kernel, kernel.apply(m.vec()), p, dt, cfg);
}

Magnetization llg_midpoint_step(const Magnetization& m,
                                const DemagKernel& kernel,
                                const VectorField& h_m_n,
                                const MaterialParams& p, double dt,
                                const IterativeSolveConfig& cfg) {
  // The midpoint local solve conserves each cell norm identically, so only
  // rounding drift can accumulate; 1e-8 is the monitored budget.
  return llg_fixed_point(m, kernel, h_m_n, p, dt, cfg, 0.5, 1e-8);
}

Magnetization llg_midpoint_step(const Magnetization& m,
                                const DemagKernel& kernel,
                                const MaterialParams& p, double dt,
                                const IterativeSolveConfig& cfg) {
  return llg_midpoint_step(m, kernel, kernel.apply(m.vec()), p, dt, cfg);
}

Magnetization llg_backward_euler_step(const Magnetization& m,
                                      const DemagKernel& kernel,
                                      const VectorField& h_m_n,
                                      const MaterialParams& p, double dt,
                                      const IterativeSolveConfig& cfg) {
  // Backward Euler shrinks cell norms by |delta|^2 per step and applies no
  // renormalization; the drift shows up in the trace norm column.
  return llg_fixed_point(m, kernel, h_m_n, p, dt, cfg, 1.0,
                         std::numeric_limits<double>::infinity());
}

Magnetization llg_backward_euler_step(const Magnetization& m,
                                      const DemagKernel& kernel,
                                      const MaterialParams& p, double dt,
                                      const IterativeSolveConfig& cfg) {
  return llg_backward_euler_step(m, kernel, kernel.apply(m.vec()), p, dt, cfg);
}

Magnetization llg_forward_euler_step(const Magnetization& m,
                                     const VectorField& h_m_n,
                                     const MaterialParams& p, double dt) {
  const double dtau = p.gamma * p.Ms * dt;
  const VectorField h = effective_field(m.vec(), h_m_n, p);
  VectorField next = llg_local_sweep(m.vec(), h, dtau, p.alpha, 0.0);
  // The update is orthogonal to m^n, so cell norms grow by |delta|^2 per
  // step; no renormalization is applied, the drift is only monitored.
  return Magnetization::assume_unit(std::move(next),
                                    std::numeric_limits<double>::infinity());
}

Magnetization llg_forward_euler_step(const Magnetization& m,
                                     const DemagKernel& kernel,
                                     const MaterialParams& p, double dt) {
  return llg_forward_euler_step(m, kernel.apply(m.vec()), p, dt);
}

}  // namespace magmin
