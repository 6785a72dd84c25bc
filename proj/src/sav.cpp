#include "magmin/sav.hpp"

#include <cmath>
#include <sstream>

namespace magmin {

namespace {

void check_dt(const SpectralOperatorA& A, double dt) {
  if (A.dt() != dt)
    throw Error("step dt does not match the prebuilt implicit operator");
}

bool degenerate_sav(double em, const Grid& g) {
  return em / g.domain_volume() < kEpsSav;
}

void add_zeeman(VectorField& F, const MaterialParams& p, double dt_eff) {
  for (int d = 0; d < 3; ++d) {
    if (p.h_e[d] == 0.0) continue;
    const double add = dt_eff * p.h_e[d];
    for (double& v : F[d].values) v += add;
  }
}

/// Shared path of the two variants: intermediate solve, projection, stray
/// field refresh. The auxiliary update differs per variant.
SavState advance(const SavState& s, const SpectralOperatorA& A,
                 const DemagKernel& kernel, const MaterialParams& p, double dt,
                 SavStepDiagnostics* diag, bool by_definition) {
  check_dt(A, dt);
  const double em = magnetostatic_energy(s.h_m, s.m.vec());
  const bool degen = degenerate_sav(em, s.m.grid());
  VectorField m_star;
  if (degen) {
    VectorField F = s.m.vec();
    add_zeeman(F, p, A.dt_eff());
    m_star = A.solve(F);
  } else {
    m_star = sav_substep(s, A, p, dt).m_star;
  }
  const double scale = std::sqrt(em);
  if (diag) {
    diag->modified_before = modified_energy(s.m.vec(), s.r, p);
    diag->r_star =
        degen ? s.r
              : s.r - inner_product_h(s.h_m, lin_comb(m_star, -1.0, s.m.vec())) /
                          (2.0 * scale);
    diag->modified_star = modified_energy(m_star, diag->r_star, p);
  }
  SavState out;
  out.m = project_unit(m_star);
  out.t = s.t + dt;
  out.h_m = kernel.apply(out.m.vec());
  if (by_definition) {
    out.r = aux_var_from_state(out.m.vec(), out.h_m);
  } else if (degen) {
    out.r = s.r;
  } else {
    const double d =
        inner_product_h(s.h_m, lin_comb(out.m.vec(), -1.0, s.m.vec()));
    const double r1 = s.r - d / (2.0 * scale);
    if (r1 < -1e-10) {
      std::ostringstream msg;
      msg << "auxiliary variable " << r1 << " below admissible band";
      throw NegativeAux(msg.str());
    }
    out.r = std::max(r1, 0.0);
  }
  return out;
}

}  // namespace

SavState make_sav_state(Magnetization m, const DemagKernel& kernel, double t) {
  SavState s;
  s.h_m = kernel.apply(m.vec());
  s.r = aux_var_from_state(m.vec(), s.h_m);
  s.m = std::move(m);
  s.t = t;
  return s;
}

SavSubstepResult sav_substep(const SavState& s, const SpectralOperatorA& A,
                             const MaterialParams& p, double dt) {
  check_dt(A, dt);
  const double em = magnetostatic_energy(s.h_m, s.m.vec());
  if (degenerate_sav(em, s.m.grid())) {
    std::ostringstream msg;
    msg << "magnetostatic energy density " << em / s.m.grid().domain_volume()
        << " too small for the auxiliary-variable coupling";
    throw DegenerateSav(msg.str());
  }
  const double scale = std::sqrt(em);
  const double hm_m = -2.0 * em;  // (h_m, m)_h
  const double dt_eff = A.dt_eff();

  VectorField F = lin_comb(s.m.vec(), dt_eff * (s.r / scale - 1.0), s.h_m);
  add_zeeman(F, p, dt_eff);
  const VectorField x = A.solve(F);
  const VectorField y = A.solve(s.h_m);

  const double denom = 1.0 - dt_eff * inner_product_h(y, s.h_m) / hm_m;
  if (std::abs(denom) < 1e-14)
    throw SingularScalarSolve("scalar elimination denominator vanished");
  SavSubstepResult res;
  res.ip = inner_product_h(x, s.h_m) / denom;
  res.m_star = lin_comb(x, dt_eff * res.ip / hm_m, y);
  return res;
}

double reconstruct_intermediate_aux(const SavState& s,
                                    const VectorField& m_star) {
  const double em = magnetostatic_energy(s.h_m, s.m.vec());
  if (degenerate_sav(em, s.m.grid())) return s.r;
  const double scale = std::sqrt(em);
  return s.r - inner_product_h(s.h_m, lin_comb(m_star, -1.0, s.m.vec())) /
                   (2.0 * scale);
}

SavState sav1_step(const SavState& s, const SpectralOperatorA& A,
                   const DemagKernel& kernel, const MaterialParams& p,
                   double dt, SavStepDiagnostics* diag) {
  return advance(s, A, kernel, p, dt, diag, /*by_definition=*/false);
}

SavState sav2_step(const SavState& s, const SpectralOperatorA& A,
                   const DemagKernel& kernel, const MaterialParams& p,
                   double dt, SavStepDiagnostics* diag) {
  return advance(s, A, kernel, p, dt, diag, /*by_definition=*/true);
}

}  // namespace magmin
