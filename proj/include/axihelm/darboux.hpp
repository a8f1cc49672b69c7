#pragma once

#include "axihelm/axisym.hpp"
#include "axihelm/quadrature.hpp"

namespace axihelm {

/// Coefficients of the general nonlocal Darboux operator, reproduced
/// symbolically from the pair (s, h):
///   V  = s + 2h + ln(r)
///   G  = s_r V_r + s_z V_z
///   H  = V_zz - s_rr
///   T  = V_rz + s_rz
///   R1 = (V_z - 2 s_z + (V_z H + V_r T)/G) / 2
///   R2 = (s_r + (s_r H - s_z T)/G) / 2
struct DarbouxCoeffs {
  Expr v;
  Expr g;
  Expr h;
  Expr t;
  Expr r1;
  Expr r2;
};

/// Parameters of the radial ansatz family. The resulting potential is bounded
/// and non-positive for C > 0, C1 >= 1; wider ranges are allowed but should be
/// singularity-scanned.
struct AnsatzParams {
  double C = 1.0;
  double C1 = 1.0;
  Params params() const { return Params{{"C", C}, {"C1", C1}}; }
};

/// V = s + 2h + ln(r); the transformation degenerates to the generalized
/// Moutard branch when V vanishes identically.
Expr vOf(const Expr& s, const Expr& h);

DarbouxCoeffs coeffs(const Expr& s, const Expr& h);

/// The two nonlinear compatibility equations for s, assembled symbolically as
/// term lists. They vanish (as sampled identities) iff s is admissible; the
/// library verifies candidates, it does not solve the system. `zPart` carries
/// the mixed/zz derivatives of s, `rPart` the rr/mixed ones.
struct SSystem {
  ExprTerms zPart;
  ExprTerms rPart;
};
SSystem sSystemResiduals(const Expr& s, const Expr& h);

/// The radial ansatz solution (rho2 = r^2 + z^2):
///   s0 = -ln(rho2)/2 + ln(rho2^C1 + C) - ln|(1-2 C1) rho2^C1 + (1+2 C1) C|.
/// The last logarithm's argument changes sign for C1 > 1/2; the absolute
/// value keeps evaluation defined on both sides of the zero circle.
Expr s0Family(const AnsatzParams& p);
Expr s0FamilyExpr();  ///< parametric in C, C1

/// Two-parameter solvable potential
///   -8 C C1^2 rho2^{C1-1} / (rho2^{C1} + C)^2.
Expr helmholtzPotential(const AnsatzParams& p);
Expr helmholtzPotentialExpr();  ///< parametric in C, C1

/// Closed one-form dQ for a zero-potential seed y (rho = sqrt(r^2+z^2)):
///   Q_z = (y_r + r y/rho^2) r/rho,  Q_r = -(y_z + z y/rho^2) r/rho.
/// Coincides with qForms(h0(), y).
OneForm qSeedForm(const Expr& y);

/// Solution of the transformed equation built from a seed y and a primitive q
/// of qSeedForm(y):
///   ytilde = y_z - ((1+2C1) rho2^C1 + C(1-2C1)) (z y - rho q)
///            / (2 rho2 (rho2^C1 + C)).
Expr darbouxSolution(const Expr& y, const Expr& q, const AnsatzParams& p);

/// General route via the operator coefficients:
///   ytilde = y_z + (R1 - h_z) y + e^h R2 q.
Expr darbouxSolutionGeneral(const Expr& y, const Expr& h, const Expr& s, const Expr& q);

/// Grid evaluation of darbouxSolution with the primitive supplied numerically;
/// flagged q-samples propagate to the output field.
Field darbouxSolutionField(const Expr& y, const Field& q, const AnsatzParams& p,
                           const Params& extra = {});

}  // namespace axihelm
