#pragma once

#include "axihelm/expr.hpp"
#include "axihelm/oneform.hpp"

namespace axihelm {

// Operators of the stationary axially symmetric Schrodinger/Helmholtz equation
//   (d^2/dr^2 + (1/r) d/dr + d^2/dz^2 - u) Y = 0
// together with the substitution Y = P e^h that brings it to Fokker-Planck
// form and the conservation-law pair defining the nonlocal variable Q.

/// Potential u, Fokker-Planck exponent h, and the distinguished solution
/// Y_h = (1/r) e^{-h}. Invariants (u = potentialFromH(h), Y_h solves the
/// equation) are sampled identities checked by the verify module.
struct PotentialContext {
  Expr u;
  Expr h;
  Expr yh;
};

/// Fokker-Planck density P and its nonlocal partner Q.
struct PQPair {
  Expr p;
  Expr q;
};

/// y_rr + y_r/r + y_zz
Expr laplacianCyl(const Expr& y);

/// Term list {y_rr, y_r/r, y_zz, -u*y}; its sum is the equation residual and
/// the term magnitudes provide the scale normalization.
ExprTerms schrodingerResidualTerms(const Expr& u, const Expr& y);
Expr schrodingerResidual(const Expr& u, const Expr& y);

/// Terms of -h_rr + h_r^2 + h_r/r + 1/r^2 - h_zz + h_z^2 (the potential
/// reproduced by the exponent h).
ExprTerms potentialFromHTerms(const Expr& h);
Expr potentialFromH(const Expr& h);

/// h = -ln(r f) for a nonzero solution f; potentialFromH then recovers the
/// potential that f solves.
Expr hFromSolution(const Expr& f);

/// Context (u, -ln(r f), (1/r) e^{ln(r f)} ) built from a solution f of u.
PotentialContext contextFromSolution(const Expr& u, const Expr& f);

/// The closed one-form dQ = A dr + B dz of the conservation-law pair:
///   A = Q_r = -e^{-h} (y_z + h_z y),  B = Q_z = e^{-h} (y_r + h_r y + y/r).
OneForm qForms(const Expr& h, const Expr& y);

/// Residual terms of the conservation-law pair written in (P, Q) variables:
///   eq A: P_r + 2 h_r P + P/r - Q_z
///   eq B: P_z + 2 h_z P + Q_r
ExprTerms pqResidualA(const Expr& h, const Expr& p, const Expr& q);
ExprTerms pqResidualB(const Expr& h, const Expr& p, const Expr& q);

/// Exponent of the zero-potential context built from f = 1/sqrt(r^2+z^2):
/// -ln(r) + (1/2) ln(r^2+z^2).
Expr h0();

}  // namespace axihelm
