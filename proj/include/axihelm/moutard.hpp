#pragma once

#include <optional>
#include <string>
#include <vector>

#include "axihelm/axisym.hpp"
#include "axihelm/verify.hpp"

namespace axihelm {

/// Provenance chain of a transformation.
struct TransformRecord {
  std::string kind;                       // "moutard", "superpose", "darboux"
  std::string seedPotential;              // printed expressions
  std::vector<std::string> seedSolutions;
  std::vector<std::pair<std::string, double>> parameters;
  std::string newPotential;
  std::vector<std::string> newSolutions;
  nlohmann::json toJson() const;
};

struct MoutardResult {
  Expr newPotential;
  Expr newYh;  ///< (r Y_h)^{-1}, the distinguished solution of the new equation
  TransformRecord record;
};

struct SuperposeResult {
  Expr newPotential;
  OneForm fForm;                 ///< dF of the pair
  std::optional<Expr> fClosed;   ///< closed-form F when known
  Expr sol1;                     ///< Y_1 / F
  Expr sol2;                     ///< Y_2 / F
  TransformRecord record;
};

/// u + 2 h_rr + 2 h_zz - 1/r^2 (new potential from the exponent).
Expr moutardPotentialFromH(const Expr& u, const Expr& h);
ExprTerms moutardPotentialFromHTerms(const Expr& u, const Expr& h);

/// u - 2 d^2/dr^2 ln(yh) - 2 d^2/dz^2 ln(yh) + 1/r^2. The log derivatives are
/// formed symbolically, so only ratios of yh and its derivatives are ever
/// evaluated; the sign of yh does not matter.
Expr moutardPotential(const Expr& u, const Expr& yh);

/// Full transformation: new potential plus the distinguished solution
/// (r yh)^{-1} of the transformed equation.
MoutardResult applyMoutard(const Expr& u, const Expr& yh);

/// Exact one-form for G = r Y_h Ytilde:
///   G_r = -r yh^2 d/dz(y/yh),  G_z = r yh^2 d/dr(y/yh);
/// the transformed solution is recovered as Ytilde = G / (r yh).
OneForm moutardSolutionForm(const Expr& y, const Expr& yh);

/// The F system of the twofold superposition:
///   F_r = -r (y2_z y1 - y2 y1_z),  F_z = r (y2_r y1 - y2 y1_r).
OneForm superposeForm(const Expr& y1, const Expr& y2);

/// Terms of the expanded superposed potential (no logarithms, so the sign of
/// f is irrelevant): u + 2 y2_z (2 r y1_r + y1)/f - 2 y1_z (2 r y2_r + y2)/f
/// + 2 r^2 (y2_r y1 - y2 y1_r)^2/f^2 + 2 r^2 (y2_z y1 - y2 y1_z)^2/f^2.
ExprTerms superposePotentialTerms(const Expr& u, const Expr& y1, const Expr& y2, const Expr& f);

/// Twofold superposition with a caller-supplied primitive f of
/// superposeForm(y1, y2) (typically containing the gauge constant K).
SuperposeResult superposePotential(const Expr& u, const Expr& y1, const Expr& y2, const Expr& f);

/// u - 2 d^2/dr^2 ln|f| - 2 d^2/dz^2 ln|f|; cross-check route for the
/// expanded form, valid wherever f != 0.
Expr superposePotentialLogForm(const Expr& u, const Expr& f);

/// Pointwise difference between the (y1, y2, f) and (y2, y1, -f) transforms;
/// zero to rounding by the commutativity of the transformation.
ResidualReport swapCheck(const Expr& u, const Expr& y1, const Expr& y2, const Expr& f,
                         const Params& p, const Domain& domain, const IdentityOptions& opt = {});

}  // namespace axihelm
