#include "axihelm/moutard.hpp"

namespace axihelm {

nlohmann::json TransformRecord::toJson() const {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& kv : parameters) params[kv.first] = kv.second;
  return {{"kind", kind},
          {"seed_potential", seedPotential},
          {"seed_solutions", seedSolutions},
          {"params", params},
          {"new_potential", newPotential},
          {"new_solutions", newSolutions}};
}

ExprTerms moutardPotentialFromHTerms(const Expr& u, const Expr& h) {
  Expr r = rvar();
  ExprTerms t;
  t.add(u);
  t.add(num(2) * diff(diff(h, Coord::R), Coord::R));
  t.add(num(2) * diff(diff(h, Coord::Z), Coord::Z));
  t.add(-(num(1) / pow(r, num(2))));
  return t;
}

Expr moutardPotentialFromH(const Expr& u, const Expr& h) {
  return moutardPotentialFromHTerms(u, h).sum();
}

Expr moutardPotential(const Expr& u, const Expr& yh) {
  Expr r = rvar();
  Expr lnyh = ln(yh);
  return u - num(2) * diff(diff(lnyh, Coord::R), Coord::R) -
         num(2) * diff(diff(lnyh, Coord::Z), Coord::Z) + num(1) / pow(r, num(2));
}

MoutardResult applyMoutard(const Expr& u, const Expr& yh) {
  MoutardResult out;
  out.newPotential = moutardPotential(u, yh);
  out.newYh = num(1) / (rvar() * yh);
  out.record.kind = "moutard";
  out.record.seedPotential = print(u);
  out.record.seedSolutions = {print(yh)};
  out.record.newPotential = print(out.newPotential);
  out.record.newSolutions = {print(out.newYh)};
  return out;
}

OneForm moutardSolutionForm(const Expr& y, const Expr& yh) {
  Expr r = rvar();
  Expr ratio = y / yh;
  Expr yh2 = pow(yh, num(2));
  Expr gr = -(r * yh2 * diff(ratio, Coord::Z));
  Expr gz = r * yh2 * diff(ratio, Coord::R);
  return {gr, gz};
}

OneForm superposeForm(const Expr& y1, const Expr& y2) {
  Expr r = rvar();
  Expr fr = -(r * (diff(y2, Coord::Z) * y1 - y2 * diff(y1, Coord::Z)));
  Expr fz = r * (diff(y2, Coord::R) * y1 - y2 * diff(y1, Coord::R));
  return {fr, fz};
}

ExprTerms superposePotentialTerms(const Expr& u, const Expr& y1, const Expr& y2, const Expr& f) {
  Expr r = rvar();
  Expr y1r = diff(y1, Coord::R);
  Expr y1z = diff(y1, Coord::Z);
  Expr y2r = diff(y2, Coord::R);
  Expr y2z = diff(y2, Coord::Z);
  Expr wr = y2r * y1 - y2 * y1r;
  Expr wz = y2z * y1 - y2 * y1z;
  ExprTerms t;
  t.add(u);
  t.add(num(2) * y2z * (num(2) * r * y1r + y1) / f);
  t.add(-(num(2) * y1z * (num(2) * r * y2r + y2) / f));
  t.add(num(2) * pow(r, num(2)) * pow(wr, num(2)) / pow(f, num(2)));
  t.add(num(2) * pow(r, num(2)) * pow(wz, num(2)) / pow(f, num(2)));
  return t;
}

SuperposeResult superposePotential(const Expr& u, const Expr& y1, const Expr& y2, const Expr& f) {
  SuperposeResult out;
  out.newPotential = superposePotentialTerms(u, y1, y2, f).sum();
  out.fForm = superposeForm(y1, y2);
  out.fClosed = f;
  out.sol1 = y1 / f;
  out.sol2 = y2 / f;
  out.record.kind = "superpose";
  out.record.seedPotential = print(u);
  out.record.seedSolutions = {print(y1), print(y2)};
  out.record.newPotential = print(out.newPotential);
  out.record.newSolutions = {print(out.sol1), print(out.sol2)};
  return out;
}

Expr superposePotentialLogForm(const Expr& u, const Expr& f) {
  Expr lnf = ln(abs(f));
  return u - num(2) * diff(diff(lnf, Coord::R), Coord::R) -
         num(2) * diff(diff(lnf, Coord::Z), Coord::Z);
}

ResidualReport swapCheck(const Expr& u, const Expr& y1, const Expr& y2, const Expr& f,
                         const Params& p, const Domain& domain, const IdentityOptions& opt) {
  Expr direct = superposePotentialTerms(u, y1, y2, f).sum();
  Expr swapped = superposePotentialTerms(u, y2, y1, -f).sum();
  return differenceReport("swap_check", direct, swapped, p, domain, opt);
}

}  // namespace axihelm
