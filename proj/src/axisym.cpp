#include "axihelm/axisym.hpp"

namespace axihelm {

Expr laplacianCyl(const Expr& y) {
  Expr r = rvar();
  Expr yr = diff(y, Coord::R);
  return diff(yr, Coord::R) + yr / r + diff(diff(y, Coord::Z), Coord::Z);
}

ExprTerms schrodingerResidualTerms(const Expr& u, const Expr& y) {
  Expr r = rvar();
  Expr yr = diff(y, Coord::R);
  ExprTerms t;
  t.add(diff(yr, Coord::R));
  t.add(yr / r);
  t.add(diff(diff(y, Coord::Z), Coord::Z));
  t.add(-(u * y));
  return t;
}

Expr schrodingerResidual(const Expr& u, const Expr& y) {
  return schrodingerResidualTerms(u, y).sum();
}

ExprTerms potentialFromHTerms(const Expr& h) {
  Expr r = rvar();
  Expr hr = diff(h, Coord::R);
  Expr hz = diff(h, Coord::Z);
  ExprTerms t;
  t.add(-diff(hr, Coord::R));
  t.add(hr * hr);
  t.add(hr / r);
  t.add(num(1) / pow(r, num(2)));
  t.add(-diff(hz, Coord::Z));
  t.add(hz * hz);
  return t;
}

Expr potentialFromH(const Expr& h) { return potentialFromHTerms(h).sum(); }

Expr hFromSolution(const Expr& f) { return -ln(rvar() * f); }

PotentialContext contextFromSolution(const Expr& u, const Expr& f) {
  Expr h = hFromSolution(f);
  Expr yh = (num(1) / rvar()) * exp(-h);
  return {u, h, yh};
}

OneForm qForms(const Expr& h, const Expr& y) {
  Expr r = rvar();
  Expr eh = exp(-h);
  Expr hr = diff(h, Coord::R);
  Expr hz = diff(h, Coord::Z);
  Expr a = -(eh * (diff(y, Coord::Z) + hz * y));
  Expr b = eh * (diff(y, Coord::R) + hr * y + y / r);
  return {a, b};
}

ExprTerms pqResidualA(const Expr& h, const Expr& p, const Expr& q) {
  Expr r = rvar();
  ExprTerms t;
  t.add(diff(p, Coord::R));
  t.add(num(2) * diff(h, Coord::R) * p);
  t.add(p / r);
  t.add(-diff(q, Coord::Z));
  return t;
}

ExprTerms pqResidualB(const Expr& h, const Expr& p, const Expr& q) {
  ExprTerms t;
  t.add(diff(p, Coord::Z));
  t.add(num(2) * diff(h, Coord::Z) * p);
  t.add(diff(q, Coord::R));
  return t;
}

Expr h0() {
  Expr rho2 = pow(rvar(), num(2)) + pow(zvar(), num(2));
  return -ln(rvar()) + num(1, 2) * ln(rho2);
}

}  // namespace axihelm
