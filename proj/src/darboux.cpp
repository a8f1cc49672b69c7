#include "axihelm/darboux.hpp"

namespace axihelm {

namespace {

Expr rho2Expr() { return pow(rvar(), num(2)) + pow(zvar(), num(2)); }

Expr d(const Expr& e, Coord v) { return diff(e, v); }

}  // namespace

Expr vOf(const Expr& s, const Expr& h) { return s + num(2) * h + ln(rvar()); }

DarbouxCoeffs coeffs(const Expr& s, const Expr& h) {
  DarbouxCoeffs c;
  c.v = vOf(s, h);
  Expr sr = d(s, Coord::R), sz = d(s, Coord::Z);
  Expr vr = d(c.v, Coord::R), vz = d(c.v, Coord::Z);
  c.g = sr * vr + sz * vz;
  c.h = d(vz, Coord::Z) - d(sr, Coord::R);
  c.t = d(vr, Coord::Z) + d(sr, Coord::Z);
  c.r1 = (vz - num(2) * sz + (vz * c.h + vr * c.t) / c.g) / num(2);
  c.r2 = (sr + (sr * c.h - sz * c.t) / c.g) / num(2);
  return c;
}

SSystem sSystemResiduals(const Expr& s, const Expr& h) {
  DarbouxCoeffs c = coeffs(s, h);
  const Expr& V = c.v;
  const Expr& G = c.g;
  const Expr& H = c.h;
  const Expr& T = c.t;

  Expr sr = d(s, Coord::R), sz = d(s, Coord::Z);
  Expr srr = d(sr, Coord::R), srz = d(sr, Coord::Z), szz = d(sz, Coord::Z);
  Expr vr = d(V, Coord::R), vz = d(V, Coord::Z);
  Expr vrr = d(vr, Coord::R), vrz = d(vr, Coord::Z), vzz = d(vz, Coord::Z);
  Expr gr = d(G, Coord::R), gz = d(G, Coord::Z);
  Expr hr = d(H, Coord::R), hz = d(H, Coord::Z);
  Expr tr = d(T, Coord::R), tz = d(T, Coord::Z);
  Expr g2 = pow(G, num(2));

  SSystem sys;
  sys.zPart.add(G * (G + H) * srz)
      .add(-(G * T * szz))
      .add((-(gz * H) + (hz - vr * T) * G) * sr)
      .add((gz * T - (vz * T + tz) * G) * sz)
      .add(-((vz * H + vr * T) * gr))
      .add(vrz * g2)
      .add((vrz * H + vz * hr + vrr * T + vr * tr) * G);

  sys.rPart.add(G * (G + H) * srr)
      .add(-(G * T * srz))
      .add((-(gr * H) + vr * g2 + (hr + vr * H) * G) * sr)
      .add((gr * T + g2 * vz + (vz * H - tr) * G) * sz)
      .add((vz * H + vr * T) * gz)
      .add(-(vzz * g2))
      .add(-((vzz * H + vz * hz + vrz * T + vr * tz) * G));
  return sys;
}

Expr s0FamilyExpr() {
  Expr rho2 = rho2Expr();
  Expr C = param("C"), C1 = param("C1");
  Expr rc = pow(rho2, C1);
  return -(num(1, 2) * ln(rho2)) + ln(rc + C) -
         ln(abs((num(1) - num(2) * C1) * rc + (num(1) + num(2) * C1) * C));
}

Expr s0Family(const AnsatzParams& p) { return substitute(s0FamilyExpr(), p.params()); }

Expr helmholtzPotentialExpr() {
  Expr rho2 = rho2Expr();
  Expr C = param("C"), C1 = param("C1");
  return -(num(8) * C * pow(C1, num(2)) * pow(rho2, C1 - num(1))) /
         pow(pow(rho2, C1) + C, num(2));
}

Expr helmholtzPotential(const AnsatzParams& p) {
  return substitute(helmholtzPotentialExpr(), p.params());
}

OneForm qSeedForm(const Expr& y) {
  Expr r = rvar(), z = zvar();
  Expr rho2 = rho2Expr();
  Expr rho = sqrt(rho2);
  Expr qz = (d(y, Coord::R) + r * y / rho2) * (r / rho);
  Expr qr = -((d(y, Coord::Z) + z * y / rho2) * (r / rho));
  return {qr, qz};
}

namespace {

/// ((1+2 C1) rho2^C1 + C (1-2 C1)) / (2 rho2 (rho2^C1 + C)), the multiplier of
/// (z y - rho q) in the solution formula.
Expr solutionMultiplierExpr() {
  Expr rho2 = rho2Expr();
  Expr C = param("C"), C1 = param("C1");
  Expr rc = pow(rho2, C1);
  return ((num(1) + num(2) * C1) * rc + C * (num(1) - num(2) * C1)) /
         (num(2) * rho2 * (rc + C));
}

}  // namespace

Expr darbouxSolution(const Expr& y, const Expr& q, const AnsatzParams& p) {
  Expr z = zvar();
  Expr rho = sqrt(rho2Expr());
  Expr m = substitute(solutionMultiplierExpr(), p.params());
  return d(y, Coord::Z) - m * (z * y - rho * q);
}

Expr darbouxSolutionGeneral(const Expr& y, const Expr& h, const Expr& s, const Expr& q) {
  DarbouxCoeffs c = coeffs(s, h);
  return d(y, Coord::Z) + (c.r1 - d(h, Coord::Z)) * y + exp(h) * c.r2 * q;
}

Field darbouxSolutionField(const Expr& y, const Field& q, const AnsatzParams& p,
                           const Params& extra) {
  Params bind = p.params().merged(extra);
  Expr yz = d(y, Coord::Z);
  Expr m = substitute(solutionMultiplierExpr(), p.params());
  Expr rho = sqrt(rho2Expr());
  Field out(q.domain(), q.nR(), q.nZ(), q.anchor(), 0.0);
  for (int i = 0; i < q.nR(); ++i) {
    for (int j = 0; j < q.nZ(); ++j) {
      if (q.flagged(i, j)) {
        out.flag(i, j);
        continue;
      }
      Point pt{q.rAt(i), q.zAt(j)};
      try {
        double val = eval(yz, bind, pt) -
                     eval(m, bind, pt) * (pt.z * eval(y, bind, pt) - eval(rho, bind, pt) * q.value(i, j));
        out.setOffset(i, j, val);
      } catch (const EvalError&) {
        out.flag(i, j);
      }
    }
  }
  return out;
}

}  // namespace axihelm
