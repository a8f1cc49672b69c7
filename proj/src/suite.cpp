#include "axihelm/suite.hpp"

#include <cmath>
#include <sstream>

#include "axihelm/axisym.hpp"
#include "axihelm/catalog.hpp"
#include "axihelm/darboux.hpp"
#include "axihelm/moutard.hpp"
#include "axihelm/verify.hpp"

namespace axihelm {

namespace {

constexpr double kNegativeControlFloor = 1e-4;

std::string paramLabel(const Params& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& kv : p.entries()) {
    os << (first ? "[" : ",") << kv.first << "=" << kv.second;
    first = false;
  }
  if (!first) os << "]";
  return os.str();
}

struct SuiteBuilder {
  const SuiteOptions& opt;
  std::vector<CheckResult> results;
  const Catalog& cat = Catalog::builtin();

  IdentityOptions identityOpts(double tolerance) const {
    IdentityOptions io;
    io.nPoints = opt.nPoints;
    io.seed = opt.seed;
    io.tolerance = tolerance;
    return io;
  }

  void push(const std::string& name, const ResidualReport& rep, bool expectFail = false) {
    CheckResult c;
    c.name = name;
    c.nonFiniteBlowup = rep.nonFiniteCount > 0;
    c.pass = expectFail
                 ? (rep.nonFiniteCount == 0 && rep.maxScaledResidual > kNegativeControlFloor)
                 : rep.pass();
    c.detail = rep.toJson();
    if (expectFail) c.detail["negative_control"] = true;
    results.push_back(std::move(c));
  }

  void pushScan(const std::string& name, const ScanReport& rep, bool pass) {
    CheckResult c;
    c.name = name;
    c.pass = pass;
    c.nonFiniteBlowup = false;  // non-finite nodes are scan findings, not failures
    c.detail = rep.toJson();
    results.push_back(std::move(c));
  }

  void identity(const std::string& name, const ExprTerms& terms, const Params& p,
                IdentityOptions io, bool expectFail = false) {
    push(name, identityReport(name, terms, p, opt.domain, io), expectFail);
  }

  // --- individual check groups -------------------------------------------

  void seedChecks() {
    auto seeds = cat.seeds();
    for (size_t i = 0; i < seeds.size(); ++i) {
      push("seed." + std::to_string(i + 1) + " solves the flat equation",
           residualReport(num(0), seeds[i], {}, opt.domain, opt.nPoints, opt.seed,
                          opt.tolerance));
    }
    // Negative control: r is harmonic in the plane but not in these coordinates.
    push("control: y=r does not solve the flat equation",
         residualReport(num(0), rvar(), {}, opt.domain, opt.nPoints, opt.seed, opt.tolerance),
         /*expectFail=*/true);
  }

  void exponentChecks() {
    Expr h = cat.h0Expr();
    identity("h0 reproduces the zero potential", potentialFromHTerms(h), {},
             identityOpts(opt.tolerance));
    ExprTerms viaSeed;
    viaSeed.add(hFromSolution(cat.at("seed.5").expr)).add(-h);
    identity("h0 equals the exponent built from seed.5", viaSeed, {},
             identityOpts(opt.tolerance));
    push("distinguished solution of h0 solves the flat equation",
         residualReport(num(0), (num(1) / rvar()) * exp(-h), {}, opt.domain, opt.nPoints,
                        opt.seed, opt.tolerance));
  }

  void ytildeChecks() {
    Expr family = cat.potentialFamilyExpr();
    for (double C : {0.5, 1.0, 2.0}) {
      for (double C1 : {1.0, 1.5, 2.0}) {
        Params p{{"C", C}, {"C1", C1}};
        for (int i = 1; i <= 6; ++i) {
          push("ytilde." + std::to_string(i) + " vs potential.family" + paramLabel(p),
               residualReport(family, cat.ytildeExpr(i), p, opt.domain, opt.nPoints, opt.seed,
                              opt.tolerance));
        }
      }
    }
    // Negative control: the right solution against the wrong family member.
    Params wrong{{"C", 2.0}, {"C1", 1.0}};
    push("control: ytilde.1 (C=1) vs potential.family (C=2)",
         residualReport(substitute(cat.potentialFamilyExpr(), wrong),
                        cat.ytilde(1, AnsatzParams{1.0, 1.0}), {}, opt.domain, opt.nPoints,
                        opt.seed, opt.tolerance),
         /*expectFail=*/true);
  }

  Expr s0GuardExpr() const {
    // Zero circle of the last logarithm in s0.
    Expr rho2 = pow(rvar(), num(2)) + pow(zvar(), num(2));
    Expr C = param("C"), C1 = param("C1");
    return (num(1) - num(2) * C1) * pow(rho2, C1) + (num(1) + num(2) * C1) * C;
  }

  void potentialIdentityChain() {
    Expr h = cat.h0Expr();
    Expr s0 = cat.s0Expr();
    Expr family = cat.potentialFamilyExpr();
    for (double C : {0.5, 1.0, 2.0}) {
      for (double C1 : {1.0, 1.5, 2.0}) {
        Params p{{"C", C}, {"C1", C1}};
        ExprTerms terms = potentialFromHTerms(h + s0);
        terms.add(-family);
        identity("potential from exponent h0+s0 equals potential.family" + paramLabel(p), terms,
                 p, identityOpts(opt.tolerance).guard(s0GuardExpr(), 0.05));
      }
      Params p{{"C", C}, {"C1", 1.0}};
      ExprTerms inst;
      inst.add(family).add(-cat.potentialExampleExpr());
      identity("potential.family at C1=1 equals potential.example" + paramLabel(p), inst, p,
               identityOpts(opt.tolerance));
    }
  }

  void ansatzSystemChecks() {
    Expr h = cat.h0Expr();
    SSystem sys = sSystemResiduals(cat.s0Expr(), h);
    for (double C : {0.5, 1.0, 2.0}) {
      for (double C1 : {1.0, 1.5, 2.0}) {
        Params p{{"C", C}, {"C1", C1}};
        auto io = identityOpts(opt.tolerance).guard(s0GuardExpr(), 0.05);
        identity("ansatz-system z-part vanishes for s0" + paramLabel(p), sys.zPart, p, io);
        identity("ansatz-system r-part vanishes for s0" + paramLabel(p), sys.rPart, p, io);
      }
    }
    // Any radial profile satisfies the z-part; this probe is not in the s0
    // family, so the r-part must not vanish.
    Expr probe = ln(num(1) + pow(rvar(), num(2)) + pow(zvar(), num(2)));
    SSystem probeSys = sSystemResiduals(probe, h);
    identity("ansatz-system z-part vanishes for the radial probe", probeSys.zPart, {},
             identityOpts(opt.tolerance));
    identity("control: ansatz-system r-part rejects the radial probe", probeSys.rPart, {},
             identityOpts(opt.tolerance), /*expectFail=*/true);
    SSystem badSys = sSystemResiduals(rvar(), h);
    identity("control: ansatz-system rejects s=r (z-part)", badSys.zPart, {},
             identityOpts(opt.tolerance), /*expectFail=*/true);
    identity("control: ansatz-system rejects s=r (r-part)", badSys.rPart, {},
             identityOpts(opt.tolerance), /*expectFail=*/true);
  }

  void compatibilityChecks() {
    auto seeds = cat.seeds();
    for (size_t i = 0; i < seeds.size(); ++i) {
      OneForm form = qSeedForm(seeds[i]);
      ExprTerms t;
      t.add(diff(form.a, Coord::Z)).add(-diff(form.b, Coord::R));
      identity("seed form of seed." + std::to_string(i + 1) + " is closed", t, {},
               identityOpts(opt.tolerance));
    }
    // The seed form is the h0 instance of the general conservation form.
    OneForm general = qForms(cat.h0Expr(), cat.at("seed.2").expr);
    OneForm special = qSeedForm(cat.at("seed.2").expr);
    ExprTerms agreeA, agreeB;
    agreeA.add(general.a).add(-special.a);
    agreeB.add(general.b).add(-special.b);
    identity("conservation form at h0 matches the seed form (dr)", agreeA, {},
             identityOpts(opt.tolerance));
    identity("conservation form at h0 matches the seed form (dz)", agreeB, {},
             identityOpts(opt.tolerance));
    // Solution one-form of a nontrivial pair is closed.
    OneForm g = moutardSolutionForm(cat.at("seed.3").expr, cat.at("seed.5").expr);
    ExprTerms t;
    t.add(diff(g.a, Coord::Z)).add(-diff(g.b, Coord::R));
    identity("solution form of (seed.3, seed.5) is closed", t, {}, identityOpts(opt.tolerance));
  }

  void superposeChecks(int n) {
    auto ex = cat.twofoldExample(n);
    Expr u = cat.potentialExampleExpr();
    OneForm form = superposeForm(ex.y1, ex.y2);
    std::string tag = "twofold." + std::to_string(n);
    for (double C : {0.5, 1.0, 2.0}) {
      Params pc{{"C", C}};
      ExprTerms dfr, dfz;
      dfr.add(diff(ex.fClosed, Coord::R)).add(-form.a);
      dfz.add(diff(ex.fClosed, Coord::Z)).add(-form.b);
      // K disappears under differentiation but the report records it anyway.
      Params pck = pc.merged(Params{{"K", 15.0 * C}});
      identity(tag + " primitive matches its form (dr)" + paramLabel(pc), dfr, pck,
               identityOpts(opt.tolerance));
      identity(tag + " primitive matches its form (dz)" + paramLabel(pc), dfz, pck,
               identityOpts(opt.tolerance));
      for (double K : {15.0 * C, 20.0 * C}) {
        Params p{{"C", C}, {"K", K}};
        ExprTerms pot = superposePotentialTerms(u, ex.y1, ex.y2, ex.fClosed);
        pot.add(-ex.newPotential);
        identity(tag + " reproduces the printed potential" + paramLabel(p), pot, p,
                 identityOpts(opt.tolerance));
        push(tag + " first solution" + paramLabel(p),
             residualReport(ex.newPotential, ex.y1 / ex.fClosed, p, opt.domain, opt.nPoints,
                            opt.seed, opt.tolerance));
        push(tag + " second solution" + paramLabel(p),
             residualReport(ex.newPotential, ex.y2 / ex.fClosed, p, opt.domain, opt.nPoints,
                            opt.seed, opt.tolerance));
        auto io = identityOpts(std::min(1e-10, opt.tolerance));
        push(tag + " swap invariance" + paramLabel(p),
             swapCheck(u, ex.y1, ex.y2, ex.fClosed, p, opt.domain, io));
      }
      // Expanded potential agrees with the log-derivative route away from F=0.
      Params p{{"C", C}, {"K", 15.0 * C}};
      ExprTerms agree = superposePotentialTerms(u, ex.y1, ex.y2, ex.fClosed);
      agree.add(-superposePotentialLogForm(u, ex.fClosed));
      identity(tag + " expanded form matches the log form" + paramLabel(p), agree, p,
               identityOpts(opt.tolerance).guard(ex.fClosed, 0.05));
    }
  }

  void moutardChecks() {
    // Applying the transformation twice with the distinguished solutions
    // returns the original potential.
    Expr yh = cat.at("seed.5").expr;
    MoutardResult first = applyMoutard(num(0), yh);
    MoutardResult second = applyMoutard(first.newPotential, first.newYh);
    ExprTerms involution;
    involution.add(second.newPotential);
    identity("moutard involution returns the flat potential", involution, {},
             identityOpts(opt.tolerance));
    push("moutard image of the distinguished solution solves the new potential",
         residualReport(first.newPotential, first.newYh, {}, opt.domain, opt.nPoints, opt.seed,
                        opt.tolerance));
    // The exponent route and the log-derivative route agree.
    ExprTerms agree = moutardPotentialFromHTerms(num(0), hFromSolution(yh));
    agree.add(-moutardPotential(num(0), yh));
    identity("moutard potential routes agree for seed.5", agree, {},
             identityOpts(opt.tolerance));
  }

  void darbouxSolutionChecks() {
    Expr qClosed = cat.at("qprimitive.seed1").expr;
    Expr seed1 = cat.at("seed.1").expr;
    for (double C : {0.5, 1.0, 2.0}) {
      for (double C1 : {1.0, 1.5, 2.0}) {
        AnsatzParams ap{C, C1};
        Params p = ap.params().merged(Params{{"kappa", Defaults::kappa}});
        push("transform image of seed.1 with the closed primitive" + paramLabel(p),
             residualReport(helmholtzPotential(ap), darbouxSolution(seed1, qClosed, ap), p,
                            opt.domain, opt.nPoints, opt.seed, opt.tolerance));
      }
    }
    AnsatzParams ap{1.0, 1.0};
    Params p = ap.params().merged(Params{{"kappa", Defaults::kappa}});
    // The image of seed.1 is (kappa/2) ytilde.1.
    auto io = identityOpts(std::min(1e-10, opt.tolerance));
    Expr half = num(1, 2) * param("kappa") * cat.ytildeExpr(1);
    push("image of seed.1 is proportional to ytilde.1" + paramLabel(p),
         differenceReport("proportionality", darbouxSolution(seed1, qClosed, ap), half, p,
                          opt.domain, io));
    // General operator route agrees with the printed solution formula.
    Expr s0 = substitute(cat.s0Expr(), ap.params());
    Expr viaOperator = darbouxSolutionGeneral(seed1, cat.h0Expr(), s0, qClosed);
    auto io2 = identityOpts(std::min(1e-10, opt.tolerance))
                   .guard(substitute(s0GuardExpr(), ap.params()), 0.1)
                   .guard(coeffs(s0, cat.h0Expr()).g, 0.05);
    push("operator route agrees with the solution formula" + paramLabel(p),
         differenceReport("route_agreement", viaOperator, darbouxSolution(seed1, qClosed, ap), p,
                          opt.domain, io2));
  }

  void scanChecks() {
    Domain grid = Domain::box(0.05, 3.0, -3.0, 3.0);
    Expr r = rvar(), z = zvar();
    Expr C = param("C"), K = param("K");
    Expr denom = pow(r, num(4)) + (pow(z, num(2)) + K - num(15) * C) * pow(r, num(2)) +
                 K * (pow(z, num(2)) + C);
    for (double k : {15.0, 20.0}) {
      Params p{{"C", 1.0}, {"K", k}};
      auto rep = singularityScan(denom, p, grid, 301, 301, "twofold.2 denominator");
      pushScan("twofold.2 denominator keeps one sign" + paramLabel(p), rep,
               rep.constantSign() && rep.nonFiniteNodes.empty());
    }
    {
      Params p{{"C", 1.0}, {"K", 5.0}};
      auto rep = singularityScan(denom, p, grid, 301, 301, "twofold.2 denominator");
      bool found = false;
      for (const auto& c : rep.signChangeCells)
        if (c.r0 <= 0.727 && 0.727 <= c.r1 && c.z0 <= 0.0 && 0.0 <= c.z1) found = true;
      pushScan("control: twofold.2 denominator loses positivity" + paramLabel(p), rep,
               !rep.signChangeCells.empty() && found);
    }
    Expr family = cat.potentialFamilyExpr();
    for (auto [c, c1] : std::initializer_list<std::pair<double, double>>{
             {0.5, 1.0}, {1.0, 1.5}, {2.0, 2.0}, {1.0, 3.0}}) {
      Params p{{"C", c}, {"C1", c1}};
      auto rep = singularityScan(family, p, grid, 301, 301, "potential.family");
      bool nonPositive = rep.constantSign() && rep.nonFiniteNodes.empty();
      if (nonPositive) {
        double sample = eval(family, p, Point{1.0, 0.5});
        nonPositive = sample <= 0.0;
      }
      pushScan("potential.family is finite and non-positive" + paramLabel(p), rep, nonPositive);
    }
  }
};

}  // namespace

std::vector<CheckResult> runCatalogSuite(const SuiteOptions& opt) {
  SuiteBuilder b{opt, {}};
  b.seedChecks();
  b.exponentChecks();
  b.ytildeChecks();
  b.potentialIdentityChain();
  b.ansatzSystemChecks();
  b.compatibilityChecks();
  b.superposeChecks(1);
  b.superposeChecks(2);
  b.moutardChecks();
  b.darbouxSolutionChecks();
  b.scanChecks();
  return b.results;
}

}  // namespace axihelm
