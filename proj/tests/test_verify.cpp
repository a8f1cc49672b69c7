#include <doctest.h>

#include <cmath>

#include "axihelm/catalog.hpp"
#include "axihelm/verify.hpp"

using namespace axihelm;

TEST_CASE("samplePoints is deterministic and respects exclusions") {
  Domain dom = Domain::standard();
  dom.exclusions.push_back(Disk{Point{1.5, 0.0}, 0.3});
  auto a = samplePoints(dom, 200, 42);
  auto b = samplePoints(dom, 200, 42);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].r == b[i].r);
    CHECK(a[i].z == b[i].z);
    CHECK(dom.admissible(a[i]));
  }
  auto c = samplePoints(dom, 200, 43);
  CHECK(c[0].r != a[0].r);
}

TEST_CASE("residualReport on trivial, catalog, and control candidates") {
  Domain dom = Domain::standard();
  auto trivial = residualReport(num(0), num(1), {}, dom);
  CHECK(trivial.maxScaledResidual == 0.0);
  CHECK(trivial.pass());

  const auto& cat = Catalog::builtin();
  Params p{{"C", 1.0}, {"C1", 2.0}};
  auto good = residualReport(cat.potentialFamilyExpr(), cat.ytildeExpr(3), p, dom);
  CHECK(good.pass());
  CHECK(good.maxScaledResidual < 1e-8);

  auto control = residualReport(num(0), rvar(), {}, dom);
  CHECK(!control.pass());
  CHECK(control.maxScaledResidual > 1e-4);
  CHECK(control.nonFiniteCount == 0);
}

TEST_CASE("reports serialize with the documented schema and reproduce bitwise") {
  auto rep = residualReport(num(0), zvar(), {}, Domain::standard(), 150, 99);
  auto j = rep.toJson();
  for (const char* key : {"op", "params", "domain", "n_points", "rng_seed",
                          "max_scaled_residual", "mean_scaled_residual", "worst_point",
                          "non_finite_count", "verdict"})
    CHECK(j.contains(key));
  auto rep2 = residualReport(num(0), zvar(), {}, Domain::standard(), 150, 99);
  CHECK(rep.toJson().dump() == rep2.toJson().dump());
}

TEST_CASE("fdResidualField on exact and constant fields") {
  const auto& cat = Catalog::builtin();
  AnsatzParams ap{1.0, 1.0};
  Domain dom = Domain::box(0.5, 2.5, -1.0, 1.0);
  Expr u = helmholtzPotential(ap);

  Field constant = Field::sample(num(3), {}, dom, 41, 41);
  auto zero = fdResidualField(num(0), constant);
  CHECK(zero.maxScaledResidual == 0.0);

  Field exact = Field::sample(cat.ytilde(1, ap), {}, dom, 201, 201);
  auto fine = fdResidualField(u, exact);
  CHECK(fine.pass());
  CHECK(fine.maxScaledResidual < 1e-3);

  // Second-order stencil: half the spacing, a quarter of the residual.
  Field coarseField = Field::sample(cat.ytilde(1, ap), {}, dom, 101, 101);
  auto coarse = fdResidualField(u, coarseField);
  double factor = coarse.maxScaledResidual / fine.maxScaledResidual;
  CHECK(factor > 3.5);
  CHECK(factor < 4.5);
}

TEST_CASE("fdResidualField skips stencils touching flagged nodes") {
  Domain dom = Domain::box(0.5, 2.5, -1.0, 1.0);
  Field f = Field::sample(num(1), {}, dom, 21, 21);
  f.flag(10, 10);
  auto rep = fdResidualField(num(0), f);
  CHECK(rep.skippedCount == 5);  // the node and its four neighbors
  CHECK(rep.pass());
}

TEST_CASE("fdDerivativeCheck on smooth, bilinear, and guarded expressions") {
  const auto& cat = Catalog::builtin();
  Domain dom = Domain::standard();
  Params p{{"C", 1.0}, {"C1", 2.0}};
  IdentityOptions guard = fdCheckOptions();
  guard.guards.emplace_back(parse("(1-2*C1)*(r^2+z^2)^C1 + (1+2*C1)*C"), 0.05);
  auto s0 = fdDerivativeCheck(cat.s0Expr(), p, dom, 200, 7, guard);
  CHECK(s0.pass());

  auto bilinear = fdDerivativeCheck(parse("r*z"), {}, dom, 200, 7);
  CHECK(bilinear.maxScaledResidual < 1e-9);

  // ln|3 - rho^2| is singular on a circle through the box; guarded points are
  // skipped and the report says so.
  IdentityOptions circleGuard = fdCheckOptions();
  circleGuard.guards.emplace_back(parse("3-r^2-z^2"), 0.2);
  auto guarded = fdDerivativeCheck(parse("ln(abs(3-r^2-z^2))"), {}, dom, 400, 7, circleGuard);
  CHECK(guarded.pass());
  CHECK(guarded.skippedCount > 0);
}

TEST_CASE("singularityScan pins the sign-change cell of the quartic") {
  // r^4 - 10 r^2 + 5 at z = 0 has a root at r^2 = 5 - sqrt(20).
  Expr denom = parse("r^4+(z^2+K-15*C)*r^2+K*(z^2+C)");
  Domain grid = Domain::box(0.05, 3.0, -3.0, 3.0);
  auto good = singularityScan(denom, Params{{"C", 1.0}, {"K", 15.0}}, grid, 301, 301);
  CHECK(good.constantSign());
  CHECK(good.nonFiniteNodes.empty());

  auto bad = singularityScan(denom, Params{{"C", 1.0}, {"K", 5.0}}, grid, 301, 301);
  CHECK(!bad.constantSign());
  double root = std::sqrt(5.0 - std::sqrt(20.0));
  bool found = false;
  for (const auto& c : bad.signChangeCells)
    if (c.r0 <= root && root <= c.r1 && c.z0 <= 0.0 && 0.0 <= c.z1) found = true;
  CHECK(found);

  // Non-finite nodes are recorded, not fatal.
  auto logScan = singularityScan(parse("ln(r-1)"), {}, Domain::box(0.5, 2.0, -1.0, 1.0), 31, 31);
  CHECK(!logScan.nonFiniteNodes.empty());
}

TEST_CASE("point-sampled and grid verdicts agree on catalog entries") {
  const auto& cat = Catalog::builtin();
  AnsatzParams ap{1.0, 1.0};
  Domain dom = Domain::box(0.5, 2.5, -1.0, 1.0);
  Expr u = helmholtzPotential(ap);
  for (int i : {2, 4}) {
    Expr y = cat.ytilde(i, ap);
    bool sampled = residualReport(u, y, {}, dom).pass();
    bool gridded = fdResidualField(u, Field::sample(y, {}, dom, 201, 201)).pass();
    CHECK(sampled == gridded);
    CHECK(sampled);
  }
  // Negative control: both verdicts reject r.
  bool sampledBad = residualReport(num(0), rvar(), {}, dom).pass();
  bool griddedBad = fdResidualField(num(0), Field::sample(rvar(), {}, dom, 201, 201)).pass();
  CHECK(sampledBad == griddedBad);
  CHECK(!sampledBad);
}
