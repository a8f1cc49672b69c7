#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "axihelm/expr.hpp"
#include "axihelm/quadrature.hpp"

namespace axihelm {

/// Deterministic 64-bit generator used for all sampling; the seed is recorded
/// in every report.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next();
  /// Uniform double in [0, 1).
  double uniform();

private:
  uint64_t state_;
};

/// Points drawn uniformly from the domain box, rejecting exclusion disks.
std::vector<Point> samplePoints(const Domain& domain, int n, uint64_t seed);

/// Summary of scaled residual magnitudes over sampled points.
struct ResidualReport {
  std::string op;
  std::map<std::string, double> params;
  Domain domain;
  int nPoints = 0;
  uint64_t rngSeed = 0;
  double maxScaledResidual = 0.0;
  double meanScaledResidual = 0.0;
  Point worstPoint{1.0, 0.0};
  int nonFiniteCount = 0;
  int skippedCount = 0;
  double tolerance = 1e-8;

  bool pass() const { return nonFiniteCount == 0 && maxScaledResidual < tolerance; }
  nlohmann::json toJson() const;
};

struct IdentityOptions {
  int nPoints = 200;
  uint64_t seed = 0x5eed5eedull;
  double tolerance = 1e-8;
  /// Points where any |guard expression| < threshold are skipped (singular
  /// loci that are curves rather than points, e.g. a logarithm's zero circle).
  std::vector<std::pair<Expr, double>> guards;

  IdentityOptions& guard(const Expr& e, double threshold = 0.05) {
    guards.emplace_back(e, threshold);
    return *this;
  }
};

/// Scaled residual of a formal sum: at each point,
///   |sum of terms| / (1 + sum of |term|).
ResidualReport identityReport(const std::string& op, const ExprTerms& terms, const Params& p,
                              const Domain& domain, const IdentityOptions& opt = {});

/// Schrodinger-equation residual of candidate y against potential u, scaled by
/// 1 + |y_rr| + |y_r/r| + |y_zz| + |u y|.
ResidualReport residualReport(const Expr& u, const Expr& y, const Params& p, const Domain& domain,
                              int nPoints = 200, uint64_t seed = 0x5eed5eedull,
                              double tolerance = 1e-8);

/// Plain max |a - b| over sampled points (unscaled); used for swap invariance.
ResidualReport differenceReport(const std::string& op, const Expr& a, const Expr& b,
                                const Params& p, const Domain& domain,
                                const IdentityOptions& opt = {});

/// Second-order 5-point cylindrical stencil residual of a grid-valued
/// candidate solution against potential u; flagged samples in a stencil
/// footprint skip the node.
ResidualReport fdResidualField(const Expr& u, const Field& yField, const Params& p = {},
                               double tolerance = 1e-3);

/// Same stencil with the potential supplied on the same grid.
ResidualReport fdResidualFieldGrid(const Field& uField, const Field& yField,
                                   double tolerance = 1e-3);

/// Default options for the finite-difference derivative check (the relative
/// tolerance contract is 1e-5, looser than the symbolic-identity default).
inline IdentityOptions fdCheckOptions() {
  IdentityOptions opt;
  opt.tolerance = 1e-5;
  return opt;
}

/// diff() against central finite differences with step 1e-6 (1 + |coordinate|),
/// error scaled by 1 + |fd|.
ResidualReport fdDerivativeCheck(const Expr& e, const Params& p, const Domain& domain,
                                 int nPoints = 200, uint64_t seed = 0x5eed5eedull,
                                 const IdentityOptions& opt = fdCheckOptions());

struct ScanCell {
  int i = 0, j = 0;           // lower-left node of the cell
  double r0 = 0, r1 = 0, z0 = 0, z1 = 0;
};

/// Grid evaluation recording sign-change cells and non-finite nodes.
struct ScanReport {
  std::string label;
  Domain domain;
  int nR = 0, nZ = 0;
  std::vector<ScanCell> signChangeCells;
  std::vector<std::pair<int, int>> nonFiniteNodes;

  bool constantSign() const { return signChangeCells.empty(); }
  nlohmann::json toJson() const;
};

ScanReport singularityScan(const Expr& e, const Params& p, const Domain& domain, int nR, int nZ,
                           const std::string& label = {});

nlohmann::json domainToJson(const Domain& d);
std::map<std::string, double> paramsToMap(const Params& p);

}  // namespace axihelm
