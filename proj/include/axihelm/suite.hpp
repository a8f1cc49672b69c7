#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "axihelm/quadrature.hpp"

namespace axihelm {

struct SuiteOptions {
  Domain domain = Domain::standard();
  uint64_t seed = 0x5eed5eedull;
  int nPoints = 200;
  double tolerance = 1e-8;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  bool nonFiniteBlowup = false;
  nlohmann::json detail;
};

/// The catalog verification suite: seed and solution residuals, the potential
/// identity chain, the nonlinear-system residuals of the radial ansatz,
/// one-form compatibility, superposition reproduction, swap invariance,
/// negative controls, and singularity scans. Deterministic given the options.
std::vector<CheckResult> runCatalogSuite(const SuiteOptions& opt = {});

}  // namespace axihelm
