#include "axihelm/verify.hpp"

#include <algorithm>
#include <cmath>

#include "axihelm/axisym.hpp"

namespace axihelm {

uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<Point> samplePoints(const Domain& domain, int n, uint64_t seed) {
  domain.validate();
  SplitMix64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  long attempts = 0;
  const long maxAttempts = 1000l * std::max(n, 1);
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > maxAttempts)
      throw std::runtime_error("sampling rejection loop exceeded its budget");
    Point p{domain.rMin + rng.uniform() * (domain.rMax - domain.rMin),
            domain.zMin + rng.uniform() * (domain.zMax - domain.zMin)};
    if (domain.excluded(p)) continue;
    pts.push_back(p);
  }
  return pts;
}

nlohmann::json domainToJson(const Domain& d) {
  return {{"r_min", d.rMin}, {"r_max", d.rMax}, {"z_min", d.zMin}, {"z_max", d.zMax}};
}

std::map<std::string, double> paramsToMap(const Params& p) {
  std::map<std::string, double> out;
  for (const auto& kv : p.entries()) out[kv.first] = kv.second;
  return out;
}

nlohmann::json ResidualReport::toJson() const {
  return {{"op", op},
          {"params", nlohmann::json(params)},
          {"domain", domainToJson(domain)},
          {"n_points", nPoints},
          {"rng_seed", rngSeed},
          {"max_scaled_residual", maxScaledResidual},
          {"mean_scaled_residual", meanScaledResidual},
          {"worst_point", {{"r", worstPoint.r}, {"z", worstPoint.z}}},
          {"non_finite_count", nonFiniteCount},
          {"n_skipped", skippedCount},
          {"verdict", pass() ? "pass" : "fail"}};
}

nlohmann::json ScanReport::toJson() const {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : signChangeCells)
    cells.push_back({{"i", c.i}, {"j", c.j}, {"r0", c.r0}, {"r1", c.r1}, {"z0", c.z0},
                     {"z1", c.z1}});
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nonFiniteNodes) nodes.push_back({{"i", n.first}, {"j", n.second}});
  return {{"label", label},
          {"domain", domainToJson(domain)},
          {"n_r", nR},
          {"n_z", nZ},
          {"sign_change_cells", cells},
          {"non_finite_nodes", nodes},
          {"constant_sign", constantSign()}};
}

namespace {

struct Accumulator {
  double maxScaled = 0.0;
  double sumScaled = 0.0;
  int evaluated = 0;
  Point worst{1.0, 0.0};

  void add(double scaled, const Point& pt) {
    ++evaluated;
    sumScaled += scaled;
    if (scaled >= maxScaled) {
      maxScaled = scaled;
      worst = pt;
    }
  }
};

ResidualReport makeReport(const std::string& op, const Params& p, const Domain& domain,
                          int nPoints, uint64_t seed, double tolerance, const Accumulator& acc,
                          int nonFinite, int skipped) {
  ResidualReport rep;
  rep.op = op;
  rep.params = paramsToMap(p);
  rep.domain = domain;
  rep.nPoints = nPoints;
  rep.rngSeed = seed;
  rep.maxScaledResidual = acc.maxScaled;
  rep.meanScaledResidual = acc.evaluated > 0 ? acc.sumScaled / acc.evaluated : 0.0;
  rep.worstPoint = acc.worst;
  rep.nonFiniteCount = nonFinite;
  rep.skippedCount = skipped;
  rep.tolerance = tolerance;
  return rep;
}

bool guardSkips(const IdentityOptions& opt, const Params& p, const Point& pt) {
  for (const auto& [g, threshold] : opt.guards) {
    try {
      if (std::fabs(eval(g, p, pt)) < threshold) return true;
    } catch (const EvalError&) {
      return true;  // guard undefined: treat as singular neighborhood
    }
  }
  return false;
}

}  // namespace

ResidualReport identityReport(const std::string& op, const ExprTerms& terms, const Params& p,
                              const Domain& domain, const IdentityOptions& opt) {
  auto pts = samplePoints(domain, opt.nPoints, opt.seed);
  Accumulator acc;
  int nonFinite = 0, skipped = 0;
  for (const auto& pt : pts) {
    if (guardSkips(opt, p, pt)) {
      ++skipped;
      continue;
    }
    double sum = 0.0, mag = 0.0;
    bool ok = true;
    for (const auto& t : terms.terms) {
      try {
        double v = eval(t, p, pt);
        sum += v;
        mag += std::fabs(v);
      } catch (const EvalError&) {
        ok = false;
        break;
      }
    }
    if (!ok || !std::isfinite(sum)) {
      ++nonFinite;
      continue;
    }
    acc.add(std::fabs(sum) / (1.0 + mag), pt);
  }
  return makeReport(op, p, domain, opt.nPoints, opt.seed, opt.tolerance, acc, nonFinite, skipped);
}

ResidualReport residualReport(const Expr& u, const Expr& y, const Params& p, const Domain& domain,
                              int nPoints, uint64_t seed, double tolerance) {
  IdentityOptions opt;
  opt.nPoints = nPoints;
  opt.seed = seed;
  opt.tolerance = tolerance;
  return identityReport("schrodinger_residual", schrodingerResidualTerms(u, y), p, domain, opt);
}

ResidualReport differenceReport(const std::string& op, const Expr& a, const Expr& b,
                                const Params& p, const Domain& domain,
                                const IdentityOptions& opt) {
  auto pts = samplePoints(domain, opt.nPoints, opt.seed);
  Accumulator acc;
  int nonFinite = 0, skipped = 0;
  for (const auto& pt : pts) {
    if (guardSkips(opt, p, pt)) {
      ++skipped;
      continue;
    }
    try {
      acc.add(std::fabs(eval(a, p, pt) - eval(b, p, pt)), pt);
    } catch (const EvalError&) {
      ++nonFinite;
    }
  }
  return makeReport(op, p, domain, opt.nPoints, opt.seed, opt.tolerance, acc, nonFinite, skipped);
}

namespace {

/// Shared stencil walk; getU returns the potential value or nullopt.
template <typename GetU>
ResidualReport fdResidualImpl(GetU&& getU, const Field& yField, const Params& p,
                              double tolerance) {
  const int nR = yField.nR();
  const int nZ = yField.nZ();
  const double dr = yField.dr();
  const double dz = yField.dz();
  Accumulator acc;
  int nonFinite = 0, skipped = 0, evaluated = 0;
  for (int i = 1; i + 1 < nR; ++i) {
    for (int j = 1; j + 1 < nZ; ++j) {
      if (yField.flagged(i, j) || yField.flagged(i - 1, j) || yField.flagged(i + 1, j) ||
          yField.flagged(i, j - 1) || yField.flagged(i, j + 1)) {
        ++skipped;
        continue;
      }
      const double ri = yField.rAt(i);
      const Point pt{ri, yField.zAt(j)};
      std::optional<double> uv = getU(i, j, pt);
      if (!uv) {
        ++nonFinite;
        continue;
      }
      const double yc = yField.value(i, j);
      const double t1 = (yField.value(i + 1, j) - 2.0 * yc + yField.value(i - 1, j)) / (dr * dr);
      const double t2 = (yField.value(i + 1, j) - yField.value(i - 1, j)) / (2.0 * ri * dr);
      const double t3 = (yField.value(i, j + 1) - 2.0 * yc + yField.value(i, j - 1)) / (dz * dz);
      const double t4 = *uv * yc;
      const double res = t1 + t2 + t3 - t4;
      if (!std::isfinite(res)) {
        ++nonFinite;
        continue;
      }
      ++evaluated;
      acc.add(std::fabs(res) /
                  (1.0 + std::fabs(t1) + std::fabs(t2) + std::fabs(t3) + std::fabs(t4)),
              pt);
    }
  }
  return makeReport("fd_residual_field", p, yField.domain(), evaluated, 0, tolerance, acc,
                    nonFinite, skipped);
}

}  // namespace

ResidualReport fdResidualField(const Expr& u, const Field& yField, const Params& p,
                               double tolerance) {
  return fdResidualImpl(
      [&](int, int, const Point& pt) -> std::optional<double> {
        try {
          return eval(u, p, pt);
        } catch (const EvalError&) {
          return std::nullopt;
        }
      },
      yField, p, tolerance);
}

ResidualReport fdResidualFieldGrid(const Field& uField, const Field& yField, double tolerance) {
  if (uField.nR() != yField.nR() || uField.nZ() != yField.nZ())
    throw std::invalid_argument("potential and solution grids must match");
  return fdResidualImpl(
      [&](int i, int j, const Point&) -> std::optional<double> {
        if (uField.flagged(i, j)) return std::nullopt;
        return uField.value(i, j);
      },
      yField, {}, tolerance);
}

ResidualReport fdDerivativeCheck(const Expr& e, const Params& p, const Domain& domain,
                                 int nPoints, uint64_t seed, const IdentityOptions& optIn) {
  IdentityOptions opt = optIn;
  opt.nPoints = nPoints;
  opt.seed = seed;
  const Expr dR = diff(e, Coord::R);
  const Expr dZ = diff(e, Coord::Z);
  auto pts = samplePoints(domain, nPoints, seed);
  Accumulator acc;
  int nonFinite = 0, skipped = 0;
  for (const auto& pt : pts) {
    if (guardSkips(opt, p, pt)) {
      ++skipped;
      continue;
    }
    try {
      const double hr = 1e-6 * (1.0 + std::fabs(pt.r));
      const double hz = 1e-6 * (1.0 + std::fabs(pt.z));
      double fdR = (eval(e, p, Point{pt.r + hr, pt.z}) - eval(e, p, Point{pt.r - hr, pt.z})) /
                   (2.0 * hr);
      double fdZ = (eval(e, p, Point{pt.r, pt.z + hz}) - eval(e, p, Point{pt.r, pt.z - hz})) /
                   (2.0 * hz);
      double errR = std::fabs(eval(dR, p, pt) - fdR) / (1.0 + std::fabs(fdR));
      double errZ = std::fabs(eval(dZ, p, pt) - fdZ) / (1.0 + std::fabs(fdZ));
      acc.add(std::max(errR, errZ), pt);
    } catch (const EvalError&) {
      ++nonFinite;
    }
  }
  ResidualReport rep = makeReport("fd_derivative_check", p, domain, nPoints, seed, opt.tolerance,
                                  acc, nonFinite, skipped);
  return rep;
}

ScanReport singularityScan(const Expr& e, const Params& p, const Domain& domain, int nR, int nZ,
                           const std::string& label) {
  domain.validate();
  ScanReport rep;
  rep.label = label.empty() ? print(e) : label;
  rep.domain = domain;
  rep.nR = nR;
  rep.nZ = nZ;
  const double dr = nR > 1 ? (domain.rMax - domain.rMin) / (nR - 1) : 0.0;
  const double dz = nZ > 1 ? (domain.zMax - domain.zMin) / (nZ - 1) : 0.0;
  std::vector<double> values(static_cast<size_t>(nR) * nZ, 0.0);
  std::vector<uint8_t> finite(static_cast<size_t>(nR) * nZ, 0);
  auto idx = [&](int i, int j) { return static_cast<size_t>(i) * nZ + j; };
  for (int i = 0; i < nR; ++i) {
    for (int j = 0; j < nZ; ++j) {
      Point pt{domain.rMin + i * dr, domain.zMin + j * dz};
      try {
        values[idx(i, j)] = eval(e, p, pt);
        finite[idx(i, j)] = 1;
      } catch (const EvalError&) {
        rep.nonFiniteNodes.emplace_back(i, j);
      }
    }
  }
  for (int i = 0; i + 1 < nR; ++i) {
    for (int j = 0; j + 1 < nZ; ++j) {
      bool pos = false, neg = false, allFinite = true;
      for (int di = 0; di <= 1 && allFinite; ++di) {
        for (int dj = 0; dj <= 1; ++dj) {
          if (!finite[idx(i + di, j + dj)]) {
            allFinite = false;
            break;
          }
          double v = values[idx(i + di, j + dj)];
          pos = pos || v > 0.0;
          neg = neg || v < 0.0;
        }
      }
      if (allFinite && pos && neg)
        rep.signChangeCells.push_back(ScanCell{i, j, domain.rMin + i * dr,
                                               domain.rMin + (i + 1) * dr, domain.zMin + j * dz,
                                               domain.zMin + (j + 1) * dz});
    }
  }
  return rep;
}

}  // namespace axihelm
