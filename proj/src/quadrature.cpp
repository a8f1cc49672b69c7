#include "axihelm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>

namespace axihelm {

bool Domain::excluded(const Point& p) const {
  for (const auto& d : exclusions) {
    double dr = p.r - d.center.r;
    double dz = p.z - d.center.z;
    if (dr * dr + dz * dz < d.radius * d.radius) return true;
  }
  return false;
}

void Domain::validate() const {
  if (!(rMin > 0.0)) throw std::invalid_argument("domain requires rMin > 0");
  if (!(rMin < rMax)) throw std::invalid_argument("domain requires rMin < rMax");
  if (!(zMin < zMax)) throw std::invalid_argument("domain requires zMin < zMax");
  for (const auto& d : exclusions) {
    if (!(d.radius > 0.0)) throw std::invalid_argument("exclusion radius must be positive");
    if (d.center.r - d.radius <= rMin || d.center.r + d.radius >= rMax ||
        d.center.z - d.radius <= zMin || d.center.z + d.radius >= zMax)
      throw std::invalid_argument("exclusion disk must lie strictly inside the box");
  }
}

void PathSpec::validate() const {
  if (panelsPerSegment != 0 && panelsPerSegment < 4)
    throw std::invalid_argument("panelsPerSegment must be >= 4 (or 0 for the default)");
  if (gaussNodes != 4 && gaussNodes != 8)
    throw std::invalid_argument("gaussNodes must be 4 or 8");
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rules: Newton iteration on the Legendre polynomial.

namespace {

GaussRule computeGaussRule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < eps) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gaussRule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, computeGaussRule(n)).first;
  return it->second;
}

Expr compatibilityResidual(const OneForm& form) {
  return diff(form.a, Coord::Z) - diff(form.b, Coord::R);
}

// ---------------------------------------------------------------------------
// Line integration

namespace {

int panelsForLength(const PathSpec& spec, double length) {
  if (spec.panelsPerSegment > 0) return spec.panelsPerSegment;
  return std::max(4, static_cast<int>(std::ceil(16.0 * length)));
}

void requireAdmissible(const Domain& domain, const Point& p) {
  if (!domain.contains(p))
    throw QuadratureError("integration path leaves the domain box at (r=" + std::to_string(p.r) +
                          ", z=" + std::to_string(p.z) + ")");
  if (domain.excluded(p))
    throw QuadratureError("integration path crosses an exclusion at (r=" + std::to_string(p.r) +
                          ", z=" + std::to_string(p.z) + ")");
}

/// Integral of the form over the axis-aligned segment from p0 to p1.
double integrateSegment(const OneForm& form, const Params& p, const Domain& domain,
                        const Point& p0, const Point& p1, int panels, const GaussRule& rule,
                        bool checkDomain) {
  const bool horizontal = p0.z == p1.z;
  if (!horizontal && p0.r != p1.r)
    throw QuadratureError("integration segment is not axis-aligned");
  const Expr& component = horizontal ? form.a : form.b;
  const double a = horizontal ? p0.r : p0.z;
  const double b = horizontal ? p1.r : p1.z;
  if (a == b) return 0.0;
  if (checkDomain) {
    requireAdmissible(domain, p0);
    requireAdmissible(domain, p1);
  }
  double total = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double left = a + k * h;
    const double mid = left + 0.5 * h;
    double panelSum = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = mid + 0.5 * h * rule.nodes[q];
      Point pt = horizontal ? Point{t, p0.z} : Point{p0.r, t};
      if (checkDomain) requireAdmissible(domain, pt);
      double f;
      try {
        f = eval(component, p, pt);
      } catch (const EvalError& err) {
        throw QuadratureError(std::string("non-finite integrand sample: ") + err.what());
      }
      panelSum += rule.weights[q] * f;
    }
    total += panelSum * 0.5 * h;
  }
  return total;
}

std::vector<Point> pathCorners(const Point& anchor, const Point& target, PathVariant variant) {
  switch (variant) {
    case PathVariant::RThenZ:
      return {anchor, Point{target.r, anchor.z}, target};
    case PathVariant::ZThenR:
      return {anchor, Point{anchor.r, target.z}, target};
    case PathVariant::MidpointPolyline: {
      double rm = 0.5 * (anchor.r + target.r);
      return {anchor, Point{rm, anchor.z}, Point{rm, target.z}, target};
    }
  }
  return {anchor, target};
}

}  // namespace

double integrateForm(const OneForm& form, const Params& p, const Domain& domain,
                     const Point& anchor, double anchorValue, const Point& target,
                     const PathSpec& path) {
  domain.validate();
  path.validate();
  const GaussRule& rule = gaussRule(path.gaussNodes);
  auto corners = pathCorners(anchor, target, path.variant);
  double sum = 0.0;
  for (size_t s = 0; s + 1 < corners.size(); ++s) {
    double length = std::fabs(corners[s + 1].r - corners[s].r) +
                    std::fabs(corners[s + 1].z - corners[s].z);
    if (length == 0.0) continue;
    sum += integrateSegment(form, p, domain, corners[s], corners[s + 1],
                            panelsForLength(path, length), rule, true);
  }
  return anchorValue + sum;
}

// ---------------------------------------------------------------------------
// Field

Field::Field(const Domain& domain, int nR, int nZ, const Point& anchor, double anchorValue)
    : domain_(domain),
      nR_(nR),
      nZ_(nZ),
      dr_(nR > 1 ? (domain.rMax - domain.rMin) / (nR - 1) : 0.0),
      dz_(nZ > 1 ? (domain.zMax - domain.zMin) / (nZ - 1) : 0.0),
      anchor_(anchor),
      anchorValue_(anchorValue),
      offsets_(static_cast<size_t>(nR) * nZ, 0.0),
      flags_(static_cast<size_t>(nR) * nZ, 0) {
  if (nR < 1 || nZ < 1) throw std::invalid_argument("field grid must be at least 1x1");
}

size_t Field::flaggedCount() const {
  size_t n = 0;
  for (uint8_t f : flags_) n += f != 0;
  return n;
}

Field Field::withAnchorValue(double v) const {
  Field out = *this;
  out.anchorValue_ = v;
  return out;
}

Field Field::sample(const Expr& e, const Params& p, const Domain& domain, int nR, int nZ) {
  Field f(domain, nR, nZ, Point{domain.rMin, domain.zMin}, 0.0);
  for (int i = 0; i < nR; ++i) {
    for (int j = 0; j < nZ; ++j) {
      Point pt{f.rAt(i), f.zAt(j)};
      if (domain.excluded(pt)) {
        f.flag(i, j);
        continue;
      }
      try {
        f.setOffset(i, j, eval(e, p, pt));
      } catch (const EvalError&) {
        f.flag(i, j);
      }
    }
  }
  return f;
}

void Field::writeCsv(std::ostream& os) const {
  os << "r,z,value\n";
  char buf[96];
  for (int i = 0; i < nR_; ++i) {
    for (int j = 0; j < nZ_; ++j) {
      if (flagged(i, j))
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,nan\n", rAt(i), zAt(j));
      else
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", rAt(i), zAt(j), value(i, j));
      os << buf;
    }
  }
}

void Field::writeGnuplotMatrix(std::ostream& os) const {
  // one row per z value, one column per r value; plottable with
  //   plot 'file' matrix nonuniform with image
  char buf[64];
  os << nR_ + 1;
  for (int i = 0; i < nR_; ++i) {
    std::snprintf(buf, sizeof(buf), " %.17g", rAt(i));
    os << buf;
  }
  os << "\n";
  for (int j = 0; j < nZ_; ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g", zAt(j));
    os << buf;
    for (int i = 0; i < nR_; ++i) {
      if (flagged(i, j))
        os << " nan";
      else {
        std::snprintf(buf, sizeof(buf), " %.17g", value(i, j));
        os << buf;
      }
    }
    os << "\n";
  }
}

// ---------------------------------------------------------------------------
// Grid primitive

namespace {

/// Panels for a short marching step between adjacent grid nodes. The PathSpec
/// panel floor applies to user-level paths; per-step marching uses the length
/// rule directly so a fine grid is not forced into quartic work.
int marchPanels(const PathSpec& spec, double length) {
  if (spec.panelsPerSegment > 0) return spec.panelsPerSegment;
  return std::max(1, static_cast<int>(std::ceil(16.0 * length)));
}

}  // namespace

Field primitiveField(const OneForm& form, const Params& p, const Domain& domain, int nR, int nZ,
                     const Point& anchor, double anchorValue, const PathSpec& path) {
  domain.validate();
  path.validate();
  if (!domain.admissible(anchor))
    throw QuadratureError("primitive anchor is outside the domain or inside an exclusion");
  const GaussRule& rule = gaussRule(path.gaussNodes);
  Field field(domain, nR, nZ, anchor, anchorValue);

  auto stepIntegral = [&](const Point& from, const Point& to) {
    double length = std::fabs(to.r - from.r) + std::fabs(to.z - from.z);
    return integrateSegment(form, p, domain, from, to, marchPanels(path, length), rule, false);
  };
  auto nodeOk = [&](const Point& pt) { return !domain.excluded(pt); };

  // Offset of the grid node nearest the anchor, reached by an r-then-z hook.
  int iA = std::clamp(static_cast<int>(std::lround((anchor.r - domain.rMin) /
                                                   (field.dr() > 0 ? field.dr() : 1.0))),
                      0, nR - 1);
  int jA = std::clamp(static_cast<int>(std::lround((anchor.z - domain.zMin) /
                                                   (field.dz() > 0 ? field.dz() : 1.0))),
                      0, nZ - 1);
  Point nodeA{field.rAt(iA), field.zAt(jA)};
  if (!nodeOk(nodeA)) throw QuadratureError("grid node nearest the anchor is excluded");
  double offA = stepIntegral(anchor, Point{nodeA.r, anchor.z}) +
                stepIntegral(Point{nodeA.r, anchor.z}, nodeA);
  field.setOffset(iA, jA, offA);

  // Anchor column, then march every row outward from it.
  auto marchColumn = [&](int i, int jFrom, int jTo, int stepj) {
    double acc = field.offsetAt(i, jFrom);
    bool blocked = field.flagged(i, jFrom);
    for (int j = jFrom + stepj; j != jTo + stepj; j += stepj) {
      Point prev{field.rAt(i), field.zAt(j - stepj)};
      Point cur{field.rAt(i), field.zAt(j)};
      if (blocked || !nodeOk(cur) || !nodeOk(prev)) {
        field.flag(i, j);
        blocked = true;
        continue;
      }
      acc += stepIntegral(prev, cur);
      field.setOffset(i, j, acc);
    }
  };
  auto marchRow = [&](int j, int iFrom, int iTo, int stepi) {
    double acc = field.offsetAt(iFrom, j);
    bool blocked = field.flagged(iFrom, j);
    for (int i = iFrom + stepi; i != iTo + stepi; i += stepi) {
      Point prev{field.rAt(i - stepi), field.zAt(j)};
      Point cur{field.rAt(i), field.zAt(j)};
      if (blocked || !nodeOk(cur) || !nodeOk(prev)) {
        field.flag(i, j);
        blocked = true;
        continue;
      }
      acc += stepIntegral(prev, cur);
      field.setOffset(i, j, acc);
    }
  };

  if (jA > 0) marchColumn(iA, jA, 0, -1);
  if (jA < nZ - 1) marchColumn(iA, jA, nZ - 1, 1);
  for (int j = 0; j < nZ; ++j) {
    if (field.flagged(iA, j)) {
      for (int i = 0; i < nR; ++i)
        if (i != iA) field.flag(i, j);
      continue;
    }
    if (iA > 0) marchRow(j, iA, 0, -1);
    if (iA < nR - 1) marchRow(j, iA, nR - 1, 1);
  }
  return field;
}

}  // namespace axihelm
