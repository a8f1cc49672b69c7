#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "axihelm/expr.hpp"
#include "axihelm/oneform.hpp"

namespace axihelm {

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Circular exclusion around a singular locus.
struct Disk {
  Point center;
  double radius = 0.0;
};

/// Rectangular working region 0 < rMin <= r <= rMax, zMin <= z <= zMax,
/// minus a set of exclusion disks.
struct Domain {
  double rMin = 0.2;
  double rMax = 3.0;
  double zMin = -3.0;
  double zMax = 3.0;
  std::vector<Disk> exclusions;

  static Domain standard() { return Domain{}; }
  static Domain box(double rMin, double rMax, double zMin, double zMax) {
    return Domain{rMin, rMax, zMin, zMax, {}};
  }

  bool contains(const Point& p) const {
    return p.r >= rMin && p.r <= rMax && p.z >= zMin && p.z <= zMax;
  }
  bool excluded(const Point& p) const;
  bool admissible(const Point& p) const { return contains(p) && !excluded(p); }
  /// Throws std::invalid_argument unless 0 < rMin < rMax, zMin < zMax, and
  /// every exclusion disk lies strictly inside the box.
  void validate() const;
};

enum class PathVariant { RThenZ, ZThenR, MidpointPolyline };

/// Axis-aligned integration path description. panelsPerSegment = 0 selects
/// the default resolution (16 panels per unit length, at least 4 per segment);
/// an explicit value must be >= 4. gaussNodes is 4 or 8.
struct PathSpec {
  PathVariant variant = PathVariant::RThenZ;
  int panelsPerSegment = 0;
  int gaussNodes = 8;

  void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gaussRule(int n);

/// A_z - B_r for form = (A, B); identically zero iff the form is closed.
Expr compatibilityResidual(const OneForm& form);

/// anchorValue + integral of (A dr + B dz) from anchor to target along the
/// axis-aligned path. Throws QuadratureError if the path leaves the domain,
/// crosses an exclusion, or the integrand is non-finite at a quadrature node.
double integrateForm(const OneForm& form, const Params& p, const Domain& domain,
                     const Point& anchor, double anchorValue, const Point& target,
                     const PathSpec& path = {});

/// Uniform grid of samples over a domain box. Every sample is stored as an
/// offset from the anchor value, so re-anchoring is exact by construction.
/// Nodes that cannot be filled honestly are flagged, never fabricated.
class Field {
public:
  Field(const Domain& domain, int nR, int nZ, const Point& anchor, double anchorValue);

  int nR() const { return nR_; }
  int nZ() const { return nZ_; }
  double dr() const { return dr_; }
  double dz() const { return dz_; }
  double rAt(int i) const { return domain_.rMin + i * dr_; }
  double zAt(int j) const { return domain_.zMin + j * dz_; }
  const Domain& domain() const { return domain_; }
  const Point& anchor() const { return anchor_; }
  double anchorValue() const { return anchorValue_; }

  bool flagged(int i, int j) const { return flags_[index(i, j)] != 0; }
  double value(int i, int j) const { return anchorValue_ + offsets_[index(i, j)]; }
  double offsetAt(int i, int j) const { return offsets_[index(i, j)]; }
  const std::vector<double>& offsets() const { return offsets_; }
  size_t flaggedCount() const;

  void setOffset(int i, int j, double off) {
    offsets_[index(i, j)] = off;
    flags_[index(i, j)] = 0;
  }
  void flag(int i, int j) { flags_[index(i, j)] = 1; }

  /// Same grid and offsets, different gauge constant.
  Field withAnchorValue(double v) const;

  /// Direct sampling of an expression; evaluation failures flag the node.
  static Field sample(const Expr& e, const Params& p, const Domain& domain, int nR, int nZ);

  void writeCsv(std::ostream& os) const;
  void writeGnuplotMatrix(std::ostream& os) const;

private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * nZ_ + j; }
  Domain domain_;
  int nR_;
  int nZ_;
  double dr_;
  double dz_;
  Point anchor_;
  double anchorValue_;
  std::vector<double> offsets_;
  std::vector<uint8_t> flags_;
};

/// Grid primitive of a closed form: the anchor column is integrated first,
/// then each row is filled by cumulative panel integration, so adjacent
/// samples share subpaths. Nodes behind an exclusion (as seen from the anchor
/// column along the marching direction) are flagged.
Field primitiveField(const OneForm& form, const Params& p, const Domain& domain, int nR, int nZ,
                     const Point& anchor, double anchorValue, const PathSpec& path = {});

}  // namespace axihelm
