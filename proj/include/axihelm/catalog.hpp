#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "axihelm/darboux.hpp"
#include "axihelm/expr.hpp"

namespace axihelm {

enum class EntryKind { SeedSolution, Potential, Solution, Exponent, OneFormPrimitive };

std::string to_string(EntryKind k);
EntryKind entryKindFromString(const std::string& s);

struct CatalogEntry {
  std::string id;
  EntryKind kind = EntryKind::SeedSolution;
  std::string exprText;
  Expr expr;
  std::vector<std::string> requiredParams;
  std::string provenance;
  std::string domainNote;
};

/// Parameter defaults used across the verification suite and the CLI.
struct Defaults {
  static constexpr double C = 1.0;
  static constexpr double C1 = 1.0;
  static constexpr double K = 15.0;
  static constexpr double kappa = 1.0;
};

/// Read-only library of the built-in closed forms: the six zero-potential
/// seeds, the exponents h0 and s0, the transformed potential family and its
/// solution images, and the two twofold-superposition examples.
class Catalog {
public:
  static const Catalog& builtin();
  static Catalog load(std::istream& in, const std::string& sourceName = "<stream>");
  static Catalog loadFile(const std::string& path);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  bool has(const std::string& id) const;
  const CatalogEntry& at(const std::string& id) const;

  /// The six zero-potential seed solutions, in catalog order.
  std::vector<Expr> seeds() const;

  /// Printed closed form of the i-th transformed solution (i in 1..6) with
  /// the ansatz parameters substituted. Throws std::out_of_range otherwise.
  Expr ytilde(int i, const AnsatzParams& p) const;
  Expr ytildeExpr(int i) const;  ///< parametric in C, C1

  struct TwofoldExample {
    Expr y1;
    Expr y2;
    Expr fClosed;       ///< contains the gauge parameter K
    Expr newPotential;  ///< contains C and K
  };
  /// The printed superposition example n (1 or 2); expressions are parametric
  /// in C and K.
  TwofoldExample twofoldExample(int n) const;

  Expr h0Expr() const { return at("exponent.h0").expr; }
  Expr s0Expr() const { return at("exponent.s0").expr; }
  Expr potentialFamilyExpr() const { return at("potential.family").expr; }
  Expr potentialExampleExpr() const { return at("potential.example").expr; }

private:
  std::vector<CatalogEntry> entries_;
};

}  // namespace axihelm
