#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace axihelm {

/// Node kinds of the expression tree. The set is closed under diff().
enum class Kind {
  Number,  ///< exact rational literal
  Var,     ///< coordinate r or z
  Param,   ///< named parameter, bound at evaluation time
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Ln,
  Exp,
  Sqrt,
  Abs
};

enum class Coord { R, Z };

/// Exact rational with 64-bit components; normalized so den > 0, gcd(num,den) = 1.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long n, long long d);
  double toDouble() const;
  bool isInteger() const { return den == 1; }
  bool isZero() const { return num == 0; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// Checked exact arithmetic; nullopt on overflow of the int64 representation.
std::optional<Rational> ratAdd(const Rational& a, const Rational& b);
std::optional<Rational> ratSub(const Rational& a, const Rational& b);
std::optional<Rational> ratMul(const Rational& a, const Rational& b);
std::optional<Rational> ratDiv(const Rational& a, const Rational& b);
std::optional<Rational> ratPow(const Rational& a, long long n);
/// Exact rational equal to the double d, when it fits the int64 representation.
std::optional<Rational> ratFromDouble(double d);

/// Point of the (r, z) half-plane; r strictly positive.
struct Point {
  double r = 1.0;
  double z = 0.0;
};

class EvalError : public std::runtime_error {
public:
  EvalError(const std::string& what, std::optional<Point> where = std::nullopt)
      : std::runtime_error(what), point(where) {}
  std::optional<Point> point;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, size_t byteOffset)
      : std::runtime_error(what + " at offset " + std::to_string(byteOffset)),
        offset(byteOffset) {}
  size_t offset;
};

/// Parameter bindings (name -> value). Small flat map; lookups are linear.
class Params {
public:
  Params() = default;
  Params(std::initializer_list<std::pair<std::string, double>> init);
  Params& set(const std::string& name, double value);
  std::optional<double> find(std::string_view name) const;
  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
  Params merged(const Params& other) const;  // other wins on collisions

private:
  std::vector<std::pair<std::string, double>> entries_;
};

/// Immutable symbolic expression over r, z and named parameters.
/// Copies are cheap (shared subtrees); all operations build new trees.
class Expr {
public:
  Expr() = default;  // empty handle; using it is a programmer error

  static Expr number(long long num, long long den = 1);
  static Expr number(const Rational& q);
  static Expr variable(Coord c);
  static Expr parameter(std::string name);
  /// Raw node construction; applies no rewrites (used by the parser).
  static Expr make(Kind k, std::vector<Expr> kids);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  const Rational& value() const;      // Number only
  Coord coord() const;                // Var only
  const std::string& name() const;    // Param only
  size_t arity() const;
  const Expr& child(size_t i) const;

  bool isNumber() const { return valid() && kind() == Kind::Number; }
  bool isNumber(long long n, long long d = 1) const;

private:
  struct Node;
  std::shared_ptr<const Node> node_;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

/// Structural equality (same tree shape and payloads).
bool structuralEqual(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return structuralEqual(a, b); }
inline bool operator!=(const Expr& a, const Expr& b) { return !structuralEqual(a, b); }

// Smart constructors: apply only exact rewrites (x+0 -> x, 0*x -> 0, x^1 -> x,
// constant folding when the folded double value matches the unfolded evaluation
// bit for bit). Builder code and diff() use these.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr ln(const Expr& a);
Expr exp(const Expr& a);
Expr sqrt(const Expr& a);
Expr abs(const Expr& a);

inline Expr num(long long n, long long d = 1) { return Expr::number(n, d); }
inline Expr rvar() { return Expr::variable(Coord::R); }
inline Expr zvar() { return Expr::variable(Coord::Z); }
inline Expr param(std::string name) { return Expr::parameter(std::move(name)); }

/// Parse per the expression grammar; throws ParseError with byte offset.
Expr parse(std::string_view text);

/// Render to text that reparses to the same structure (for fold-normalized trees).
std::string print(const Expr& e);

/// Exact symbolic partial derivative; parameters are constants.
Expr diff(const Expr& e, Coord v);

/// Constant folding and exact identity rewrites; preserves pointwise evaluation.
Expr fold(const Expr& e);

/// Evaluate at a point. Throws EvalError on unbound parameters and on any
/// non-finite intermediate (division by zero, ln of a non-positive argument, ...).
double eval(const Expr& e, const Params& p, const Point& pt);

bool dependsOn(const Expr& e, Coord v);
bool containsVar(const Expr& e);

/// Replace parameters that are bound in p and exactly representable as small
/// rationals; parameters with no exact representation are left symbolic.
Expr substitute(const Expr& e, const Params& p);

/// Sorted unique names of the parameters occurring in e.
std::vector<std::string> freeParams(const Expr& e);

/// A formal sum kept as a term list, so residuals can be scale-normalized by
/// the magnitudes of their constituent terms.
struct ExprTerms {
  std::vector<Expr> terms;
  Expr sum() const;
  ExprTerms& add(const Expr& t) {
    terms.push_back(t);
    return *this;
  }
};

}  // namespace axihelm
