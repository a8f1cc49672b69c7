#include "axihelm/expr.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace axihelm {

namespace {

using Int128 = __int128;

bool fitsInt64(Int128 v) {
  return v >= Int128(INT64_MIN) && v <= Int128(INT64_MAX);
}

std::optional<Rational> normalize128(Int128 n, Int128 d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int128 a = n < 0 ? -n : n;
  Int128 b = d;
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    n /= a;
    d /= a;
  }
  if (!fitsInt64(n) || !fitsInt64(d)) return std::nullopt;
  return Rational{static_cast<long long>(n), static_cast<long long>(d)};
}

}  // namespace

Rational Rational::make(long long n, long long d) {
  auto q = normalize128(Int128(n), Int128(d));
  if (!q) throw std::invalid_argument("rational with zero denominator");
  return *q;
}

double Rational::toDouble() const {
  if (den == 1) return static_cast<double>(num);
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<Rational> ratAdd(const Rational& a, const Rational& b) {
  return normalize128(Int128(a.num) * b.den + Int128(b.num) * a.den, Int128(a.den) * b.den);
}

std::optional<Rational> ratSub(const Rational& a, const Rational& b) {
  return normalize128(Int128(a.num) * b.den - Int128(b.num) * a.den, Int128(a.den) * b.den);
}

std::optional<Rational> ratMul(const Rational& a, const Rational& b) {
  return normalize128(Int128(a.num) * b.num, Int128(a.den) * b.den);
}

std::optional<Rational> ratDiv(const Rational& a, const Rational& b) {
  if (b.num == 0) return std::nullopt;
  return normalize128(Int128(a.num) * b.den, Int128(a.den) * b.num);
}

std::optional<Rational> ratPow(const Rational& a, long long n) {
  if (n == 0) return Rational{1, 1};
  bool inv = n < 0;
  unsigned long long k = inv ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                             : static_cast<unsigned long long>(n);
  Int128 num = 1, den = 1;
  Int128 bn = a.num, bd = a.den;
  const Int128 limit = Int128(1) << 100;
  while (k > 0) {
    if (k & 1ull) {
      num *= bn;
      den *= bd;
      if (num > limit || num < -limit || den > limit) return std::nullopt;
    }
    k >>= 1;
    if (k > 0) {
      bn *= bn;
      bd *= bd;
      if (bn > limit || bn < -limit || bd > limit) return std::nullopt;
    }
  }
  if (inv) {
    if (num == 0) return std::nullopt;
    std::swap(num, den);
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }
  return normalize128(num, den);
}

std::optional<Rational> ratFromDouble(double d) {
  if (!std::isfinite(d)) return std::nullopt;
  if (d == 0.0) return Rational{0, 1};
  int e = 0;
  double m = std::frexp(d, &e);  // d = m * 2^e, |m| in [0.5, 1)
  Int128 mant = static_cast<long long>(std::ldexp(m, 53));
  int shift = e - 53;
  Int128 n = mant, den = 1;
  if (shift >= 0) {
    if (shift > 62) return std::nullopt;
    n <<= shift;
  } else {
    if (-shift > 90) return std::nullopt;
    den <<= -shift;
  }
  return normalize128(n, den);
}

// ---------------------------------------------------------------------------
// Node storage

struct Expr::Node {
  Kind kind;
  Rational value{};       // Number
  Coord coordinate{};     // Var
  std::string paramName;  // Param
  std::vector<Expr> kids;
};

Expr Expr::number(long long num, long long den) { return number(Rational::make(num, den)); }

Expr Expr::number(const Rational& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = q;
  return Expr(std::move(n));
}

Expr Expr::variable(Coord c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->coordinate = c;
  return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Param;
  n->paramName = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::make(Kind k, std::vector<Expr> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  for (const auto& c : n->kids) {
    assert(c.valid());
    (void)c;
  }
  return Expr(std::move(n));
}

Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
Coord Expr::coord() const { return node_->coordinate; }
const std::string& Expr::name() const { return node_->paramName; }
size_t Expr::arity() const { return node_->kids.size(); }
const Expr& Expr::child(size_t i) const { return node_->kids[i]; }

bool Expr::isNumber(long long n, long long d) const {
  return isNumber() && value() == Rational::make(n, d);
}

bool structuralEqual(const Expr& a, const Expr& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Number:
      return a.value() == b.value();
    case Kind::Var:
      return a.coord() == b.coord();
    case Kind::Param:
      return a.name() == b.name();
    default:
      break;
  }
  if (a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.arity(); ++i)
    if (!structuralEqual(a.child(i), b.child(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Params

Params::Params(std::initializer_list<std::pair<std::string, double>> init) {
  for (const auto& kv : init) set(kv.first, kv.second);
}

Params& Params::set(const std::string& name, double value) {
  for (auto& kv : entries_) {
    if (kv.first == name) {
      kv.second = value;
      return *this;
    }
  }
  entries_.emplace_back(name, value);
  return *this;
}

std::optional<double> Params::find(std::string_view name) const {
  for (const auto& kv : entries_)
    if (kv.first == name) return kv.second;
  return std::nullopt;
}

Params Params::merged(const Params& other) const {
  Params out = *this;
  for (const auto& kv : other.entries_) out.set(kv.first, kv.second);
  return out;
}

// ---------------------------------------------------------------------------
// Smart constructors

namespace {

double powInt(double base, long long n) {
  if (n < 0) return 1.0 / powInt(base, -n);
  double acc = 1.0, b = base;
  unsigned long long k = static_cast<unsigned long long>(n);
  while (k > 0) {
    if (k & 1ull) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

/// Fold a binary constant operation only when the exact result, evaluated as a
/// double, is bit-identical to evaluating the unfolded node. Keeps
/// eval(fold(e)) == eval(e) exactly.
std::optional<Rational> foldBinary(Kind k, const Rational& a, const Rational& b) {
  std::optional<Rational> exact;
  double direct = 0.0;
  switch (k) {
    case Kind::Add:
      exact = ratAdd(a, b);
      direct = a.toDouble() + b.toDouble();
      break;
    case Kind::Sub:
      exact = ratSub(a, b);
      direct = a.toDouble() - b.toDouble();
      break;
    case Kind::Mul:
      exact = ratMul(a, b);
      direct = a.toDouble() * b.toDouble();
      break;
    case Kind::Div:
      exact = ratDiv(a, b);
      direct = a.toDouble() / b.toDouble();
      break;
    default:
      return std::nullopt;
  }
  if (!exact) return std::nullopt;
  if (exact->toDouble() != direct) return std::nullopt;
  return exact;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.isNumber(0)) return b;
  if (b.isNumber(0)) return a;
  if (a.isNumber() && b.isNumber())
    if (auto q = foldBinary(Kind::Add, a.value(), b.value())) return Expr::number(*q);
  return Expr::make(Kind::Add, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.isNumber(0)) return a;
  if (a.isNumber(0)) return -b;
  if (a.isNumber() && b.isNumber())
    if (auto q = foldBinary(Kind::Sub, a.value(), b.value())) return Expr::number(*q);
  return Expr::make(Kind::Sub, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.isNumber(0) || b.isNumber(0)) return Expr::number(0);
  if (a.isNumber(1)) return b;
  if (b.isNumber(1)) return a;
  if (a.isNumber() && b.isNumber())
    if (auto q = foldBinary(Kind::Mul, a.value(), b.value())) return Expr::number(*q);
  return Expr::make(Kind::Mul, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.isNumber(1)) return a;
  if (a.isNumber(0) && !(b.isNumber() && b.value().isZero())) return Expr::number(0);
  if (a.isNumber() && b.isNumber() && !b.value().isZero())
    if (auto q = foldBinary(Kind::Div, a.value(), b.value())) return Expr::number(*q);
  return Expr::make(Kind::Div, {a, b});
}

Expr operator-(const Expr& a) {
  if (a.isNumber()) return Expr::number(Rational{-a.value().num, a.value().den});
  if (a.kind() == Kind::Neg) return a.child(0);
  return Expr::make(Kind::Neg, {a});
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.isNumber(1)) return base;
  if (exponent.isNumber(0)) return Expr::number(1);
  if (base.isNumber() && exponent.isNumber() && exponent.value().isInteger()) {
    // Fold only integer^integer staying exact in double, where sequential
    // square-and-multiply evaluation is also exact.
    const Rational& a = base.value();
    long long n = exponent.value().num;
    if (a.isInteger() && std::llabs(n) <= 64) {
      if (auto q = ratPow(a, n)) {
        if (std::llabs(q->num) <= (1ll << 53) && q->den <= (1ll << 53) &&
            q->toDouble() == powInt(a.toDouble(), n))
          return Expr::number(*q);
      }
    }
  }
  return Expr::make(Kind::Pow, {base, exponent});
}

Expr ln(const Expr& a) {
  if (a.isNumber(1)) return Expr::number(0);
  return Expr::make(Kind::Ln, {a});
}

Expr exp(const Expr& a) {
  if (a.isNumber(0)) return Expr::number(1);
  return Expr::make(Kind::Exp, {a});
}

Expr sqrt(const Expr& a) {
  if (a.isNumber() && a.value().num >= 0) {
    const Rational& q = a.value();
    long long rn = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(q.num))));
    long long rd = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(q.den))));
    if (rn * rn == q.num && rd * rd == q.den) {
      Rational root{rn, rd};
      if (root.toDouble() == std::sqrt(q.toDouble())) return Expr::number(root);
    }
  }
  return Expr::make(Kind::Sqrt, {a});
}

Expr abs(const Expr& a) {
  if (a.isNumber()) return Expr::number(Rational{std::llabs(a.value().num), a.value().den});
  return Expr::make(Kind::Abs, {a});
}

// ---------------------------------------------------------------------------
// fold

Expr fold(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Var:
    case Kind::Param:
      return e;
    case Kind::Neg:
      return -fold(e.child(0));
    case Kind::Add:
      return fold(e.child(0)) + fold(e.child(1));
    case Kind::Sub:
      return fold(e.child(0)) - fold(e.child(1));
    case Kind::Mul:
      return fold(e.child(0)) * fold(e.child(1));
    case Kind::Div:
      return fold(e.child(0)) / fold(e.child(1));
    case Kind::Pow:
      return pow(fold(e.child(0)), fold(e.child(1)));
    case Kind::Ln:
      return ln(fold(e.child(0)));
    case Kind::Exp:
      return exp(fold(e.child(0)));
    case Kind::Sqrt:
      return sqrt(fold(e.child(0)));
    case Kind::Abs:
      return abs(fold(e.child(0)));
  }
  return e;
}

// ---------------------------------------------------------------------------
// diff

bool dependsOn(const Expr& e, Coord v) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Param:
      return false;
    case Kind::Var:
      return e.coord() == v;
    default:
      for (size_t i = 0; i < e.arity(); ++i)
        if (dependsOn(e.child(i), v)) return true;
      return false;
  }
}

bool containsVar(const Expr& e) { return dependsOn(e, Coord::R) || dependsOn(e, Coord::Z); }

Expr diff(const Expr& e, Coord v) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Param:
      return Expr::number(0);
    case Kind::Var:
      return Expr::number(e.coord() == v ? 1 : 0);
    case Kind::Neg:
      return -diff(e.child(0), v);
    case Kind::Add:
      return diff(e.child(0), v) + diff(e.child(1), v);
    case Kind::Sub:
      return diff(e.child(0), v) - diff(e.child(1), v);
    case Kind::Mul: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      return diff(a, v) * b + a * diff(b, v);
    }
    case Kind::Div: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      return (diff(a, v) * b - a * diff(b, v)) / pow(b, num(2));
    }
    case Kind::Pow: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      if (!dependsOn(b, v)) {
        return b * pow(a, b - num(1)) * diff(a, v);
      }
      if (!dependsOn(a, v)) {
        return pow(a, b) * ln(a) * diff(b, v);
      }
      return pow(a, b) * (diff(b, v) * ln(a) + b * diff(a, v) / a);
    }
    case Kind::Ln:
      return diff(e.child(0), v) / e.child(0);
    case Kind::Exp:
      return exp(e.child(0)) * diff(e.child(0), v);
    case Kind::Sqrt:
      return diff(e.child(0), v) / (num(2) * sqrt(e.child(0)));
    case Kind::Abs: {
      const Expr& a = e.child(0);
      return (a / abs(a)) * diff(a, v);
    }
  }
  return Expr::number(0);
}

// ---------------------------------------------------------------------------
// eval

namespace {

void requireFinite(double v, const char* what, const Point& pt) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result of ") + what, pt);
}

double evalRec(const Expr& e, const Params& p, const Point& pt) {
  switch (e.kind()) {
    case Kind::Number:
      return e.value().toDouble();
    case Kind::Var:
      return e.coord() == Coord::R ? pt.r : pt.z;
    case Kind::Param: {
      auto v = p.find(e.name());
      if (!v) throw EvalError("unbound parameter '" + e.name() + "'", pt);
      return *v;
    }
    case Kind::Neg:
      return -evalRec(e.child(0), p, pt);
    case Kind::Add: {
      double v = evalRec(e.child(0), p, pt) + evalRec(e.child(1), p, pt);
      requireFinite(v, "addition", pt);
      return v;
    }
    case Kind::Sub: {
      double v = evalRec(e.child(0), p, pt) - evalRec(e.child(1), p, pt);
      requireFinite(v, "subtraction", pt);
      return v;
    }
    case Kind::Mul: {
      double v = evalRec(e.child(0), p, pt) * evalRec(e.child(1), p, pt);
      requireFinite(v, "multiplication", pt);
      return v;
    }
    case Kind::Div: {
      double den = evalRec(e.child(1), p, pt);
      if (den == 0.0) throw EvalError("division by zero", pt);
      double v = evalRec(e.child(0), p, pt) / den;
      requireFinite(v, "division", pt);
      return v;
    }
    case Kind::Pow: {
      double a = evalRec(e.child(0), p, pt);
      double b = evalRec(e.child(1), p, pt);
      double v;
      if (b == std::rint(b) && std::fabs(b) <= 1e9) {
        long long n = static_cast<long long>(b);
        if (a == 0.0 && n < 0) throw EvalError("zero base with negative exponent", pt);
        v = powInt(a, n);
      } else {
        // Non-integer exponents are defined for positive bases only.
        if (a <= 0.0) throw EvalError("non-integer power of a non-positive base", pt);
        v = std::pow(a, b);
      }
      requireFinite(v, "power", pt);
      return v;
    }
    case Kind::Ln: {
      double a = evalRec(e.child(0), p, pt);
      if (a <= 0.0) throw EvalError("ln of a non-positive argument", pt);
      double v = std::log(a);
      requireFinite(v, "ln", pt);
      return v;
    }
    case Kind::Exp: {
      double v = std::exp(evalRec(e.child(0), p, pt));
      requireFinite(v, "exp", pt);
      return v;
    }
    case Kind::Sqrt: {
      double a = evalRec(e.child(0), p, pt);
      if (a < 0.0) throw EvalError("sqrt of a negative argument", pt);
      return std::sqrt(a);
    }
    case Kind::Abs:
      return std::fabs(evalRec(e.child(0), p, pt));
  }
  throw EvalError("corrupt expression node", pt);
}

}  // namespace

double eval(const Expr& e, const Params& p, const Point& pt) {
  if (!(pt.r > 0.0)) throw EvalError("evaluation point outside the half-plane r > 0", pt);
  return evalRec(e, p, pt);
}

// ---------------------------------------------------------------------------
// substitute / freeParams / dagSize

Expr substitute(const Expr& e, const Params& p) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Var:
      return e;
    case Kind::Param: {
      auto v = p.find(e.name());
      if (!v) return e;
      if (auto q = ratFromDouble(*v)) return Expr::number(*q);
      return e;  // no exact small-rational form; stays symbolic
    }
    default: {
      std::vector<Expr> kids;
      kids.reserve(e.arity());
      bool changed = false;
      for (size_t i = 0; i < e.arity(); ++i) {
        kids.push_back(substitute(e.child(i), p));
        changed = changed || !structuralEqual(kids.back(), e.child(i));
      }
      if (!changed) return e;
      return Expr::make(e.kind(), std::move(kids));
    }
  }
}

namespace {
void collectParams(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Kind::Param) {
    out.insert(e.name());
    return;
  }
  for (size_t i = 0; i < e.arity(); ++i) collectParams(e.child(i), out);
}
}  // namespace

std::vector<std::string> freeParams(const Expr& e) {
  std::set<std::string> s;
  collectParams(e, s);
  return std::vector<std::string>(s.begin(), s.end());
}

Expr ExprTerms::sum() const {
  if (terms.empty()) return Expr::number(0);
  Expr s = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) s = s + terms[i];
  return s;
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = parseExpr();
    skipWs();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  std::string_view text_;
  size_t pos_ = 0;

  void skipWs() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peekChar(char c) {
    skipWs();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peekChar(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parseExpr() {
    Expr e = parseTerm();
    for (;;) {
      if (consume('+'))
        e = Expr::make(Kind::Add, {e, parseTerm()});
      else if (consume('-'))
        e = Expr::make(Kind::Sub, {e, parseTerm()});
      else
        return e;
    }
  }

  Expr parseTerm() {
    Expr e = parseFactor();
    for (;;) {
      if (consume('*'))
        e = Expr::make(Kind::Mul, {e, parseFactor()});
      else if (consume('/'))
        e = Expr::make(Kind::Div, {e, parseFactor()});
      else
        return e;
    }
  }

  Expr parseFactor() {
    Expr base = parseUnary();
    if (consume('^')) {
      Expr exponent = parseFactor();  // right-associative
      return Expr::make(Kind::Pow, {base, exponent});
    }
    return base;
  }

  Expr parseUnary() {
    if (consume('-')) {
      Expr inner = parseUnary();
      if (inner.isNumber())  // negative literals fold at the lexical level
        return Expr::number(Rational{-inner.value().num, inner.value().den});
      return Expr::make(Kind::Neg, {inner});
    }
    return parseAtom();
  }

  Expr parseAtom() {
    skipWs();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parseExpr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parseNumber();
    if (std::isalpha(static_cast<unsigned char>(c))) return parseIdent();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parseNumber() {
    size_t start = pos_;
    Int128 mantissa = 0;
    int fracDigits = 0;
    auto pushDigit = [&](char d) {
      mantissa = mantissa * 10 + (d - '0');
      if (mantissa > (Int128(1) << 100)) throw ParseError("numeric literal out of range", start);
    };
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      pushDigit(text_[pos_++]);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("digit expected after decimal point", pos_);
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pushDigit(text_[pos_++]);
        ++fracDigits;
      }
    }
    long long exp10 = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t save = pos_++;
      bool negExp = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        negExp = (text_[pos_++] == '-');
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = save;  // the 'e' belongs to an identifier context; not part of the number
      } else {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          exp10 = exp10 * 10 + (text_[pos_] - '0');
          if (exp10 > 40) throw ParseError("numeric literal out of range", start);
          ++pos_;
        }
        if (negExp) exp10 = -exp10;
      }
    }
    long long scale = exp10 - fracDigits;
    Int128 n = mantissa, d = 1;
    for (long long i = 0; i < scale; ++i) {
      n *= 10;
      if (n > (Int128(1) << 120)) throw ParseError("numeric literal out of range", start);
    }
    for (long long i = 0; i < -scale; ++i) {
      d *= 10;
      if (d > (Int128(1) << 120)) throw ParseError("numeric literal out of range", start);
    }
    auto q = normalize128(n, d);
    if (!q) throw ParseError("numeric literal out of range", start);
    return Expr::number(*q);
  }

  Expr parseIdent() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (peekChar('(')) {
      Kind k;
      if (name == "ln")
        k = Kind::Ln;
      else if (name == "exp")
        k = Kind::Exp;
      else if (name == "sqrt")
        k = Kind::Sqrt;
      else if (name == "abs")
        k = Kind::Abs;
      else
        throw ParseError("unknown function '" + name + "'", start);
      ++pos_;  // '('
      Expr arg = parseExpr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return Expr::make(k, {arg});
    }
    if (name == "r") return Expr::variable(Coord::R);
    if (name == "z") return Expr::variable(Coord::Z);
    return Expr::parameter(name);
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// printer

namespace {

constexpr int PREC_ADD = 1;
constexpr int PREC_MUL = 2;
constexpr int PREC_NEG = 3;
constexpr int PREC_POW = 4;
constexpr int PREC_ATOM = 5;

/// Exact decimal string for n / (2^a * 5^b); empty if not of that shape or too long.
std::string decimalString(const Rational& q) {
  if (q.den == 1) return std::to_string(q.num);
  long long d = q.den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return {};
  int k = std::max(twos, fives);
  if (k > 24) return {};
  Int128 scaled = q.num;
  for (int i = 0; i < k - twos; ++i) scaled *= 2;
  for (int i = 0; i < k - fives; ++i) scaled *= 5;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits;
  if (scaled == 0) digits = "0";
  while (scaled > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (static_cast<int>(digits.size()) <= k) digits.push_back('0');
  std::reverse(digits.begin(), digits.end());
  std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
  if (neg) out = "-" + out;
  return out;
}

struct Printed {
  std::string text;
  int prec;
};

Printed render(const Expr& e);

std::string wrapBelow(const Expr& e, int minPrec) {
  Printed p = render(e);
  if (p.prec < minPrec) return "(" + p.text + ")";
  return p.text;
}

Printed render(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number: {
      const Rational& q = e.value();
      std::string dec = decimalString(q);
      if (!dec.empty()) return {dec, q.num < 0 ? PREC_NEG : PREC_ATOM};
      std::string text = std::to_string(q.num) + "/" + std::to_string(q.den);
      return {text, PREC_MUL};
    }
    case Kind::Var:
      return {e.coord() == Coord::R ? "r" : "z", PREC_ATOM};
    case Kind::Param:
      return {e.name(), PREC_ATOM};
    case Kind::Neg: {
      Printed inner = render(e.child(0));
      if (inner.prec < PREC_NEG || e.child(0).kind() == Kind::Pow)
        inner.text = "(" + inner.text + ")";
      return {"-" + inner.text, PREC_NEG};
    }
    case Kind::Add:
      return {wrapBelow(e.child(0), PREC_ADD) + "+" + wrapBelow(e.child(1), PREC_ADD + 1),
              PREC_ADD};
    case Kind::Sub:
      return {wrapBelow(e.child(0), PREC_ADD) + "-" + wrapBelow(e.child(1), PREC_ADD + 1),
              PREC_ADD};
    case Kind::Mul:
      return {wrapBelow(e.child(0), PREC_MUL) + "*" + wrapBelow(e.child(1), PREC_MUL + 1),
              PREC_MUL};
    case Kind::Div:
      return {wrapBelow(e.child(0), PREC_MUL) + "/" + wrapBelow(e.child(1), PREC_MUL + 1),
              PREC_MUL};
    case Kind::Pow: {
      // Base must render as a grammar atom; the exponent slot accepts unary.
      std::string base = wrapBelow(e.child(0), PREC_ATOM);
      std::string expo = wrapBelow(e.child(1), PREC_NEG);
      return {base + "^" + expo, PREC_POW};
    }
    case Kind::Ln:
      return {"ln(" + render(e.child(0)).text + ")", PREC_ATOM};
    case Kind::Exp:
      return {"exp(" + render(e.child(0)).text + ")", PREC_ATOM};
    case Kind::Sqrt:
      return {"sqrt(" + render(e.child(0)).text + ")", PREC_ATOM};
    case Kind::Abs:
      return {"abs(" + render(e.child(0)).text + ")", PREC_ATOM};
  }
  return {"?", PREC_ATOM};
}

}  // namespace

std::string print(const Expr& e) { return render(e).text; }

}  // namespace axihelm
