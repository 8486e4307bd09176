#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvloci {

// Malformed expression text. `offset` is the byte position of the first
// offending character.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& message, std::size_t offset_)
      : std::runtime_error(message), offset(offset_) {}
};

// Evaluation singularity: division by zero, sqrt of a non-positive argument.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value, gradient and Hessian of a scalar field at a point. The Hessian is
// symmetric by construction: only dxy is stored.
struct Jet2 {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dxy = 0.0;
  double dyy = 0.0;
};

Jet2 operator+(const Jet2& u, const Jet2& v);
Jet2 operator-(const Jet2& u, const Jet2& v);
Jet2 operator-(const Jet2& u);
Jet2 operator*(const Jet2& u, const Jet2& v);
Jet2 operator/(const Jet2& u, const Jet2& v);
Jet2 jet_pow(const Jet2& u, int exponent);

struct ExprNode;

// Immutable expression tree over variables {x, y}, numeric literals,
// {+, -, *, /, ^int} and {sin, cos, exp, sqrt}. Copies are shallow.
class Expr {
 public:
  enum class Func { Sin, Cos, Exp, Sqrt };

  Expr() = default;

  static Expr number(double value);
  static Expr x();
  static Expr y();
  static Expr call(Func f, const Expr& argument);

  bool valid() const { return node_ != nullptr; }

  Expr operator-() const;
  Expr pow(int exponent) const;

  friend Expr operator+(const Expr&, const Expr&);
  friend Expr operator-(const Expr&, const Expr&);
  friend Expr operator*(const Expr&, const Expr&);
  friend Expr operator/(const Expr&, const Expr&);

  // Printing uses enough digits that re-parsing reproduces the tree exactly.
  std::string to_string() const;
  bool structurally_equal(const Expr& other) const;

  // Exact second-order Taylor data at (x0, y0); jet arithmetic propagates
  // product and chain rules through every operator and function.
  Jet2 jet2_at(double x0, double y0) const;

  double value_at(double x0, double y0) const;
  // Extended-precision plain evaluation, for finite-difference oracles.
  long double value_at_ld(long double x0, long double y0) const;

  // Composition with the affine source map
  //   x <- x0 + r00*u + r01*w,   y <- y0 + r10*u + r11*w.
  // Terms with exact-zero coefficients are dropped, so axis-aligned maps
  // stay bit-exact.
  Expr substitute_affine(double x0, double y0, double r00, double r01,
                         double r10, double r11) const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
  friend Expr parse_expression(std::string_view);
  friend struct ExprOps;
};

// Grammar documented in docs/grammar.md. Throws ParseError with the byte
// offset on syntax errors, unknown identifiers and non-integer exponents.
Expr parse_expression(std::string_view text);

inline Jet2 jet2(const Expr& e, double x0, double y0) { return e.jet2_at(x0, y0); }

}  // namespace curvloci
