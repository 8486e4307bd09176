#include "curvloci/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace curvloci {

enum class ExprKind { Number, VarX, VarY, Negate, Add, Sub, Mul, Div, Pow, Call };

struct ExprNode {
  ExprKind kind;
  double number = 0.0;
  int exponent = 0;
  Expr::Func func = Expr::Func::Sin;
  std::shared_ptr<const ExprNode> a;
  std::shared_ptr<const ExprNode> b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Number;
  n->number = v;
  return n;
}

NodePtr make_var(ExprKind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

NodePtr make_unary(ExprKind k, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(ExprKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_pow(NodePtr base, int exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Pow;
  n->exponent = exponent;
  n->a = std::move(base);
  return n;
}

NodePtr make_call(Expr::Func f, NodePtr arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Call;
  n->func = f;
  n->a = std::move(arg);
  return n;
}

Jet2 jet_chain(const Jet2& g, double f, double fp, double fpp) {
  Jet2 r;
  r.value = f;
  r.dx = fp * g.dx;
  r.dy = fp * g.dy;
  r.dxx = fpp * g.dx * g.dx + fp * g.dxx;
  r.dxy = fpp * g.dx * g.dy + fp * g.dxy;
  r.dyy = fpp * g.dy * g.dy + fp * g.dyy;
  return r;
}

}  // namespace

Jet2 operator+(const Jet2& u, const Jet2& v) {
  return {u.value + v.value, u.dx + v.dx,   u.dy + v.dy,
          u.dxx + v.dxx,     u.dxy + v.dxy, u.dyy + v.dyy};
}

Jet2 operator-(const Jet2& u, const Jet2& v) {
  return {u.value - v.value, u.dx - v.dx,   u.dy - v.dy,
          u.dxx - v.dxx,     u.dxy - v.dxy, u.dyy - v.dyy};
}

Jet2 operator-(const Jet2& u) {
  return {-u.value, -u.dx, -u.dy, -u.dxx, -u.dxy, -u.dyy};
}

Jet2 operator*(const Jet2& u, const Jet2& v) {
  Jet2 r;
  r.value = u.value * v.value;
  r.dx = u.dx * v.value + u.value * v.dx;
  r.dy = u.dy * v.value + u.value * v.dy;
  r.dxx = u.dxx * v.value + 2.0 * u.dx * v.dx + u.value * v.dxx;
  r.dxy = u.dxy * v.value + u.dx * v.dy + u.dy * v.dx + u.value * v.dxy;
  r.dyy = u.dyy * v.value + 2.0 * u.dy * v.dy + u.value * v.dyy;
  return r;
}

Jet2 operator/(const Jet2& u, const Jet2& w) {
  if (w.value == 0.0) throw EvalError("division by zero");
  Jet2 q;
  q.value = u.value / w.value;
  q.dx = (u.dx - q.value * w.dx) / w.value;
  q.dy = (u.dy - q.value * w.dy) / w.value;
  q.dxx = (u.dxx - 2.0 * q.dx * w.dx - q.value * w.dxx) / w.value;
  q.dxy = (u.dxy - q.dx * w.dy - q.dy * w.dx - q.value * w.dxy) / w.value;
  q.dyy = (u.dyy - 2.0 * q.dy * w.dy - q.value * w.dyy) / w.value;
  return q;
}

Jet2 jet_pow(const Jet2& u, int exponent) {
  if (exponent == 0) return Jet2{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  if (exponent < 0) return Jet2{1.0, 0.0, 0.0, 0.0, 0.0, 0.0} / jet_pow(u, -exponent);
  Jet2 r = u;
  for (int i = 1; i < exponent; ++i) r = r * u;
  return r;
}

// ---------------------------------------------------------------------------
// builders

Expr Expr::number(double value) { return Expr(make_number(value)); }
Expr Expr::x() { return Expr(make_var(ExprKind::VarX)); }
Expr Expr::y() { return Expr(make_var(ExprKind::VarY)); }
Expr Expr::call(Func f, const Expr& argument) { return Expr(make_call(f, argument.node_)); }
Expr Expr::operator-() const { return Expr(make_unary(ExprKind::Negate, node_)); }
Expr Expr::pow(int exponent) const { return Expr(make_pow(node_, exponent)); }
Expr operator+(const Expr& a, const Expr& b) { return Expr(make_binary(ExprKind::Add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_binary(ExprKind::Sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_binary(ExprKind::Mul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_binary(ExprKind::Div, a.node_, b.node_)); }

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", 0);
    NodePtr e = parse_expression();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at byte " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') ++pos_;
      else break;
    }
  }

  int peek() {
    skip_ws();
    return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1;
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expression() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+')) lhs = make_binary(ExprKind::Add, lhs, parse_term());
      else if (consume('-')) lhs = make_binary(ExprKind::Sub, lhs, parse_term());
      else return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (consume('*')) lhs = make_binary(ExprKind::Mul, lhs, parse_factor());
      else if (consume('/')) lhs = make_binary(ExprKind::Div, lhs, parse_factor());
      else return lhs;
    }
  }

  NodePtr parse_factor() {
    if (consume('-')) {
      NodePtr inner = parse_factor();
      if (inner->kind == ExprKind::Number) return make_number(-inner->number);
      return make_unary(ExprKind::Negate, inner);
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (consume('^')) {
      skip_ws();
      std::size_t at = pos_;
      NodePtr e = parse_factor();
      double v = fold_constant(e.get(), at);
      double r = std::nearbyint(v);
      if (!(v == r) || std::fabs(r) > 1e9)
        throw ParseError("non-integer exponent at byte " + std::to_string(at), at);
      return make_pow(base, static_cast<int>(r));
    }
    return base;
  }

  NodePtr parse_primary() {
    int c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(c)) return parse_number();
    if (std::isalpha(c) || c == '_') return parse_identifier();
    fail("unexpected character");
  }

  NodePtr parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed number literal");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_number(v);
  }

  NodePtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return make_var(ExprKind::VarX);
    if (name == "y") return make_var(ExprKind::VarY);
    if (peek() == '(') {
      Expr::Func f;
      if (name == "sin") f = Expr::Func::Sin;
      else if (name == "cos") f = Expr::Func::Cos;
      else if (name == "exp") f = Expr::Func::Exp;
      else if (name == "sqrt") f = Expr::Func::Sqrt;
      else throw ParseError("unknown function '" + name + "' at byte " + std::to_string(start), start);
      ++pos_;  // '('
      NodePtr arg = parse_expression();
      if (!consume(')')) fail("expected ')'");
      return make_call(f, arg);
    }
    throw ParseError("unknown identifier '" + name + "' at byte " + std::to_string(start), start);
  }

  double fold_constant(const ExprNode* n, std::size_t at) const {
    switch (n->kind) {
      case ExprKind::Number: return n->number;
      case ExprKind::VarX:
      case ExprKind::VarY:
        throw ParseError("exponent must be constant at byte " + std::to_string(at), at);
      case ExprKind::Negate: return -fold_constant(n->a.get(), at);
      case ExprKind::Add: return fold_constant(n->a.get(), at) + fold_constant(n->b.get(), at);
      case ExprKind::Sub: return fold_constant(n->a.get(), at) - fold_constant(n->b.get(), at);
      case ExprKind::Mul: return fold_constant(n->a.get(), at) * fold_constant(n->b.get(), at);
      case ExprKind::Div: return fold_constant(n->a.get(), at) / fold_constant(n->b.get(), at);
      case ExprKind::Pow: return std::pow(fold_constant(n->a.get(), at), n->exponent);
      case ExprKind::Call: {
        double g = fold_constant(n->a.get(), at);
        switch (n->func) {
          case Expr::Func::Sin: return std::sin(g);
          case Expr::Func::Cos: return std::cos(g);
          case Expr::Func::Exp: return std::exp(g);
          case Expr::Func::Sqrt: return std::sqrt(g);
        }
      }
    }
    throw ParseError("bad exponent", at);
  }
};

}  // namespace

Expr parse_expression(std::string_view text) { return Expr(Parser(text).run()); }

// ---------------------------------------------------------------------------
// printing

namespace {

const char* func_name(Expr::Func f) {
  switch (f) {
    case Expr::Func::Sin: return "sin";
    case Expr::Func::Cos: return "cos";
    case Expr::Func::Exp: return "exp";
    case Expr::Func::Sqrt: return "sqrt";
  }
  return "?";
}

int node_prec(const ExprNode* n) {
  switch (n->kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Negate: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
  }
}

void print_number(double v, std::string& out) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (v < 0.0 || std::signbit(v)) {
    out += '(';
    out += buf;
    out += ')';
  } else {
    out += buf;
  }
}

void print_node(const ExprNode* n, int min_prec, std::string& out) {
  const int prec = node_prec(n);
  const bool wrap = prec < min_prec && n->kind != ExprKind::Number;
  if (wrap) out += '(';
  switch (n->kind) {
    case ExprKind::Number: print_number(n->number, out); break;
    case ExprKind::VarX: out += 'x'; break;
    case ExprKind::VarY: out += 'y'; break;
    case ExprKind::Negate:
      out += '-';
      print_node(n->a.get(), 3, out);
      break;
    case ExprKind::Add:
      print_node(n->a.get(), 1, out);
      out += " + ";
      print_node(n->b.get(), 2, out);
      break;
    case ExprKind::Sub:
      print_node(n->a.get(), 1, out);
      out += " - ";
      print_node(n->b.get(), 2, out);
      break;
    case ExprKind::Mul:
      print_node(n->a.get(), 2, out);
      out += '*';
      print_node(n->b.get(), 3, out);
      break;
    case ExprKind::Div:
      print_node(n->a.get(), 2, out);
      out += '/';
      print_node(n->b.get(), 3, out);
      break;
    case ExprKind::Pow:
      print_node(n->a.get(), 5, out);
      out += '^';
      if (n->exponent >= 0) {
        out += std::to_string(n->exponent);
      } else {
        out += "(-" + std::to_string(-static_cast<long long>(n->exponent)) + ")";
      }
      break;
    case ExprKind::Call:
      out += func_name(n->func);
      out += '(';
      print_node(n->a.get(), 0, out);
      out += ')';
      break;
  }
  if (wrap) out += ')';
}

bool nodes_equal(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Number: return a->number == b->number;
    case ExprKind::VarX:
    case ExprKind::VarY: return true;
    case ExprKind::Negate: return nodes_equal(a->a.get(), b->a.get());
    case ExprKind::Pow:
      return a->exponent == b->exponent && nodes_equal(a->a.get(), b->a.get());
    case ExprKind::Call:
      return a->func == b->func && nodes_equal(a->a.get(), b->a.get());
    default:
      return nodes_equal(a->a.get(), b->a.get()) && nodes_equal(a->b.get(), b->b.get());
  }
}

Jet2 eval_jet(const ExprNode* n, double x0, double y0) {
  switch (n->kind) {
    case ExprKind::Number: return Jet2{n->number, 0, 0, 0, 0, 0};
    case ExprKind::VarX: return Jet2{x0, 1, 0, 0, 0, 0};
    case ExprKind::VarY: return Jet2{y0, 0, 1, 0, 0, 0};
    case ExprKind::Negate: return -eval_jet(n->a.get(), x0, y0);
    case ExprKind::Add: return eval_jet(n->a.get(), x0, y0) + eval_jet(n->b.get(), x0, y0);
    case ExprKind::Sub: return eval_jet(n->a.get(), x0, y0) - eval_jet(n->b.get(), x0, y0);
    case ExprKind::Mul: return eval_jet(n->a.get(), x0, y0) * eval_jet(n->b.get(), x0, y0);
    case ExprKind::Div: return eval_jet(n->a.get(), x0, y0) / eval_jet(n->b.get(), x0, y0);
    case ExprKind::Pow: return jet_pow(eval_jet(n->a.get(), x0, y0), n->exponent);
    case ExprKind::Call: {
      Jet2 g = eval_jet(n->a.get(), x0, y0);
      switch (n->func) {
        case Expr::Func::Sin: return jet_chain(g, std::sin(g.value), std::cos(g.value), -std::sin(g.value));
        case Expr::Func::Cos: return jet_chain(g, std::cos(g.value), -std::sin(g.value), -std::cos(g.value));
        case Expr::Func::Exp: {
          double e = std::exp(g.value);
          return jet_chain(g, e, e, e);
        }
        case Expr::Func::Sqrt: {
          if (g.value <= 0.0) throw EvalError("sqrt of non-positive argument");
          double s = std::sqrt(g.value);
          return jet_chain(g, s, 0.5 / s, -0.25 / (s * g.value));
        }
      }
    }
  }
  throw EvalError("invalid expression node");
}

template <typename T>
T eval_value(const ExprNode* n, T x0, T y0) {
  switch (n->kind) {
    case ExprKind::Number: return static_cast<T>(n->number);
    case ExprKind::VarX: return x0;
    case ExprKind::VarY: return y0;
    case ExprKind::Negate: return -eval_value(n->a.get(), x0, y0);
    case ExprKind::Add: return eval_value(n->a.get(), x0, y0) + eval_value(n->b.get(), x0, y0);
    case ExprKind::Sub: return eval_value(n->a.get(), x0, y0) - eval_value(n->b.get(), x0, y0);
    case ExprKind::Mul: return eval_value(n->a.get(), x0, y0) * eval_value(n->b.get(), x0, y0);
    case ExprKind::Div: {
      T d = eval_value(n->b.get(), x0, y0);
      if (d == T(0)) throw EvalError("division by zero");
      return eval_value(n->a.get(), x0, y0) / d;
    }
    case ExprKind::Pow: {
      T b = eval_value(n->a.get(), x0, y0);
      int e = n->exponent;
      if (e == 0) return T(1);
      bool inv = e < 0;
      if (inv) e = -e;
      T r = b;
      for (int i = 1; i < e; ++i) r = r * b;
      if (inv) {
        if (r == T(0)) throw EvalError("division by zero");
        return T(1) / r;
      }
      return r;
    }
    case ExprKind::Call: {
      T g = eval_value(n->a.get(), x0, y0);
      switch (n->func) {
        case Expr::Func::Sin: return std::sin(g);
        case Expr::Func::Cos: return std::cos(g);
        case Expr::Func::Exp: return std::exp(g);
        case Expr::Func::Sqrt:
          if (g < T(0)) throw EvalError("sqrt of negative argument");
          return std::sqrt(g);
      }
    }
  }
  throw EvalError("invalid expression node");
}

// Builds c0 + cx*x + cy*y, dropping exact-zero terms.
NodePtr affine_node(double c0, double cx, double cy) {
  NodePtr acc;
  auto add_term = [&acc](NodePtr t) {
    acc = acc ? make_binary(ExprKind::Add, acc, std::move(t)) : std::move(t);
  };
  if (c0 != 0.0) add_term(make_number(c0));
  if (cx != 0.0) {
    NodePtr v = make_var(ExprKind::VarX);
    add_term(cx == 1.0 ? std::move(v) : make_binary(ExprKind::Mul, make_number(cx), std::move(v)));
  }
  if (cy != 0.0) {
    NodePtr v = make_var(ExprKind::VarY);
    add_term(cy == 1.0 ? std::move(v) : make_binary(ExprKind::Mul, make_number(cy), std::move(v)));
  }
  return acc ? acc : make_number(0.0);
}

NodePtr substitute(const ExprNode* n, const NodePtr& sx, const NodePtr& sy) {
  switch (n->kind) {
    case ExprKind::Number: return make_number(n->number);
    case ExprKind::VarX: return sx;
    case ExprKind::VarY: return sy;
    case ExprKind::Negate: return make_unary(ExprKind::Negate, substitute(n->a.get(), sx, sy));
    case ExprKind::Pow: return make_pow(substitute(n->a.get(), sx, sy), n->exponent);
    case ExprKind::Call: return make_call(n->func, substitute(n->a.get(), sx, sy));
    default:
      return make_binary(n->kind, substitute(n->a.get(), sx, sy), substitute(n->b.get(), sx, sy));
  }
}

}  // namespace

std::string Expr::to_string() const {
  if (!node_) return "";
  std::string out;
  print_node(node_.get(), 0, out);
  return out;
}

bool Expr::structurally_equal(const Expr& other) const {
  return nodes_equal(node_.get(), other.node_.get());
}

Jet2 Expr::jet2_at(double x0, double y0) const {
  if (!node_) throw EvalError("empty expression");
  return eval_jet(node_.get(), x0, y0);
}

double Expr::value_at(double x0, double y0) const {
  if (!node_) throw EvalError("empty expression");
  return eval_value<double>(node_.get(), x0, y0);
}

long double Expr::value_at_ld(long double x0, long double y0) const {
  if (!node_) throw EvalError("empty expression");
  return eval_value<long double>(node_.get(), x0, y0);
}

Expr Expr::substitute_affine(double x0, double y0, double r00, double r01,
                             double r10, double r11) const {
  if (!node_) return Expr();
  NodePtr sx = affine_node(x0, r00, r01);
  NodePtr sy = affine_node(y0, r10, r11);
  return Expr(substitute(node_.get(), sx, sy));
}

}  // namespace curvloci
