#ifndef FRAMECURV_EXPR_HPP
#define FRAMECURV_EXPR_HPP

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framecurv/dual.hpp"
#include "framecurv/errors.hpp"

namespace framecurv {

enum class FuncId {
  Sin,
  Cos,
  Tan,
  Cot,
  Sec,
  Csc,
  Exp,
  Log,
  Sqrt,
  Sinh,
  Cosh,
  Tanh,
};

const char* func_name(FuncId f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over numeric literals, chart coordinates,
/// the constants pi and e, unary negation, the binary operators
/// + - * / ^ and a fixed set of elementary functions. Trees are shared
/// freely across threads once built.
struct Expr {
  enum class Kind { Literal, Constant, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double value = 0.0;        // Literal and Constant
  std::string name;          // Var (coordinate name) / Constant (pi, e)
  int var_index = -1;        // Var: position in the chart coordinate list
  FuncId func = FuncId::Sin; // Call
  ExprPtr lhs;               // unary operand / left operand / call argument
  ExprPtr rhs;               // right operand of binary ops
  std::size_t src_offset = 0;
};

// Construction helpers. A negative literal value is canonicalized to
// Neg(Literal(|v|)) so printed text always re-parses to the same tree.
ExprPtr make_literal(double v);
ExprPtr make_var(int index, std::string name);
ExprPtr make_neg(ExprPtr x);
ExprPtr make_binary(Expr::Kind op, ExprPtr a, ExprPtr b);
ExprPtr make_call(FuncId f, ExprPtr arg);

/// Parse `source` against the given coordinate-name list. Throws
/// ParseError with a byte offset on syntax errors and on identifiers that
/// are not a coordinate, function, or constant.
ExprPtr parse_expression(std::string_view source,
                         std::span<const std::string> coords);

/// Normalized text form; parse(print(ast)) rebuilds a structurally
/// identical tree and print is idempotent on its own output.
std::string print_expression(const Expr& e);
inline std::string print_expression(const ExprPtr& e) {
  return print_expression(*e);
}

bool structurally_equal(const Expr& a, const Expr& b);

namespace detail {

[[noreturn]] void throw_domain_error(const char* what, std::size_t offset,
                                     double arg);

// x^y for arbitrary scalar types. Integer exponents (|n| <= 64, tangent-free)
// go through exact exponentiation by squaring, which is also the only legal
// route for negative bases; everything else uses exp(y*log x).
template <class T>
T pow_generic(const T& base, const T& expo, std::size_t offset) {
  double pb = primal(base);
  double pe = primal(expo);
  bool integral = std::nearbyint(pe) == pe && std::abs(pe) <= 64.0;
  if (integral && !has_nonzero_tangent(expo)) {
    long long n = static_cast<long long>(pe);
    if (pb == 0.0 && n <= 0)
      throw_domain_error("zero raised to a non-positive power", offset, pe);
    T acc(1.0);
    T b = base;
    unsigned long long m =
        n < 0 ? static_cast<unsigned long long>(-n)
              : static_cast<unsigned long long>(n);
    while (m != 0) {
      if (m & 1ULL) acc = acc * b;
      b = b * b;
      m >>= 1ULL;
    }
    if (n < 0) return T(1.0) / acc;
    return acc;
  }
  if (pb < 0.0)
    throw_domain_error("negative base with non-integer exponent", offset, pb);
  if (pb == 0.0)
    throw_domain_error("zero base with non-constant exponent", offset, pe);
  using std::exp;
  using std::log;
  return exp(expo * log(base));
}

template <class T>
T apply_func(FuncId f, const T& x, std::size_t offset) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  using std::tanh;
  double p = primal(x);
  switch (f) {
    case FuncId::Sin:
      return sin(x);
    case FuncId::Cos:
      return cos(x);
    case FuncId::Tan:
      if (std::cos(p) == 0.0) throw_domain_error("tan at a pole", offset, p);
      return tan(x);
    case FuncId::Cot:
      if (std::sin(p) == 0.0) throw_domain_error("cot at a pole", offset, p);
      return cot(x);
    case FuncId::Sec:
      if (std::cos(p) == 0.0) throw_domain_error("sec at a pole", offset, p);
      return sec(x);
    case FuncId::Csc:
      if (std::sin(p) == 0.0) throw_domain_error("csc at a pole", offset, p);
      return csc(x);
    case FuncId::Exp:
      return exp(x);
    case FuncId::Log:
      if (p <= 0.0)
        throw_domain_error("log of a non-positive value", offset, p);
      return log(x);
    case FuncId::Sqrt:
      if (p <= 0.0)
        throw_domain_error("sqrt of a non-positive value", offset, p);
      return sqrt(x);
    case FuncId::Sinh:
      return sinh(x);
    case FuncId::Cosh:
      return cosh(x);
    case FuncId::Tanh:
      return tanh(x);
  }
  throw EvalError("unreachable function id");
}

}  // namespace detail

/// Evaluate over any scalar type (double, Dual<double>, nested duals).
/// Coordinates are bound positionally via the variable indices assigned
/// at parse time.
template <class T>
T eval_expr(const Expr& e, std::span<const T> coords) {
  switch (e.kind) {
    case Expr::Kind::Literal:
    case Expr::Kind::Constant:
      return T(e.value);
    case Expr::Kind::Var:
      return coords[static_cast<std::size_t>(e.var_index)];
    case Expr::Kind::Neg:
      return -eval_expr(*e.lhs, coords);
    case Expr::Kind::Add:
      return eval_expr(*e.lhs, coords) + eval_expr(*e.rhs, coords);
    case Expr::Kind::Sub:
      return eval_expr(*e.lhs, coords) - eval_expr(*e.rhs, coords);
    case Expr::Kind::Mul:
      return eval_expr(*e.lhs, coords) * eval_expr(*e.rhs, coords);
    case Expr::Kind::Div: {
      T num = eval_expr(*e.lhs, coords);
      T den = eval_expr(*e.rhs, coords);
      if (primal(den) == 0.0)
        detail::throw_domain_error("division by zero", e.src_offset, 0.0);
      return num / den;
    }
    case Expr::Kind::Pow:
      return detail::pow_generic(eval_expr(*e.lhs, coords),
                                 eval_expr(*e.rhs, coords), e.src_offset);
    case Expr::Kind::Call:
      return detail::apply_func(e.func, eval_expr(*e.lhs, coords),
                                e.src_offset);
  }
  throw EvalError("unreachable expression kind");
}

/// Plain IEEE-double evaluation; throws EvalError on domain violations.
double eval(const Expr& e, std::span<const double> point);
inline double eval(const ExprPtr& e, std::span<const double> point) {
  return eval(*e, point);
}

struct DualValue {
  double primal;
  double tangent;
};

/// Value plus directional derivative along `direction` (one dual pass).
DualValue eval_dual(const Expr& e, std::span<const double> point,
                    std::span<const double> direction);
inline DualValue eval_dual(const ExprPtr& e, std::span<const double> point,
                           std::span<const double> direction) {
  return eval_dual(*e, point, direction);
}

}  // namespace framecurv

#endif  // FRAMECURV_EXPR_HPP
