#include "framecurv/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace framecurv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

const std::map<std::string_view, FuncId>& function_table() {
  static const std::map<std::string_view, FuncId> table = {
      {"sin", FuncId::Sin},   {"cos", FuncId::Cos},   {"tan", FuncId::Tan},
      {"cot", FuncId::Cot},   {"sec", FuncId::Sec},   {"csc", FuncId::Csc},
      {"exp", FuncId::Exp},   {"log", FuncId::Log},   {"sqrt", FuncId::Sqrt},
      {"sinh", FuncId::Sinh}, {"cosh", FuncId::Cosh}, {"tanh", FuncId::Tanh},
  };
  return table;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::Sin: return "sin";
    case FuncId::Cos: return "cos";
    case FuncId::Tan: return "tan";
    case FuncId::Cot: return "cot";
    case FuncId::Sec: return "sec";
    case FuncId::Csc: return "csc";
    case FuncId::Exp: return "exp";
    case FuncId::Log: return "log";
    case FuncId::Sqrt: return "sqrt";
    case FuncId::Sinh: return "sinh";
    case FuncId::Cosh: return "cosh";
    case FuncId::Tanh: return "tanh";
  }
  return "?";
}

ExprPtr make_literal(double v) {
  if (v < 0.0) return make_neg(make_literal(-v));
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Literal;
  e->value = v;
  return e;
}

ExprPtr make_var(int index, std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->var_index = index;
  e->name = std::move(name);
  return e;
}

ExprPtr make_neg(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Neg;
  e->lhs = std::move(x);
  return e;
}

ExprPtr make_binary(Expr::Kind op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr make_call(FuncId f, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->func = f;
  e->lhs = std::move(arg);
  return e;
}

namespace {

// Grammar (whitespace insignificant):
//   expr    := term (('+'|'-') term)*            left associative
//   term    := factor (('*'|'/') factor)*        left associative
//   factor  := '-' factor | power                unary minus below '^'
//   power   := primary ('^' factor)?             right associative
//   primary := number | ident | ident '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords)
      : src_(src), coords_(coords) {}

  ExprPtr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      std::size_t at = pos_++;
      ExprPtr rhs = parse_term();
      lhs = make_binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub,
                        std::move(lhs), std::move(rhs));
      const_cast<Expr*>(lhs.get())->src_offset = at;
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      std::size_t at = pos_++;
      ExprPtr rhs = parse_factor();
      lhs = make_binary(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div,
                        std::move(lhs), std::move(rhs));
      const_cast<Expr*>(lhs.get())->src_offset = at;
    }
  }

  ExprPtr parse_factor() {
    if (peek() == '-') {
      std::size_t at = pos_++;
      ExprPtr inner = parse_factor();
      ExprPtr e = make_neg(std::move(inner));
      const_cast<Expr*>(e.get())->src_offset = at;
      return e;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (peek() == '^') {
      std::size_t at = pos_++;
      ExprPtr expo = parse_factor();  // right associative, allows x^-2
      ExprPtr e = make_binary(Expr::Kind::Pow, std::move(base),
                              std::move(expo));
      const_cast<Expr*>(e.get())->src_offset = at;
      return e;
    }
    return base;
  }

  ExprPtr parse_primary() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_identifier();
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  ExprPtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        ++pos_;
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // bare 'e' after digits belongs to the next token
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
      throw ParseError("malformed numeric literal '" + text + "'", start);
    ExprPtr e = make_literal(v);
    const_cast<Expr*>(e.get())->src_offset = start;
    return e;
  }

  ExprPtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));

    // Coordinates shadow constants; function names require a '(' call.
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) {
        ExprPtr e = make_var(static_cast<int>(i), name);
        const_cast<Expr*>(e.get())->src_offset = start;
        return e;
      }
    }
    auto fn = function_table().find(name);
    if (fn != function_table().end()) {
      if (peek() != '(')
        throw ParseError("function '" + name + "' requires an argument list",
                         pos_);
      ++pos_;
      ExprPtr arg = parse_expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      ExprPtr e = make_call(fn->second, std::move(arg));
      const_cast<Expr*>(e.get())->src_offset = start;
      return e;
    }
    if (name == "pi" || name == "e") {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Constant;
      e->name = name;
      e->value = name == "pi" ? kPi : kE;
      e->src_offset = start;
      return e;
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::string_view src_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_rec(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, bool parens) {
    if (parens) out += '(';
    print_rec(c, out);
    if (parens) out += ')';
  };
  int p = precedence(e.kind);
  switch (e.kind) {
    case Expr::Kind::Literal:
      out += format_double(e.value);
      return;
    case Expr::Kind::Constant:
    case Expr::Kind::Var:
      out += e.name;
      return;
    case Expr::Kind::Neg:
      out += '-';
      child(*e.lhs, precedence(e.lhs->kind) < p);
      return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      child(*e.lhs, precedence(e.lhs->kind) < p);
      switch (e.kind) {
        case Expr::Kind::Add: out += " + "; break;
        case Expr::Kind::Sub: out += " - "; break;
        case Expr::Kind::Mul: out += "*"; break;
        default: out += "/"; break;
      }
      // right operand needs parens at equal precedence to preserve
      // left-associative structure on re-parse
      child(*e.rhs, precedence(e.rhs->kind) <= p);
      return;
    }
    case Expr::Kind::Pow:
      child(*e.lhs, precedence(e.lhs->kind) <= p);
      out += '^';
      child(*e.rhs, precedence(e.rhs->kind) < p);
      return;
    case Expr::Kind::Call:
      out += func_name(e.func);
      out += '(';
      print_rec(*e.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view source,
                         std::span<const std::string> coords) {
  return Parser(source, coords).run();
}

std::string print_expression(const Expr& e) {
  std::string out;
  print_rec(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Literal:
      return a.value == b.value;
    case Expr::Kind::Constant:
      return a.name == b.name;
    case Expr::Kind::Var:
      return a.var_index == b.var_index && a.name == b.name;
    case Expr::Kind::Neg:
      return structurally_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Call:
      return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
}

namespace detail {

void throw_domain_error(const char* what, std::size_t offset, double arg) {
  throw EvalError(std::string(what) + " (operand " + format_double(arg) +
                  ", expression byte " + std::to_string(offset) + ")");
}

}  // namespace detail

double eval(const Expr& e, std::span<const double> point) {
  double v = eval_expr<double>(e, point);
  if (!std::isfinite(v))
    throw EvalError("expression evaluated to a non-finite value");
  return v;
}

DualValue eval_dual(const Expr& e, std::span<const double> point,
                    std::span<const double> direction) {
  std::vector<Dual<double>> coords(point.size());
  for (std::size_t i = 0; i < point.size(); ++i)
    coords[i] = Dual<double>(point[i], direction[i]);
  Dual<double> r =
      eval_expr<Dual<double>>(e, std::span<const Dual<double>>(coords));
  if (!std::isfinite(r.a) || !std::isfinite(r.b))
    throw EvalError("expression evaluated to a non-finite value");
  return {r.a, r.b};
}

}  // namespace framecurv
