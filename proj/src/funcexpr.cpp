#include "multicheb/funcexpr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace multicheb {

namespace {

Expr node(ExprKind kind, std::vector<Expr> args = {}) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ < s_.size()) {
      if (s_[pos_] == ')') fail("unbalanced ')'");
      fail(std::string("unexpected '") + s_[pos_] + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = node(ExprKind::Add, {lhs, term()});
      else if (accept('-')) lhs = node(ExprKind::Sub, {lhs, term()});
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = node(ExprKind::Mul, {lhs, unary()});
      else if (accept('/')) lhs = node(ExprKind::Div, {lhs, unary()});
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return node(ExprKind::Negate, {unary()});
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return node(ExprKind::Pow, {base, unary()});
    return base;
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      Expr e = expr();
      if (!accept(')')) {
        pos_ = std::max(pos_, open);
        fail("missing ')' for '(' opened at offset " + std::to_string(open));
      }
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++k;
      return k;
    };
    std::size_t count = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // leave 'e' for the identifier error
    }
    double v = 0.0;
    auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_) {
      pos_ = start;
      fail("number out of range");
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Number;
    n->value = v;
    return n;
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') return call(name, start);
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Variable;
    if (name == "x") n->var = 0;
    else if (name == "y") n->var = 1;
    else if (name == "z") n->var = 2;
    else if (name.size() > 1 && name[0] == 'x' &&
             std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
             name[1] != '0') {
      std::size_t idx = 0;
      auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (res.ec != std::errc() || idx > 1000) {
        pos_ = start;
        fail("variable index out of range in '" + std::string(name) + "'");
      }
      n->var = idx - 1;
    } else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    return n;
  }

  Expr call(std::string_view name, std::size_t start) {
    ExprKind kind;
    std::size_t min_args = 1, max_args = 1;
    if (name == "min") kind = ExprKind::Min, min_args = 2, max_args = SIZE_MAX;
    else if (name == "max") kind = ExprKind::Max, min_args = 2, max_args = SIZE_MAX;
    else if (name == "abs") kind = ExprKind::Abs;
    else if (name == "sqrt") kind = ExprKind::Sqrt;
    else if (name == "norm") kind = ExprKind::Norm, max_args = SIZE_MAX;
    else {
      pos_ = start;
      fail("unknown function '" + std::string(name) + "'");
    }
    const std::size_t open = pos_++;
    std::vector<Expr> args;
    if (!accept(')')) {
      do {
        args.push_back(expr());
      } while (accept(','));
      if (!accept(')')) fail("missing ')' for call opened at offset " + std::to_string(open));
    }
    if (args.size() < min_args || args.size() > max_args) {
      pos_ = start;
      std::string want = min_args == max_args ? std::to_string(min_args)
                                              : "at least " + std::to_string(min_args);
      fail(std::string(name) + " takes " + want + " argument(s), got " + std::to_string(args.size()));
    }
    return node(kind, std::move(args));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double int_power(double base, double exponent) {
  if (exponent != std::nearbyint(exponent) || std::abs(exponent) > 1e9)
    throw EvalError("non-integer exponent " + std::to_string(exponent));
  long long e = static_cast<long long>(exponent);
  const bool invert = e < 0;
  if (invert) e = -e;
  double result = 1.0, b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  if (invert) {
    if (result == 0.0) throw EvalError("division by zero in negative power");
    result = 1.0 / result;
  }
  return checked(result, "power");
}

double eval(const ExprNode& n, std::span<const double> x) {
  auto arg = [&](std::size_t k) { return eval(*n.args[k], x); };
  switch (n.kind) {
    case ExprKind::Number: return n.value;
    case ExprKind::Variable:
      if (n.var >= x.size())
        throw EvalError("variable x" + std::to_string(n.var + 1) + " needs a point of dimension " +
                        std::to_string(n.var + 1));
      return x[n.var];
    case ExprKind::Negate: return -arg(0);
    case ExprKind::Add: return checked(arg(0) + arg(1), "addition");
    case ExprKind::Sub: return checked(arg(0) - arg(1), "subtraction");
    case ExprKind::Mul: return checked(arg(0) * arg(1), "multiplication");
    case ExprKind::Div: {
      const double a = arg(0), b = arg(1);
      if (b == 0.0) throw EvalError("division by zero");
      return checked(a / b, "division");
    }
    case ExprKind::Pow: return int_power(arg(0), arg(1));
    case ExprKind::Min:
    case ExprKind::Max: {
      double v = arg(0);
      for (std::size_t k = 1; k < n.args.size(); ++k)
        v = n.kind == ExprKind::Min ? std::min(v, arg(k)) : std::max(v, arg(k));
      return v;
    }
    case ExprKind::Abs: return std::abs(arg(0));
    case ExprKind::Sqrt: {
      const double a = arg(0);
      if (a < 0.0) throw EvalError("sqrt of a negative number");
      return std::sqrt(a);
    }
    case ExprKind::Norm: {
      double s = 0.0;
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        const double a = arg(k);
        s += a * a;
      }
      return checked(std::sqrt(s), "norm");
    }
  }
  throw EvalError("corrupt expression node");
}

const char* op_symbol(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return "+";
    case ExprKind::Sub: return "-";
    case ExprKind::Mul: return "*";
    case ExprKind::Div: return "/";
    case ExprKind::Pow: return "^";
    default: return nullptr;
  }
}

const char* fn_name(ExprKind k) {
  switch (k) {
    case ExprKind::Min: return "min";
    case ExprKind::Max: return "max";
    case ExprKind::Abs: return "abs";
    case ExprKind::Sqrt: return "sqrt";
    case ExprKind::Norm: return "norm";
    default: return nullptr;
  }
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprKind::Number: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, std::abs(n.value));
      if (std::signbit(n.value)) out += "(-";
      out.append(buf, res.ptr);
      if (std::signbit(n.value)) out += ")";
      return;
    }
    case ExprKind::Variable: out += "x" + std::to_string(n.var + 1); return;
    case ExprKind::Negate:
      out += "(-";
      print(*n.args[0], out);
      out += ")";
      return;
    default: break;
  }
  if (const char* op = op_symbol(n.kind)) {
    out += "(";
    print(*n.args[0], out);
    out += op;
    print(*n.args[1], out);
    out += ")";
    return;
  }
  out += fn_name(n.kind);
  out += "(";
  for (std::size_t k = 0; k < n.args.size(); ++k) {
    if (k) out += ",";
    print(*n.args[k], out);
  }
  out += ")";
}

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

double eval_expr(const Expr& e, std::span<const double> x) { return eval(*e, x); }

EvalOutcome try_eval(const Expr& e, std::span<const double> x) noexcept {
  try {
    return {true, eval(*e, x), {}};
  } catch (const std::exception& ex) {
    return {false, 0.0, ex.what()};
  }
}

std::string print_expr(const Expr& e) {
  std::string out;
  print(*e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  if (a->kind == ExprKind::Number && a->value != b->value) return false;
  if (a->kind == ExprKind::Variable && a->var != b->var) return false;
  for (std::size_t k = 0; k < a->args.size(); ++k)
    if (!structurally_equal(a->args[k], b->args[k])) return false;
  return true;
}

std::size_t variables_needed(const Expr& e) {
  std::size_t n = e->kind == ExprKind::Variable ? e->var + 1 : 0;
  for (const auto& a : e->args) n = std::max(n, variables_needed(a));
  return n;
}

}  // namespace multicheb
