#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "simred/field.hpp"
#include "simred/jet.hpp"
#include "simred/rng.hpp"

namespace simred {

// Small arithmetic grammar for candidate solutions entered on the command
// line: numbers, x, t, + - * / ^, exp, log, tanh, tan, sqrt.  Parsed into an
// AST evaluated on jets, so ad-hoc fields get exact derivatives.
class Expr {
 public:
  enum class Op { Num, X, T, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Tanh, Tan, Sqrt };

  struct Node {
    Op op{Op::Num};
    double value{0};
    std::shared_ptr<const Node> a, b;
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expr number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Num;
    n->value = v;
    return Expr(n);
  }
  static Expr var_x() { return leaf(Op::X); }
  static Expr var_t() { return leaf(Op::T); }
  static Expr unary(Op op, Expr a) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = a.root_;
    return Expr(n);
  }
  static Expr binary(Op op, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = a.root_;
    n->b = b.root_;
    return Expr(n);
  }

  bool empty() const { return !root_; }

  Jet2 eval(double x, double t) const {
    if (!root_) raise(ErrorKind::ConfigError, "empty expression");
    return eval_node(*root_, x, t);
  }
  double value(double x, double t) const { return eval(x, t).v; }

  std::string str() const { return root_ ? print(*root_) : "<empty>"; }

  static Expr parse(const std::string& text);

 private:
  static Expr leaf(Op op) {
    auto n = std::make_shared<Node>();
    n->op = op;
    return Expr(n);
  }

  static Jet2 eval_node(const Node& n, double x, double t) {
    switch (n.op) {
      case Op::Num: return jet_const(n.value);
      case Op::X: return jet_x(x);
      case Op::T: return jet_t(t);
      case Op::Add: return eval_node(*n.a, x, t) + eval_node(*n.b, x, t);
      case Op::Sub: return eval_node(*n.a, x, t) - eval_node(*n.b, x, t);
      case Op::Mul: return eval_node(*n.a, x, t) * eval_node(*n.b, x, t);
      case Op::Div: return eval_node(*n.a, x, t) / eval_node(*n.b, x, t);
      case Op::Pow: {
        Jet2 base = eval_node(*n.a, x, t);
        Jet2 e = eval_node(*n.b, x, t);
        if (e.vx == 0.0 && e.vxx == 0.0 && e.vt == 0.0) {
          if (e.v == std::floor(e.v) && std::abs(e.v) < 64) return powi(base, (long long)e.v);
          return pow(base, e.v);
        }
        return exp(e * log(base));
      }
      case Op::Neg: return -eval_node(*n.a, x, t);
      case Op::Exp: return exp(eval_node(*n.a, x, t));
      case Op::Log: return log(eval_node(*n.a, x, t));
      case Op::Tanh: return tanh(eval_node(*n.a, x, t));
      case Op::Tan: return tan(eval_node(*n.a, x, t));
      case Op::Sqrt: return sqrt(eval_node(*n.a, x, t));
    }
    raise(ErrorKind::ConfigError, "bad expression node");
  }

  static std::string print(const Node& n) {
    auto paren = [](const std::string& s) { return "(" + s + ")"; };
    switch (n.op) {
      case Op::Num: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        return buf;
      }
      case Op::X: return "x";
      case Op::T: return "t";
      case Op::Add: return paren(print(*n.a) + "+" + print(*n.b));
      case Op::Sub: return paren(print(*n.a) + "-" + print(*n.b));
      case Op::Mul: return paren(print(*n.a) + "*" + print(*n.b));
      case Op::Div: return paren(print(*n.a) + "/" + print(*n.b));
      case Op::Pow: return paren(print(*n.a) + "^" + print(*n.b));
      case Op::Neg: return paren("-" + print(*n.a));
      case Op::Exp: return "exp" + paren(print(*n.a));
      case Op::Log: return "log" + paren(print(*n.a));
      case Op::Tanh: return "tanh" + paren(print(*n.a));
      case Op::Tan: return "tan" + paren(print(*n.a));
      case Op::Sqrt: return "sqrt" + paren(print(*n.a));
    }
    return "?";
  }

  std::shared_ptr<const Node> root_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = expression();
    skip_ws();
    if (pos_ != s_.size()) raise(ErrorKind::ConfigError, "trailing input in expression at '" + rest() + "'");
    return e;
  }

 private:
  // expression := term (('+'|'-') term)*
  Expr expression() {
    Expr e = term();
    for (;;) {
      skip_ws();
      if (match('+')) e = Expr::binary(Expr::Op::Add, e, term());
      else if (match('-')) e = Expr::binary(Expr::Op::Sub, e, term());
      else return e;
    }
  }
  // term := factor (('*'|'/') factor)*
  Expr term() {
    Expr e = factor();
    for (;;) {
      skip_ws();
      if (match('*')) e = Expr::binary(Expr::Op::Mul, e, factor());
      else if (match('/')) e = Expr::binary(Expr::Op::Div, e, factor());
      else return e;
    }
  }
  // factor := '-' factor | primary ('^' factor)?
  // unary minus binds looser than '^', so -x^2 reads as -(x^2).
  Expr factor() {
    skip_ws();
    if (match('-')) return Expr::unary(Expr::Op::Neg, factor());
    if (match('+')) return factor();
    Expr e = primary();
    skip_ws();
    if (match('^')) return Expr::binary(Expr::Op::Pow, e, factor());
    return e;
  }
  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) raise(ErrorKind::ConfigError, "unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit((unsigned char)c) || c == '.') return number();
    if (std::isalpha((unsigned char)c)) return name();
    if (match('(')) {
      Expr e = expression();
      skip_ws();
      if (!match(')')) raise(ErrorKind::ConfigError, "missing ')' in expression");
      return e;
    }
    raise(ErrorKind::ConfigError, std::string("unexpected character '") + c + "' in expression");
  }
  Expr number() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit((unsigned char)s_[end]) || s_[end] == '.' || s_[end] == 'e' ||
            s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    double v = 0;
    try {
      v = std::stod(s_.substr(pos_, end - pos_));
    } catch (const std::logic_error&) {
      raise(ErrorKind::ConfigError, "bad numeric literal");
    }
    pos_ = end;
    return Expr::number(v);
  }
  Expr name() {
    size_t end = pos_;
    while (end < s_.size() && std::isalpha((unsigned char)s_[end])) ++end;
    std::string id = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (id == "x") return Expr::var_x();
    if (id == "t") return Expr::var_t();
    Expr::Op op;
    if (id == "exp") op = Expr::Op::Exp;
    else if (id == "log") op = Expr::Op::Log;
    else if (id == "tanh") op = Expr::Op::Tanh;
    else if (id == "tan") op = Expr::Op::Tan;
    else if (id == "sqrt") op = Expr::Op::Sqrt;
    else raise(ErrorKind::ConfigError, "unknown identifier '" + id + "'");
    skip_ws();
    if (!match('(')) raise(ErrorKind::ConfigError, "function '" + id + "' needs '('");
    Expr a = expression();
    skip_ws();
    if (!match(')')) raise(ErrorKind::ConfigError, "missing ')' after argument of '" + id + "'");
    return Expr::unary(op, a);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool match(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string rest() const { return s_.substr(pos_); }

  const std::string& s_;
  size_t pos_{0};
};

}  // namespace detail

inline Expr Expr::parse(const std::string& text) { return detail::Parser(text).run(); }

// --------------------------------------------------------------------------
// Random expression trees over the CLI grammar, for derivative cross-checks
// and random smooth test fields.  Candidates whose values or low-order
// derivatives misbehave on the probe box are rejected and redrawn, so every
// returned tree is finite and moderate on [0.5,2] x [0.5,2] including the
// finite-difference stencil margin.

inline Expr random_expression(SplitMix64& rng, int depth = 3) {
  auto guard_positive = [&](Expr e) {
    // keeps log/sqrt arguments in a safe band
    return Expr::binary(Expr::Op::Add, Expr::number(rng.uniform(1.2, 2.5)),
                        Expr::unary(Expr::Op::Tanh, e));
  };
  std::function<Expr(int)> gen = [&](int d) -> Expr {
    if (d <= 0) {
      switch (rng.below(3)) {
        case 0: return Expr::var_x();
        case 1: return Expr::var_t();
        default: return Expr::number(rng.uniform(-2.0, 2.0));
      }
    }
    switch (rng.below(10)) {
      case 0: return Expr::binary(Expr::Op::Add, gen(d - 1), gen(d - 1));
      case 1: return Expr::binary(Expr::Op::Sub, gen(d - 1), gen(d - 1));
      case 2: return Expr::binary(Expr::Op::Mul, gen(d - 1), gen(d - 1));
      case 3:
        return Expr::binary(Expr::Op::Div, gen(d - 1), guard_positive(gen(d - 1)));
      case 4:
        return Expr::binary(Expr::Op::Pow, guard_positive(gen(d - 1)),
                            Expr::number(rng.uniform(-2.0, 2.5)));
      case 5: return Expr::unary(Expr::Op::Exp, Expr::unary(Expr::Op::Tanh, gen(d - 1)));
      case 6: return Expr::unary(Expr::Op::Log, guard_positive(gen(d - 1)));
      case 7: return Expr::unary(Expr::Op::Tanh, gen(d - 1));
      case 8:
        return Expr::unary(Expr::Op::Tan, Expr::binary(Expr::Op::Mul, Expr::number(0.4),
                                                       Expr::unary(Expr::Op::Tanh, gen(d - 1))));
      default: return Expr::unary(Expr::Op::Sqrt, guard_positive(gen(d - 1)));
    }
  };

  for (int attempt = 0; attempt < 200; ++attempt) {
    Expr e = gen(depth);
    bool ok = true;
    for (int i = 0; i < 5 && ok; ++i) {
      for (int j = 0; j < 5 && ok; ++j) {
        double x = 0.5 + 1.5 * i / 4.0, t = 0.5 + 1.5 * j / 4.0;
        try {
          // include the FD stencil halo in the probe
          for (double dx : {-2e-4, 0.0, 2e-4}) {
            Jet2 v = e.eval(x + dx, t + dx);
            if (!std::isfinite(v.v) || !std::isfinite(v.vx) || !std::isfinite(v.vxx) ||
                !std::isfinite(v.vt) || std::abs(v.v) > 1e3 || std::abs(v.vx) > 1e3 ||
                std::abs(v.vxx) > 1e3)
              ok = false;
          }
        } catch (const Error&) {
          ok = false;
        }
      }
    }
    if (ok) return e;
  }
  raise(ErrorKind::ConfigError, "random expression generation failed to find a safe tree");
}

// A strictly positive random smooth field on `region`, built as
// offset + softplus-like transform of a random tree.
inline ScalarField random_positive_field(SplitMix64& rng, Region region, double lambda, int depth = 3) {
  Expr e = random_expression(rng, depth);
  double off = rng.uniform(0.4, 1.4);
  auto fn = [e, off](double x, double t) {
    Jet2 g = e.eval(x, t);
    return off + 0.5 * tanh(g) + 0.6;  // values in [off + 0.1, off + 1.1]
  };
  return ScalarField(region, lambda, fn);
}

}  // namespace simred
