#pragma once

// Symbol language for Toeplitz experiments.  Three kinds:
//   moment:    f(s) composed with the SO(2) moment map, s in (-inf, 0]
//   invariant: g(u, w) with u = |z|^2, w = |z^T z|^2
//   phase:     finite sums  sum c z^alpha conj(z)^beta  with |alpha| = |beta|
// Moment and invariant symbols also evaluate at Jordan cone points via the
// identities u = x_1, w = x_1^2 - x'.x' without taking square roots.

#include <cctype>
#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlab/actions.hpp"
#include "tlab/errors.hpp"
#include "tlab/geometry.hpp"
#include "tlab/jordan.hpp"

namespace tlab::symbols {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

enum class NodeKind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Sqrt, Abs };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind;
  double value = 0.0;     // Const
  std::string name;       // Var
  int exponent = 0;       // Pow
  ExprPtr a, b;

  static ExprPtr constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Const;
    e->value = v;
    return e;
  }
  static ExprPtr var(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Var;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr binary(NodeKind k, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(l);
    e->b = std::move(r);
    return e;
  }
  static ExprPtr unary(NodeKind k, ExprPtr c) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(c);
    return e;
  }
  static ExprPtr power(ExprPtr base, int exp) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Pow;
    e->a = std::move(base);
    e->exponent = exp;
    return e;
  }
};

inline bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case NodeKind::Const: return x->value == y->value;
    case NodeKind::Var: return x->name == y->name;
    case NodeKind::Pow:
      return x->exponent == y->exponent && expr_equal(x->a, y->a);
    default:
      return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
  }
}

struct PhaseTerm {
  std::vector<int> alpha;
  std::vector<int> beta;
  cplx coef;
  friend bool operator==(const PhaseTerm& a, const PhaseTerm& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.coef == b.coef;
  }
};

enum class SymbolKind { Moment, Invariant, Phase };

struct SymbolSpec {
  SymbolKind kind = SymbolKind::Moment;
  ExprPtr expr;                  // Moment / Invariant
  std::vector<PhaseTerm> phase;  // Phase

  friend bool operator==(const SymbolSpec& a, const SymbolSpec& b) {
    return a.kind == b.kind && expr_equal(a.expr, b.expr) && a.phase == b.phase;
  }
};

namespace detail {

struct Token {
  enum Type { Number, Ident, Op, LParen, RParen, End } type;
  std::string text;
  double num = 0.0;
  size_t pos = 0;
};

inline std::vector<Token> tokenize(const std::string& s, size_t base_pos) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const size_t pos = base_pos + i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = 0;
      double v;
      try {
        v = std::stod(s.substr(i), &end);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError,
                    "position " + std::to_string(pos) + ": expected number");
      }
      out.push_back({Token::Number, s.substr(i, end), v, pos});
      i += end;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), 0.0, pos});
      i = j;
    } else if (std::string("+-*/^").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c), 0.0, pos});
      ++i;
    } else if (c == '(') {
      out.push_back({Token::LParen, "(", 0.0, pos});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::RParen, ")", 0.0, pos});
      ++i;
    } else {
      throw Error(ErrorCode::ParseError, "position " + std::to_string(pos) +
                                             ": unexpected character '" +
                                             std::string(1, c) + "'");
    }
  }
  out.push_back({Token::End, "", 0.0, base_pos + s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<std::string> vars)
      : toks_(std::move(toks)), vars_(std::move(vars)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (cur().type != Token::End)
      throw Error(ErrorCode::ParseError, "position " + std::to_string(cur().pos) +
                                             ": expected operator or end of input");
    return e;
  }

 private:
  const Token& cur() const { return toks_[idx_]; }
  void advance() { ++idx_; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw Error(ErrorCode::ParseError,
                "position " + std::to_string(cur().pos) + ": expected " + expected);
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (cur().type == Token::Op && (cur().text == "+" || cur().text == "-")) {
      const bool plus = cur().text == "+";
      advance();
      e = Expr::binary(plus ? NodeKind::Add : NodeKind::Sub, e, term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (cur().type == Token::Op && (cur().text == "*" || cur().text == "/")) {
      const bool mul = cur().text == "*";
      advance();
      e = Expr::binary(mul ? NodeKind::Mul : NodeKind::Div, e, factor());
    }
    return e;
  }

  ExprPtr factor() {
    ExprPtr e = unary();
    if (cur().type == Token::Op && cur().text == "^") {
      advance();
      bool neg = false;
      if (cur().type == Token::Op && cur().text == "-") {
        neg = true;
        advance();
      }
      if (cur().type != Token::Number ||
          cur().num != std::floor(cur().num))
        fail("integer exponent");
      int exp = static_cast<int>(cur().num);
      advance();
      e = Expr::power(e, neg ? -exp : exp);
    }
    return e;
  }

  ExprPtr unary() {
    if (cur().type == Token::Op && cur().text == "-") {
      advance();
      return Expr::unary(NodeKind::Neg, unary());
    }
    return atom();
  }

  ExprPtr atom() {
    if (cur().type == Token::Number) {
      const double v = cur().num;
      advance();
      return Expr::constant(v);
    }
    if (cur().type == Token::LParen) {
      advance();
      ExprPtr e = expr();
      if (cur().type != Token::RParen) fail("')'");
      advance();
      return e;
    }
    if (cur().type == Token::Ident) {
      const std::string name = cur().text;
      if (name == "exp" || name == "log" || name == "sqrt" || name == "abs") {
        advance();
        if (cur().type != Token::LParen) fail("'(' after function name");
        advance();
        ExprPtr arg = expr();
        if (cur().type != Token::RParen) fail("')'");
        advance();
        NodeKind k = name == "exp"    ? NodeKind::Exp
                     : name == "log"  ? NodeKind::Log
                     : name == "sqrt" ? NodeKind::Sqrt
                                      : NodeKind::Abs;
        return Expr::unary(k, arg);
      }
      for (const auto& v : vars_)
        if (name == v) {
          advance();
          return Expr::var(name);
        }
      if (name == "s" || name == "u" || name == "w")
        throw Error(ErrorCode::VariableError,
                    "variable '" + name + "' is not allowed for this symbol kind");
      throw Error(ErrorCode::ParseError, "position " + std::to_string(cur().pos) +
                                             ": unknown identifier '" + name + "'");
    }
    fail("number, identifier, or '('");
  }

  std::vector<Token> toks_;
  std::vector<std::string> vars_;
  size_t idx_ = 0;
};

inline void check_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::EvalDomainError,
                std::string("non-finite value from ") + what);
}

}  // namespace detail

// Evaluates an expression over the reals with s, u, w bound as given.
inline double eval_expr(const ExprPtr& e, double s, double u, double w) {
  switch (e->kind) {
    case NodeKind::Const: return e->value;
    case NodeKind::Var:
      if (e->name == "s") return s;
      if (e->name == "u") return u;
      return w;
    case NodeKind::Add: return eval_expr(e->a, s, u, w) + eval_expr(e->b, s, u, w);
    case NodeKind::Sub: return eval_expr(e->a, s, u, w) - eval_expr(e->b, s, u, w);
    case NodeKind::Mul: return eval_expr(e->a, s, u, w) * eval_expr(e->b, s, u, w);
    case NodeKind::Div: {
      const double num = eval_expr(e->a, s, u, w);
      const double den = eval_expr(e->b, s, u, w);
      if (den == 0.0)
        throw Error(ErrorCode::EvalDomainError, "division by zero in symbol expression");
      return num / den;
    }
    case NodeKind::Pow: {
      const double base = eval_expr(e->a, s, u, w);
      if (base == 0.0 && e->exponent < 0)
        throw Error(ErrorCode::EvalDomainError, "zero raised to a negative power");
      return std::pow(base, e->exponent);
    }
    case NodeKind::Neg: return -eval_expr(e->a, s, u, w);
    case NodeKind::Exp: {
      const double v = std::exp(eval_expr(e->a, s, u, w));
      detail::check_finite(v, "exp");
      return v;
    }
    case NodeKind::Log: {
      const double arg = eval_expr(e->a, s, u, w);
      if (arg <= 0.0)
        throw Error(ErrorCode::EvalDomainError, "log of a non-positive value");
      return std::log(arg);
    }
    case NodeKind::Sqrt: {
      const double arg = eval_expr(e->a, s, u, w);
      if (arg < 0.0)
        throw Error(ErrorCode::EvalDomainError, "sqrt of a negative value");
      return std::sqrt(arg);
    }
    case NodeKind::Abs: return std::abs(eval_expr(e->a, s, u, w));
  }
  throw Error(ErrorCode::EvalDomainError, "corrupt expression node");
}

inline SymbolSpec parse_symbol(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::ParseError,
                "expected 'moment:', 'invariant:', or 'phase:' prefix");
  std::string head = text.substr(0, colon);
  // trim
  head.erase(0, head.find_first_not_of(" \t"));
  head.erase(head.find_last_not_of(" \t") + 1);
  const std::string body = text.substr(colon + 1);

  SymbolSpec spec;
  if (head == "moment" || head == "invariant") {
    spec.kind = head == "moment" ? SymbolKind::Moment : SymbolKind::Invariant;
    std::vector<std::string> vars =
        spec.kind == SymbolKind::Moment ? std::vector<std::string>{"s"}
                                        : std::vector<std::string>{"u", "w"};
    detail::Parser p(detail::tokenize(body, colon + 1), std::move(vars));
    spec.expr = p.parse();
    return spec;
  }
  if (head == "phase") {
    spec.kind = SymbolKind::Phase;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::ParseError, std::string("phase json: ") + ex.what());
    }
    if (!j.is_array())
      throw Error(ErrorCode::ParseError, "phase json must be an array of terms");
    for (const auto& t : j) {
      if (!t.contains("alpha") || !t.contains("beta") || !t.contains("coef"))
        throw Error(ErrorCode::ParseError,
                    "phase term needs alpha, beta, and coef fields");
      PhaseTerm term;
      term.alpha = t.at("alpha").get<std::vector<int>>();
      term.beta = t.at("beta").get<std::vector<int>>();
      const auto c = t.at("coef").get<std::vector<double>>();
      if (c.size() != 2)
        throw Error(ErrorCode::ParseError, "phase coef must be [re, im]");
      term.coef = cplx(c[0], c[1]);
      if (term.alpha.size() != term.beta.size())
        throw Error(ErrorCode::ParseError, "phase alpha and beta lengths differ");
      int da = 0, db = 0;
      for (int e : term.alpha) da += e;
      for (int e : term.beta) db += e;
      if (da != db)
        throw Error(ErrorCode::PhaseWeightError,
                    "phase term has |alpha| != |beta|; not SO(2) invariant");
      spec.phase.push_back(std::move(term));
    }
    return spec;
  }
  throw Error(ErrorCode::ParseError, "unknown symbol kind '" + head + "'");
}

namespace detail {

inline int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

inline void print_expr(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
  const int prec = precedence(e->kind);
  const bool wrap = prec < parent_prec;
  if (wrap) os << "(";
  switch (e->kind) {
    case NodeKind::Const: {
      std::ostringstream num;
      num.precision(17);
      num << e->value;
      os << num.str();
      break;
    }
    case NodeKind::Var: os << e->name; break;
    case NodeKind::Add:
      print_expr(os, e->a, prec);
      os << " + ";
      print_expr(os, e->b, prec + 1);
      break;
    case NodeKind::Sub:
      print_expr(os, e->a, prec);
      os << " - ";
      print_expr(os, e->b, prec + 1);
      break;
    case NodeKind::Mul:
      print_expr(os, e->a, prec);
      os << "*";
      print_expr(os, e->b, prec + 1);
      break;
    case NodeKind::Div:
      print_expr(os, e->a, prec);
      os << "/";
      print_expr(os, e->b, prec + 1);
      break;
    case NodeKind::Pow:
      print_expr(os, e->a, prec + 1);
      os << "^" << e->exponent;
      break;
    case NodeKind::Neg:
      os << "-";
      print_expr(os, e->a, prec + 1);
      break;
    case NodeKind::Exp:
    case NodeKind::Log:
    case NodeKind::Sqrt:
    case NodeKind::Abs: {
      const char* name = e->kind == NodeKind::Exp    ? "exp"
                         : e->kind == NodeKind::Log  ? "log"
                         : e->kind == NodeKind::Sqrt ? "sqrt"
                                                     : "abs";
      os << name << "(";
      print_expr(os, e->a, 0);
      os << ")";
      break;
    }
  }
  if (wrap) os << ")";
}

}  // namespace detail

inline std::string print_symbol(const SymbolSpec& spec) {
  std::ostringstream os;
  if (spec.kind == SymbolKind::Phase) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : spec.phase)
      arr.push_back({{"alpha", t.alpha},
                     {"beta", t.beta},
                     {"coef", {t.coef.real(), t.coef.imag()}}});
    os << "phase: " << arr.dump();
    return os.str();
  }
  os << (spec.kind == SymbolKind::Moment ? "moment: " : "invariant: ");
  detail::print_expr(os, spec.expr, 0);
  return os.str();
}

inline cplx eval_symbol(const SymbolSpec& spec, const CVec& z) {
  switch (spec.kind) {
    case SymbolKind::Moment:
      return eval_expr(spec.expr, actions::moment_map_so2(z), 0.0, 0.0);
    case SymbolKind::Invariant: {
      const double u = z.squaredNorm();
      const double w = std::norm(geometry::z_top_z(z));
      return eval_expr(spec.expr, 0.0, u, w);
    }
    case SymbolKind::Phase: {
      cplx acc = 0.0;
      for (const auto& t : spec.phase) {
        if (static_cast<int>(t.alpha.size()) != z.size())
          throw Error(ErrorCode::DimensionMismatch,
                      "phase multi-index length does not match the point");
        cplx m = t.coef;
        for (int j = 0; j < z.size(); ++j) {
          for (int e = 0; e < t.alpha[static_cast<size_t>(j)]; ++e) m *= z[j];
          for (int e = 0; e < t.beta[static_cast<size_t>(j)]; ++e)
            m *= std::conj(z[j]);
        }
        acc += m;
      }
      return acc;
    }
  }
  throw Error(ErrorCode::KindError, "corrupt symbol kind");
}

// Symbol value at E(sqrt(x)) computed from x alone:
//   u = x_1,  w = x_1^2 - x'.x',  s = (w - u)/(1 + w - 2u).
inline double eval_invariant_at_cone_point(const SymbolSpec& spec,
                                           const jordan::SpinElement& x) {
  if (spec.kind == SymbolKind::Phase)
    throw Error(ErrorCode::KindError,
                "phase symbols have no cone-point representation");
  const double u = x.x1;
  const double w = x.x1 * x.x1 - jordan::tail_dot(x, x);
  if (spec.kind == SymbolKind::Invariant) return eval_expr(spec.expr, 0.0, u, w);
  const double den = 1.0 + w - 2.0 * u;
  if (den == 0.0)
    throw Error(ErrorCode::EvalDomainError, "moment-map value undefined at this point");
  return eval_expr(spec.expr, (w - u) / den, 0.0, 0.0);
}

namespace detail {

inline ExprPtr substitute_s(const ExprPtr& e, const ExprPtr& repl) {
  switch (e->kind) {
    case NodeKind::Const: return e;
    case NodeKind::Var: return e->name == "s" ? repl : e;
    case NodeKind::Pow: return Expr::power(substitute_s(e->a, repl), e->exponent);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
      return Expr::binary(e->kind, substitute_s(e->a, repl), substitute_s(e->b, repl));
    default:
      return Expr::unary(e->kind, substitute_s(e->a, repl));
  }
}

}  // namespace detail

// Rewrites f(s) as g(u, w) through s = (w - u)/(1 + w - 2u).
inline SymbolSpec moment_to_invariant(const SymbolSpec& spec) {
  if (spec.kind != SymbolKind::Moment)
    throw Error(ErrorCode::KindError, "moment_to_invariant needs a moment symbol");
  const ExprPtr u = Expr::var("u");
  const ExprPtr w = Expr::var("w");
  const ExprPtr num = Expr::binary(NodeKind::Sub, w, u);
  const ExprPtr den = Expr::binary(
      NodeKind::Sub, Expr::binary(NodeKind::Add, Expr::constant(1.0), w),
      Expr::binary(NodeKind::Mul, Expr::constant(2.0), u));
  const ExprPtr s_of_uw = Expr::binary(NodeKind::Div, num, den);
  SymbolSpec out;
  out.kind = SymbolKind::Invariant;
  out.expr = detail::substitute_s(spec.expr, s_of_uw);
  return out;
}

// Bounded test catalog used across the suites.
inline std::vector<std::string> moment_catalog() {
  return {"moment: 1",         "moment: s/(s - 1)",   "moment: 1/(1 - s)",
          "moment: exp(s)",    "moment: 1/(1 + s^2)", "moment: s/(1 + s^2)"};
}

}  // namespace tlab::symbols
