/// @file expr.hpp
/// Arithmetic expression language for user-supplied profile functions.
///
/// Grammar (EBNF in docs/grammar.md):
///   expr   := term   { ('+' | '-') term }
///   term   := factor { ('*' | '/') factor }
///   factor := '-' factor | power
///   power  := atom [ '^' factor ]            -- right associative
///   atom   := number | 'u' | 'pi' | 'e'
///           | function '(' expr ')' | '(' expr ')'
///
/// Precedence: '^' > unary '-' > '*','/' > '+','-'. So "-u^2" is -(u^2) and
/// "2^-3" parses (the exponent slot accepts a signed factor).
///
/// Functions: sin cos tan exp ln sqrt sinh cosh tanh arccot sech abs.
/// arccot is the continuous branch arccot(x) = pi/2 - arctan(x), range (0,pi).
///
/// Errors carry byte offsets into the source string.

#ifndef LOXOFORGE_EXPR_HPP
#define LOXOFORGE_EXPR_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>

#include "loxoforge/errors.hpp"

namespace lox {

namespace expr_detail {

enum class NodeKind { number, var_u, const_pi, const_e, negate, binary, call };

enum class BinOp { add, sub, mul, div, pow };

enum class Func {
  sin, cos, tan, exp, ln, sqrt_, sinh_, cosh_, tanh_, arccot, sech, abs_
};

struct Node {
  NodeKind kind;
  std::size_t pos = 0;  // byte offset of the token that started this node
  double number = 0.0;  // NodeKind::number
  BinOp op = BinOp::add;
  Func func = Func::sin;
  std::shared_ptr<const Node> lhs, rhs;  // rhs unused for negate/call
};

using NodePtr = std::shared_ptr<const Node>;

inline const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::exp: return "exp";
    case Func::ln: return "ln";
    case Func::sqrt_: return "sqrt";
    case Func::sinh_: return "sinh";
    case Func::cosh_: return "cosh";
    case Func::tanh_: return "tanh";
    case Func::arccot: return "arccot";
    case Func::sech: return "sech";
    case Func::abs_: return "abs";
  }
  return "?";
}

inline bool lookup_func(const std::string& name, Func& out) {
  static const std::pair<const char*, Func> table[] = {
      {"sin", Func::sin},       {"cos", Func::cos},   {"tan", Func::tan},
      {"exp", Func::exp},       {"ln", Func::ln},     {"sqrt", Func::sqrt_},
      {"sinh", Func::sinh_},    {"cosh", Func::cosh_}, {"tanh", Func::tanh_},
      {"arccot", Func::arccot}, {"sech", Func::sech}, {"abs", Func::abs_},
  };
  for (const auto& [n, f] : table)
    if (name == n) {
      out = f;
      return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  TokKind kind;
  std::size_t pos = 0;
  double number = 0.0;
  std::string ident;
};

struct Lexer {
  const std::string& src;
  std::size_t i = 0;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  void advance() {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    cur = Token{TokKind::end, i};
    if (i >= src.size()) return;
    const char c = src[i];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                src[i] == '_'))
        ++i;
      cur = Token{TokKind::ident, start};
      cur.ident = src.substr(start, i - start);
      return;
    }
    const std::size_t start = i++;
    switch (c) {
      case '+': cur = Token{TokKind::plus, start}; return;
      case '-': cur = Token{TokKind::minus, start}; return;
      case '*': cur = Token{TokKind::star, start}; return;
      case '/': cur = Token{TokKind::slash, start}; return;
      case '^': cur = Token{TokKind::caret, start}; return;
      case '(': cur = Token{TokKind::lparen, start}; return;
      case ')': cur = Token{TokKind::rparen, start}; return;
      default:
        throw SyntaxError(start, "a token", std::string("'") + c + "'");
    }
  }

  // Numbers accept an exponent part only when it is unambiguously numeric
  // ("2e3", "1e+10"); a bare trailing 'e' stays an identifier so the Euler
  // constant remains reachable ("2*e").
  void lex_number() {
    const std::size_t start = i;
    while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
    if (i < src.size() && src[i] == '.') {
      ++i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
    }
    if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
      if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        i = j;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      }
    }
    cur = Token{TokKind::number, start};
    cur.number = std::strtod(src.c_str() + start, nullptr);
  }
};

// ---------------------------------------------------------------------------
// Parser (recursive descent)
// ---------------------------------------------------------------------------

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& src) : lex(src) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    if (lex.cur.kind != TokKind::end)
      throw SyntaxError(lex.cur.pos, "end of input or an operator", token_desc());
    return e;
  }

  std::string token_desc() const {
    switch (lex.cur.kind) {
      case TokKind::number: return "a number";
      case TokKind::ident: return "'" + lex.cur.ident + "'";
      case TokKind::plus: return "'+'";
      case TokKind::minus: return "'-'";
      case TokKind::star: return "'*'";
      case TokKind::slash: return "'/'";
      case TokKind::caret: return "'^'";
      case TokKind::lparen: return "'('";
      case TokKind::rparen: return "')'";
      case TokKind::end: return "end of input";
    }
    return "?";
  }

  NodePtr parse_expr() {
    NodePtr l = parse_term();
    while (lex.cur.kind == TokKind::plus || lex.cur.kind == TokKind::minus) {
      const BinOp op = lex.cur.kind == TokKind::plus ? BinOp::add : BinOp::sub;
      const std::size_t pos = lex.cur.pos;
      lex.advance();
      NodePtr r = parse_term();
      l = make_binary(op, pos, l, r);
    }
    return l;
  }

  NodePtr parse_term() {
    NodePtr l = parse_factor();
    while (lex.cur.kind == TokKind::star || lex.cur.kind == TokKind::slash) {
      const BinOp op = lex.cur.kind == TokKind::star ? BinOp::mul : BinOp::div;
      const std::size_t pos = lex.cur.pos;
      lex.advance();
      NodePtr r = parse_factor();
      l = make_binary(op, pos, l, r);
    }
    return l;
  }

  NodePtr parse_factor() {
    if (lex.cur.kind == TokKind::minus) {
      const std::size_t pos = lex.cur.pos;
      lex.advance();
      NodePtr c = parse_factor();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::negate;
      n->pos = pos;
      n->lhs = c;
      return n;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (lex.cur.kind == TokKind::caret) {
      const std::size_t pos = lex.cur.pos;
      lex.advance();
      NodePtr exponent = parse_factor();  // right-assoc; allows signed exponent
      return make_binary(BinOp::pow, pos, base, exponent);
    }
    return base;
  }

  NodePtr parse_atom() {
    const Token t = lex.cur;
    switch (t.kind) {
      case TokKind::number: {
        lex.advance();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::number;
        n->pos = t.pos;
        n->number = t.number;
        return n;
      }
      case TokKind::ident: {
        lex.advance();
        if (t.ident == "u") return make_leaf(NodeKind::var_u, t.pos);
        if (t.ident == "pi") return make_leaf(NodeKind::const_pi, t.pos);
        if (t.ident == "e") return make_leaf(NodeKind::const_e, t.pos);
        Func f;
        if (lookup_func(t.ident, f)) {
          if (lex.cur.kind != TokKind::lparen)
            throw SyntaxError(lex.cur.pos, "'(' after function name", token_desc());
          lex.advance();
          NodePtr arg = parse_expr();
          if (lex.cur.kind != TokKind::rparen)
            throw SyntaxError(lex.cur.pos, "')'", token_desc());
          lex.advance();
          auto n = std::make_shared<Node>();
          n->kind = NodeKind::call;
          n->pos = t.pos;
          n->func = f;
          n->lhs = arg;
          return n;
        }
        throw UnknownIdentifier(t.pos, t.ident);
      }
      case TokKind::lparen: {
        lex.advance();
        NodePtr e = parse_expr();
        if (lex.cur.kind != TokKind::rparen)
          throw SyntaxError(lex.cur.pos, "')'", token_desc());
        lex.advance();
        return e;
      }
      default:
        throw SyntaxError(t.pos, "a number, 'u', a constant, a function call, '(' or '-'",
                          token_desc());
    }
  }

  static NodePtr make_leaf(NodeKind k, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->pos = pos;
    return n;
  }

  static NodePtr make_binary(BinOp op, std::size_t pos, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::binary;
    n->pos = pos;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }
};

// ---------------------------------------------------------------------------
// Evaluation / printing
// ---------------------------------------------------------------------------

inline double eval_node(const Node& n, double u) {
  switch (n.kind) {
    case NodeKind::number: return n.number;
    case NodeKind::var_u: return u;
    case NodeKind::const_pi: return 3.14159265358979323846;
    case NodeKind::const_e: return 2.71828182845904523536;
    case NodeKind::negate: return -eval_node(*n.lhs, u);
    case NodeKind::binary: {
      const double a = eval_node(*n.lhs, u);
      const double b = eval_node(*n.rhs, u);
      double r = 0.0;
      switch (n.op) {
        case BinOp::add: r = a + b; break;
        case BinOp::sub: r = a - b; break;
        case BinOp::mul: r = a * b; break;
        case BinOp::div:
          if (b == 0.0) throw EvalError(EvalError::Kind::div_by_zero, n.pos);
          r = a / b;
          break;
        case BinOp::pow: r = std::pow(a, b); break;
      }
      if (!std::isfinite(r)) throw EvalError(EvalError::Kind::non_finite, n.pos);
      return r;
    }
    case NodeKind::call: {
      const double a = eval_node(*n.lhs, u);
      double r = 0.0;
      switch (n.func) {
        case Func::sin: r = std::sin(a); break;
        case Func::cos: r = std::cos(a); break;
        case Func::tan: r = std::tan(a); break;
        case Func::exp: r = std::exp(a); break;
        case Func::ln:
          if (a <= 0.0) throw EvalError(EvalError::Kind::log_domain, n.pos);
          r = std::log(a);
          break;
        case Func::sqrt_:
          if (a < 0.0) throw EvalError(EvalError::Kind::sqrt_domain, n.pos);
          r = std::sqrt(a);
          break;
        case Func::sinh_: r = std::sinh(a); break;
        case Func::cosh_: r = std::cosh(a); break;
        case Func::tanh_: r = std::tanh(a); break;
        case Func::arccot: r = 1.57079632679489661923 - std::atan(a); break;
        case Func::sech: r = 1.0 / std::cosh(a); break;
        case Func::abs_: r = std::abs(a); break;
      }
      if (!std::isfinite(r)) throw EvalError(EvalError::Kind::non_finite, n.pos);
      return r;
    }
  }
  throw EvalError(EvalError::Kind::non_finite, n.pos);
}

inline void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case NodeKind::var_u: out += 'u'; return;
    case NodeKind::const_pi: out += "pi"; return;
    case NodeKind::const_e: out += 'e'; return;
    case NodeKind::negate:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::binary: {
      out += '(';
      print_node(*n.lhs, out);
      switch (n.op) {
        case BinOp::add: out += '+'; break;
        case BinOp::sub: out += '-'; break;
        case BinOp::mul: out += '*'; break;
        case BinOp::div: out += '/'; break;
        case BinOp::pow: out += '^'; break;
      }
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
    case NodeKind::call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace expr_detail

/// A parsed profile expression: immutable AST plus its source text.
struct ProfileExpr {
  std::string source;
  expr_detail::NodePtr ast;
};

/// Parses src into an AST. Throws SyntaxError / UnknownIdentifier with byte
/// offsets on malformed input.
inline ProfileExpr parse(const std::string& src) {
  if (src.empty()) throw SyntaxError(0, "a nonempty expression", "empty input");
  expr_detail::Parser p(src);
  return ProfileExpr{src, p.parse()};
}

/// Evaluates at the given u. Domain failures and non-finite intermediates
/// throw EvalError carrying the offending node's byte offset.
inline double eval(const ProfileExpr& e, double u) {
  return expr_detail::eval_node(*e.ast, u);
}

/// Canonical fully parenthesized form; parse(print(e)) evaluates identically.
inline std::string print(const ProfileExpr& e) {
  std::string out;
  expr_detail::print_node(*e.ast, out);
  return out;
}

/// Central-difference derivative with step h (callers default the step to
/// 1e-6 * max(1, |u|)).
inline double derivative(const ProfileExpr& e, double u, double h) {
  return (eval(e, u + h) - eval(e, u - h)) / (2.0 * h);
}

inline double derivative(const ProfileExpr& e, double u) {
  const double h = 1e-6 * std::max(1.0, std::abs(u));
  return derivative(e, u, h);
}

}  // namespace lox

#endif  // LOXOFORGE_EXPR_HPP
