#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symcalc/errors.hpp"

// One-variable real expression grammar used by the CLI and the function
// corpus.  The variable is always `t`; any other identifier is a named
// parameter that must be bound before evaluation.
//
//   expression := term (('+' | '-') term)*
//   term       := unary (('*' | '/') unary)*
//   unary      := '-' unary | power
//   power      := primary ('^' unary)?          right-associative
//   primary    := number | 't' | parameter | func '(' args ')' | '(' expression ')'
//
// '^' binds tighter than unary minus, so -t^2 is -(t^2) while the exponent
// position accepts a unary expression, so 2^-t is 2^(-t).

namespace symcalc {

enum class TokenKind { Number, Identifier, Operator, Paren, Comma };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;  // byte offset into the source
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Constant,   // number literal
    Variable,   // the variable `t`
    Parameter,  // bound-by-name parameter
    Negate,
    Add,
    Subtract,
    Multiply,
    Divide,
    Power,
    Call,  // exp, ln, sin, cos, abs, sqrt, pow2, min, max
  };

  Kind kind;
  double number = 0.0;       // Kind::Constant
  std::string name;          // Kind::Parameter / Kind::Call
  std::vector<ExprPtr> args; // operands, arity fixed by kind

  static ExprPtr constant(double v) {
    return std::make_shared<Expr>(Expr{Kind::Constant, v, {}, {}});
  }
  static ExprPtr variable() {
    return std::make_shared<Expr>(Expr{Kind::Variable, 0.0, {}, {}});
  }
  static ExprPtr parameter(std::string name) {
    return std::make_shared<Expr>(Expr{Kind::Parameter, 0.0, std::move(name), {}});
  }
  static ExprPtr negate(ExprPtr operand) {
    return std::make_shared<Expr>(Expr{Kind::Negate, 0.0, {}, {std::move(operand)}});
  }
  static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Expr{kind, 0.0, {}, {std::move(lhs), std::move(rhs)}});
  }
  static ExprPtr call(std::string name, std::vector<ExprPtr> args) {
    return std::make_shared<Expr>(Expr{Kind::Call, 0.0, std::move(name), std::move(args)});
  }
};

namespace detail {

struct FunctionInfo {
  const char* name;
  int arity;
};

// The fixed builtin function table.
inline constexpr FunctionInfo kFunctions[] = {
    {"exp", 1}, {"ln", 1},   {"sin", 1}, {"cos", 1}, {"abs", 1},
    {"sqrt", 1}, {"pow2", 1}, {"min", 2}, {"max", 2},
};

inline const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace detail

/// Splits `src` into tokens.  Whitespace separates tokens and is dropped;
/// the concatenated token texts reproduce the whitespace-stripped source.
/// Throws ParseError on an unknown character, reporting its byte offset.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (detail::is_digit(c)) {
      // number := digits ('.' digits*)? (('e'|'E') ('+'|'-')? digits)?
      while (i < n && detail::is_digit(src[i])) ++i;
      if (i < n && src[i] == '.') {
        ++i;
        while (i < n && detail::is_digit(src[i])) ++i;
      }
      if (i < n && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < n && detail::is_digit(src[j])) {  // only consume a well-formed exponent
          i = j;
          while (i < n && detail::is_digit(src[i])) ++i;
        }
      }
      tokens.push_back({TokenKind::Number, std::string(src.substr(start, i - start)), start});
    } else if (detail::is_ident_start(c)) {
      while (i < n && detail::is_ident_char(src[i])) ++i;
      tokens.push_back({TokenKind::Identifier, std::string(src.substr(start, i - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      tokens.push_back({TokenKind::Operator, std::string(1, c), start});
      ++i;
    } else if (c == '(' || c == ')') {
      tokens.push_back({TokenKind::Paren, std::string(1, c), start});
      ++i;
    } else if (c == ',') {
      tokens.push_back({TokenKind::Comma, std::string(1, c), start});
      ++i;
    } else {
      throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
  }
  return tokens;
}

namespace detail {

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t src_size)
      : tokens_(std::move(tokens)), end_offset_(src_size) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    if (pos_ != tokens_.size()) fail("expected end of input");
    return e;
  }

 private:
  ExprPtr expression() {
    ExprPtr lhs = term();
    while (is_op("+") || is_op("-")) {
      const bool add = is_op("+");
      ++pos_;
      lhs = Expr::binary(add ? Expr::Kind::Add : Expr::Kind::Subtract, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (is_op("*") || is_op("/")) {
      const bool mul = is_op("*");
      ++pos_;
      lhs = Expr::binary(mul ? Expr::Kind::Multiply : Expr::Kind::Divide, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_op("-")) {
      ++pos_;
      return Expr::negate(unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (is_op("^")) {
      ++pos_;
      return Expr::binary(Expr::Kind::Power, base, unary());
    }
    return base;
  }

  ExprPtr primary() {
    if (pos_ >= tokens_.size()) fail("expected expression");
    const Token& tok = tokens_[pos_];
    switch (tok.kind) {
      case TokenKind::Number: {
        ++pos_;
        double v = 0.0;
        const char* first = tok.text.data();
        const char* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
          throw ParseError(tok.offset, "malformed number '" + tok.text + "'");
        return Expr::constant(v);
      }
      case TokenKind::Identifier: {
        if (pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].text == "(") return callexpr();
        ++pos_;
        if (tok.text == "t") return Expr::variable();
        return Expr::parameter(tok.text);
      }
      case TokenKind::Paren:
        if (tok.text == "(") {
          ++pos_;
          ExprPtr inner = expression();
          expect(")");
          return inner;
        }
        fail("expected expression");
      default:
        fail("expected expression");
    }
    return nullptr;  // unreachable
  }

  ExprPtr callexpr() {
    const Token& tok = tokens_[pos_];
    const FunctionInfo* fn = find_function(tok.text);
    if (!fn) throw ParseError(tok.offset, "unknown function '" + tok.text + "'");
    pos_ += 2;  // name and '('
    std::vector<ExprPtr> args;
    args.push_back(expression());
    while (is_comma()) {
      ++pos_;
      args.push_back(expression());
    }
    expect(")");
    if (static_cast<int>(args.size()) != fn->arity)
      throw ParseError(tok.offset, "'" + tok.text + "' expects " +
                                       std::to_string(fn->arity) + " argument" +
                                       (fn->arity == 1 ? "" : "s"));
    return Expr::call(tok.text, std::move(args));
  }

  bool is_op(std::string_view op) const {
    return pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::Operator &&
           tokens_[pos_].text == op;
  }
  bool is_comma() const {
    return pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::Comma;
  }

  void expect(std::string_view text) {
    if (pos_ >= tokens_.size() || tokens_[pos_].text != text)
      fail("expected '" + std::string(text) + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const std::size_t off = pos_ < tokens_.size() ? tokens_[pos_].offset : end_offset_;
    throw ParseError(off, what);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_offset_;
};

}  // namespace detail

/// Parses `src` into an AST.  Throws ParseError with a byte offset and an
/// expected-token hint on malformed input.
inline ExprPtr parse(std::string_view src) {
  return detail::Parser(tokenize(src), src.size()).parse();
}

inline std::string to_string(const Expr& e);

namespace detail {

// Printing precedence; parenthesization below reproduces the parse structure.
inline int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Subtract:
      return 1;
    case Expr::Kind::Multiply:
    case Expr::Kind::Divide:
      return 2;
    case Expr::Kind::Negate:
      return 3;
    case Expr::Kind::Power:
      return 4;
    default:
      return 5;
  }
}

inline std::string print_child(const Expr& child, int min_prec) {
  std::string s = symcalc::to_string(child);
  if (precedence(child.kind) < min_prec) return "(" + s + ")";
  return s;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Renders the AST with minimal parentheses; parsing the result yields a
/// structurally identical AST (for ASTs produced by parse()).
inline std::string to_string(const Expr& e) {
  using detail::print_child;
  switch (e.kind) {
    case Expr::Kind::Constant:
      return detail::format_double(e.number);
    case Expr::Kind::Variable:
      return "t";
    case Expr::Kind::Parameter:
      return e.name;
    case Expr::Kind::Negate:
      return "-" + print_child(*e.args[0], 3);
    case Expr::Kind::Add:
      return print_child(*e.args[0], 1) + "+" + print_child(*e.args[1], 2);
    case Expr::Kind::Subtract:
      return print_child(*e.args[0], 1) + "-" + print_child(*e.args[1], 2);
    case Expr::Kind::Multiply:
      return print_child(*e.args[0], 2) + "*" + print_child(*e.args[1], 3);
    case Expr::Kind::Divide:
      return print_child(*e.args[0], 2) + "/" + print_child(*e.args[1], 3);
    case Expr::Kind::Power:
      return print_child(*e.args[0], 5) + "^" + print_child(*e.args[1], 3);
    case Expr::Kind::Call: {
      std::string s = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(*e.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

/// Structural equality of two ASTs.
inline bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Constant:
      // bit-compare: round-trip must preserve the exact double
      return a.number == b.number && std::signbit(a.number) == std::signbit(b.number);
    case Expr::Kind::Variable:
      break;
    case Expr::Kind::Parameter:
    case Expr::Kind::Call:
      if (a.name != b.name) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

/// Collects the names of all parameters referenced by the expression.
inline void collect_parameters(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Parameter) out.insert(e.name);
  for (const auto& a : e.args) collect_parameters(*a, out);
}

using ParamMap = std::map<std::string, double>;

namespace detail {

[[noreturn]] inline void domain_fail(const Expr& e, double t) {
  throw DomainError(symcalc::to_string(e), t);
}

}  // namespace detail

/// Evaluates the expression at the given variable value.  All parameters
/// must be bound in `params`.  Division by zero, log of a non-positive
/// number and similar conditions throw DomainError carrying the offending
/// sub-expression; an unknown parameter throws UnboundParameter.
inline double eval(const Expr& e, double t, const ParamMap& params = {}) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      return e.number;
    case Expr::Kind::Variable:
      return t;
    case Expr::Kind::Parameter: {
      auto it = params.find(e.name);
      if (it == params.end()) throw UnboundParameter(e.name);
      return it->second;
    }
    case Expr::Kind::Negate:
      return -eval(*e.args[0], t, params);
    case Expr::Kind::Add:
      return eval(*e.args[0], t, params) + eval(*e.args[1], t, params);
    case Expr::Kind::Subtract:
      return eval(*e.args[0], t, params) - eval(*e.args[1], t, params);
    case Expr::Kind::Multiply:
      return eval(*e.args[0], t, params) * eval(*e.args[1], t, params);
    case Expr::Kind::Divide: {
      const double num = eval(*e.args[0], t, params);
      const double den = eval(*e.args[1], t, params);
      if (den == 0.0) detail::domain_fail(e, t);
      return num / den;
    }
    case Expr::Kind::Power: {
      const double base = eval(*e.args[0], t, params);
      const double exponent = eval(*e.args[1], t, params);
      if (base == 0.0 && exponent < 0.0) detail::domain_fail(e, t);
      const double r = std::pow(base, exponent);
      if (std::isnan(r)) detail::domain_fail(e, t);  // e.g. negative base, fractional exponent
      return r;
    }
    case Expr::Kind::Call: {
      const double x = eval(*e.args[0], t, params);
      if (e.name == "exp") return std::exp(x);
      if (e.name == "ln") {
        if (x <= 0.0) detail::domain_fail(e, t);
        return std::log(x);
      }
      if (e.name == "sin") return std::sin(x);
      if (e.name == "cos") return std::cos(x);
      if (e.name == "abs") return std::fabs(x);
      if (e.name == "sqrt") {
        if (x < 0.0) detail::domain_fail(e, t);
        return std::sqrt(x);
      }
      if (e.name == "pow2") return x * x;  // square
      const double y = eval(*e.args[1], t, params);
      if (e.name == "min") return std::min(x, y);
      return std::max(x, y);  // "max"
    }
  }
  return 0.0;  // unreachable
}

}  // namespace symcalc
