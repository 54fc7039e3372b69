#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "symcalc/expr.hpp"

using namespace symcalc;

TEST_CASE("tokenize produces the expected stream", "[expr][lex]") {
  const auto toks = tokenize("2^(-t)");
  REQUIRE(toks.size() == 6);
  CHECK(toks[0].kind == TokenKind::Number);
  CHECK(toks[0].text == "2");
  CHECK(toks[1].kind == TokenKind::Operator);
  CHECK(toks[1].text == "^");
  CHECK(toks[2].kind == TokenKind::Paren);
  CHECK(toks[3].kind == TokenKind::Operator);
  CHECK(toks[3].text == "-");
  CHECK(toks[4].kind == TokenKind::Identifier);
  CHECK(toks[4].text == "t");
  CHECK(toks[5].kind == TokenKind::Paren);
  for (std::size_t i = 1; i < toks.size(); ++i) CHECK(toks[i - 1].offset < toks[i].offset);
}

TEST_CASE("tokenize of empty input is empty", "[expr][lex]") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t ").empty());
}

TEST_CASE("tokenize reports the byte offset of a bad character", "[expr][lex]") {
  try {
    tokenize("3 $ 4");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(std::string(e.what()).rfind("syntax error at byte 2:", 0) == 0);
  }
}

TEST_CASE("number lexing handles fractions and exponents", "[expr][lex]") {
  CHECK(eval(*parse("1.5e2"), 0.0) == 150.0);
  CHECK(eval(*parse("2.5E-1"), 0.0) == 0.25);
  CHECK(eval(*parse("2."), 0.0) == 2.0);
  CHECK(eval(*parse("1e3"), 0.0) == 1000.0);
  // leading-dot literals are not in the grammar
  CHECK_THROWS_AS(parse(".5"), ParseError);
  // "1e" lexes as number 1 followed by identifier e
  CHECK_THROWS_AS(parse("1e"), ParseError);
}

TEST_CASE("parse builds the documented precedence", "[expr][parse]") {
  // t^2 + 3*t  ->  Add(Pow(t,2), Mul(3,t))
  const ExprPtr e = parse("t^2 + 3*t");
  REQUIRE(e->kind == Expr::Kind::Add);
  REQUIRE(e->args.size() == 2);
  const Expr& pow = *e->args[0];
  const Expr& mul = *e->args[1];
  REQUIRE(pow.kind == Expr::Kind::Power);
  CHECK(pow.args[0]->kind == Expr::Kind::Variable);
  CHECK(pow.args[1]->kind == Expr::Kind::Constant);
  CHECK(pow.args[1]->number == 2.0);
  REQUIRE(mul.kind == Expr::Kind::Multiply);
  CHECK(mul.args[0]->kind == Expr::Kind::Constant);
  CHECK(mul.args[1]->kind == Expr::Kind::Variable);
}

TEST_CASE("unary minus binds below the exponent", "[expr][parse]") {
  // 2^-t  ->  Pow(2, Neg(t))
  const ExprPtr e = parse("2^-t");
  REQUIRE(e->kind == Expr::Kind::Power);
  CHECK(e->args[0]->kind == Expr::Kind::Constant);
  REQUIRE(e->args[1]->kind == Expr::Kind::Negate);
  CHECK(e->args[1]->args[0]->kind == Expr::Kind::Variable);
  CHECK(equal(*parse("2^-t"), *parse("2^(-t)")));
  // ...but below ^ on the base side: -t^2 == -(t^2)
  CHECK(eval(*parse("-t^2"), 2.0) == -4.0);
}

TEST_CASE("associativity matches the grammar", "[expr][parse]") {
  CHECK(eval(*parse("2^3^2"), 0.0) == 512.0);  // right-associative
  CHECK(eval(*parse("1-2-3"), 0.0) == -4.0);   // left-associative
  CHECK(eval(*parse("16/4/2"), 0.0) == 2.0);
  CHECK(eval(*parse("2*3+4*5"), 0.0) == 26.0);
}

TEST_CASE("parse errors carry a position and a hint", "[expr][parse]") {
  const std::vector<std::string> bad = {
      "1/(1-t", "t +", "* t", "2^^3", "min(t)", "min(t,1,2)", "foo(t)", "(", ")", "1 2",
      "t,1", "exp()",
  };
  for (const auto& src : bad) {
    INFO("source: " << src);
    try {
      parse(src);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).rfind("syntax error at byte", 0) == 0);
      CHECK(e.offset() <= src.size());
    }
  }
}

TEST_CASE("eval matches hand arithmetic", "[expr][eval]") {
  CHECK(eval(*parse("t^2+3*t"), 2.0) == 10.0);
  CHECK(eval(*parse("2^(-t)"), 3.0) == 0.125);
  CHECK(eval(*parse("(1+2)*t - 4/2"), 3.0) == 7.0);
}

TEST_CASE("eval reports domain errors instead of crashing", "[expr][eval]") {
  CHECK_THROWS_AS(eval(*parse("1/t"), 0.0), DomainError);
  CHECK_THROWS_AS(eval(*parse("ln(t)"), 0.0), DomainError);
  CHECK_THROWS_AS(eval(*parse("ln(t)"), -1.0), DomainError);
  CHECK_THROWS_AS(eval(*parse("sqrt(t)"), -4.0), DomainError);
  CHECK_THROWS_AS(eval(*parse("t^(-1)"), 0.0), DomainError);
  CHECK_THROWS_AS(eval(*parse("(-2)^t"), 0.5), DomainError);  // pow -> NaN
}

TEST_CASE("function calls evaluate through the std library", "[expr][eval]") {
  const double t = 0.7;
  CHECK(eval(*parse("exp(t)"), t) == std::exp(t));
  CHECK(eval(*parse("ln(t)"), t) == std::log(t));
  CHECK(eval(*parse("sin(t)"), t) == std::sin(t));
  CHECK(eval(*parse("cos(t)"), t) == std::cos(t));
  CHECK(eval(*parse("abs(-t)"), t) == t);
  CHECK(eval(*parse("sqrt(t)"), t) == std::sqrt(t));
  CHECK(eval(*parse("pow2(t)"), t) == t * t);
  CHECK(eval(*parse("min(t, 0.5)"), t) == 0.5);
  CHECK(eval(*parse("max(t, 0.5)"), t) == t);
}

TEST_CASE("parameters bind by name", "[expr][eval]") {
  const ExprPtr e = parse("a*t + b");
  CHECK(eval(*e, 1.0, {{"a", 2.0}, {"b", 3.0}}) == 5.0);
  CHECK_THROWS_AS(eval(*e, 1.0, {{"a", 2.0}}), UnboundParameter);
  std::set<std::string> names;
  collect_parameters(*e, names);
  CHECK(names == std::set<std::string>{"a", "b"});
}

TEST_CASE("pretty-print round-trips to an identical AST", "[expr][print]") {
  const std::vector<std::string> corpus = {
      "7",
      "2*t-1",
      "t^2",
      "t^3-2*t",
      "t^4-3*t^2+1",
      "exp(-t)",
      "sin(t)",
      "2^(-t)",
      "2^-t",
      "1/(1+t^2)",
      "-(t+1)^2",
      "-t^2",
      "t-2-3",
      "2^t^2",
      "(t+1)/(t-1)",
      "min(t, 2)*max(t, -1)",
      "sqrt(abs(t))",
      "pow2(t+1)",
      "exp(-(t^2)/2)",
      "a*t+b",
      "t*(1-t)",
      "1.5e2*t",
  };
  for (const auto& src : corpus) {
    INFO("source: " << src);
    const ExprPtr ast = parse(src);
    const std::string printed = to_string(*ast);
    INFO("printed: " << printed);
    const ExprPtr reparsed = parse(printed);
    CHECK(equal(*ast, *reparsed));
  }
}

TEST_CASE("eval of a+b equals eval(a) + eval(b) exactly", "[expr][eval]") {
  const ExprPtr sum = parse("a+b");
  const ExprPtr pa = parse("a");
  const ExprPtr pb = parse("b");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double a = dist(rng);
    const double b = dist(rng);
    const ParamMap params{{"a", a}, {"b", b}};
    CHECK(eval(*sum, 0.0, params) == eval(*pa, 0.0, params) + eval(*pb, 0.0, params));
  }
}

TEST_CASE("fuzzed input never crashes the parser", "[expr][fuzz]") {
  std::mt19937_64 rng(20240915);
  const std::string charset = "0123456789.+-*/^()ttabce xp,nsilqum$#@\\\"'\n";
  std::uniform_int_distribution<std::size_t> len(0, 64);
  std::uniform_int_distribution<std::size_t> pick(0, charset.size() - 1);
  int parsed = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string src;
    const std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) src += charset[pick(rng)];
    try {
      const ExprPtr e = parse(src);
      ++parsed;
      CHECK(equal(*e, *parse(to_string(*e))));  // printable and stable
    } catch (const ParseError& e) {
      CHECK(e.offset() <= src.size());
    }
  }
  CHECK(parsed > 0);  // the generator does produce valid expressions
}
