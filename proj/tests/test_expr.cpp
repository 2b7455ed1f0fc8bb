#include <cmath>

#include "doctest.h"
#include "liesym/error.hpp"
#include "liesym/expr.hpp"
#include "support/random_expr.hpp"

using namespace liesym;
using liesym::testing::RandomExpr;

namespace {

Expr P(const char* s) { return parse(s); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Overflow;
}

}  // namespace

TEST_CASE("normalize merges like terms and cancels") {
  CHECK(P("u_x + u_x") == 2 * sym::u_x());
  CHECK(P("exp(k2*u)*exp(-k2*u)").is_one());
  CHECK(P("(x*u_x)*(1/x)") == sym::u_x());
  CHECK(P("x^0").is_one());
  CHECK(P("x^1") == sym::x());
  CHECK(P("exp(0)").is_one());
  CHECK(P("ln(1)").is_zero());
  CHECK(P("exp(ln(x))") == sym::x());
  CHECK(P("ln(exp(k2*u))") == sym::k(2) * sym::u());
  CHECK(P("(u+1)^2 - u^2 - 2*u - 1").is_zero());
}

TEST_CASE("normalize is idempotent on raw trees") {
  Expr raw = parse_raw("(x + 1)*(x - 1) + exp(k2*u)*exp(k4*u)/x");
  CHECK_FALSE(raw.is_canonical());
  Expr once = normalize(raw);
  CHECK(normalize(once) == once);
  CHECK(once.is_canonical());

  RandomExpr gen(7);
  for (int i = 0; i < 200; ++i) {
    Expr e = gen(4);
    CHECK(normalize(e) == e);
    CHECK(normalize(parse_raw(print(e))) == e);
  }
}

TEST_CASE("malformed input") {
  CHECK(code_of([] { parse("q + 1"); }) == ErrorCode::MalformedExpression);
  CHECK(code_of([] { parse("ln(0)"); }) == ErrorCode::MalformedExpression);
  CHECK(code_of([] { parse("1/(x - x)"); }) == ErrorCode::MalformedExpression);
  CHECK(code_of([] { parse("(x + "); }) == ErrorCode::MalformedExpression);
}

TEST_CASE("printer output re-parses exactly") {
  for (const char* s : {"-k1*k2*exp(k2*u)*u_x^2", "u_x/(2*x)", "t^(-1 + k2/k4)", "c1 + c2*ln(x)",
                        "1/(c1 + c2*ln(x))", "xi_xu - eta_uu/3", "h^(3/2)*h_z", "xi_x(x,t)"}) {
    Expr e = P(s);
    CAPTURE(s);
    CAPTURE(print(e));
    CHECK(parse(print(e)) == e);
  }
  CHECK(print(P("u_x/(2*x)")) == "u_x/(2*x)");
}

TEST_CASE("partial_diff") {
  CHECK(partial_diff(P("x*u_x"), sym::x()) == sym::u_x());
  CHECK(partial_diff(P("xi(x,t)"), sym::u()).is_zero());
  CHECK(partial_diff(P("exp(k2*u)"), sym::u()) == P("k2*exp(k2*u)"));
  CHECK(partial_diff(P("xi"), sym::x()) == P("xi_x"));
  CHECK(partial_diff(P("ln(x)"), sym::x()) == P("1/x"));
  CHECK(partial_diff(P("t^(k2/k4 - 1)"), sym::t()) == P("(k2/k4 - 1)*t^(k2/k4 - 2)"));
  CHECK(code_of([] { partial_diff(P("xi_xxu"), sym::x()); }) == ErrorCode::DerivativeOrderExceeded);
}

TEST_CASE("total derivatives") {
  CHECK(total_diff_x(sym::u()) == sym::u_x());
  CHECK(total_diff_x(P("x*g*u_x")) == P("g*u_x + x*g_u*u_x^2 + x*g*u_xx"));
  CHECK(total_diff_t(P("xi(x,t)")) == P("xi_t(x,t)"));
  CHECK(total_diff_t(P("xi")) == P("xi_t + u_t*xi_u"));
  CHECK(code_of([] { total_diff_x(P("u_xx")); }) == ErrorCode::DerivativeOrderExceeded);
}

TEST_CASE("substitute") {
  CHECK(substitute(P("u_t + u_x"), sym::u_t(), P("f")) == P("f + u_x"));
  CHECK(substitute(P("u_x*u_t"), sym::u_t(), P("g*u_xx")) == P("g*u_x*u_xx"));
  CHECK(substitute(P("exp(k2*u)"), sym::u(), Expr()).is_one());
  CHECK(substitute(P("x + 1"), sym::u_t(), P("f")) == P("x + 1"));
}

TEST_CASE("collect") {
  auto c = collect(P("k1*u_x^2 + k2*u_x*u_xx + k3*u_x^2"), {P("u_x^2"), P("u_x*u_xx")});
  REQUIRE(c.coefficients.size() == 2);
  CHECK(c.coefficients[0].second == P("k1 + k3"));
  CHECK(c.coefficients[1].second == P("k2"));
  CHECK(c.remainder.is_zero());

  auto r = collect(P("x + u"), {sym::u_x()});
  CHECK(r.coefficients[0].second.is_zero());
  CHECK(r.remainder == P("x + u"));

  CHECK(code_of([] { collect(P("exp(u_x)"), {sym::u_x()}); }) == ErrorCode::NonPolynomialInJet);

  RandomExpr gen(11);
  for (int i = 0; i < 50; ++i) {
    Expr e = gen(4);
    std::vector<Expr> monos{Expr(1), sym::u_x(), P("u_x^2")};
    Collected col;
    try {
      col = collect(e, monos);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NonPolynomialInJet);
      continue;
    }
    Expr back = col.remainder;
    for (const auto& [m, co] : col.coefficients) back = back + m * co;
    CHECK(back == e);
  }
}

TEST_CASE("is_zero") {
  CHECK(is_zero(P("exp(k2*u)*exp(-k2*u) - 1")));
  CHECK_FALSE(is_zero(sym::u_x()));
  CHECK(is_zero(P("(u+1)^2 - u^2 - 2*u - 1")));
  CHECK(is_zero(P("(x + x^2)/(1 + x) - x")));
  CHECK(is_zero(P("ln(h^(1/k2)*t^(-1/k4)) - (-ln(t)/k4 + ln(h)/k2)")));
  // sqrt((x+1)^2) - (x+1) is zero for x > 0 but not by canonical rewriting.
  CHECK(code_of([] { is_zero(P("(x^2 + 2*x + 1)^(1/2) - x - 1")); }) == ErrorCode::ProbableZero);
}

TEST_CASE("eval_numeric") {
  CHECK(eval_numeric(P("exp(0)")) == 1.0);
  CHECK(eval_numeric(P("x^2"), {{"x", 3.0}}) == 9.0);
  CHECK(code_of([] { eval_numeric(P("ln(x)"), {{"x", -1.0}}); }) == ErrorCode::DomainError);
  CHECK(code_of([] { eval_numeric(P("x + k1"), {{"x", 1.0}}); }) == ErrorCode::UnboundSymbol);
  CHECK(eval_numeric(P("xi_x*h_zz"), {{"xi_x", 2.0}, {"h_zz", 3.0}}) == 6.0);
}

TEST_CASE("differentiation properties on random expressions") {
  RandomExpr gen(2024);
  const Expr x = sym::x();
  for (int i = 0; i < 60; ++i) {
    Expr a = gen(4);
    Expr b = gen(4);
    CAPTURE(print(a));
    CAPTURE(print(b));
    // linearity
    Expr lin = partial_diff(3 * a + sym::k(1) * b, x) - 3 * partial_diff(a, x) - sym::k(1) * partial_diff(b, x);
    CHECK(is_zero(lin));
    // Leibniz
    Expr leib = partial_diff(a * b, x) - a * partial_diff(b, x) - b * partial_diff(a, x);
    CHECK(is_zero(leib));
    // finite differences
    Bindings bind = gen.bindings();
    const double h = 1e-5;
    Bindings lo = bind;
    Bindings hi = bind;
    lo["x"] -= h;
    hi["x"] += h;
    const double fd = (eval_numeric(a, hi) - eval_numeric(a, lo)) / (2 * h);
    const double an = eval_numeric(partial_diff(a, x), bind);
    CHECK(std::fabs(fd - an) <= 1e-6 * std::max(1.0, std::fabs(an)));
  }
}

TEST_CASE("mixed partials of unknown functions commute") {
  for (const char* f : {"xi", "tau", "eta"}) {
    Expr e = P(f);
    CHECK(partial_diff(partial_diff(e, sym::x()), sym::t()) == partial_diff(partial_diff(e, sym::t()), sym::x()));
    CHECK(partial_diff(partial_diff(e, sym::u()), sym::x()) == partial_diff(partial_diff(e, sym::x()), sym::u()));
  }
}
