#include "doctest.h"
#include "liesym/reduction.hpp"
#include "support/check.hpp"

using namespace liesym;
using liesym::testing::code_of;

namespace {

Expr P(const char* s) { return parse(s); }

CaseParams ratio_params(Expr k2_over_k4) {
  CaseParams p;
  p.k2 = k2_over_k4 * sym::k(4);
  return p;
}

}  // namespace

TEST_CASE("pde_of_case") {
  CHECK(pde_of_case(CaseTag::A).f == P("k3*exp(k4*u)"));
  CHECK(pde_of_case(CaseTag::A).g == P("k1*exp(k2*u)"));
  CHECK(pde_of_case(CaseTag::B).f == P("k3*exp(k2*u) + k5"));
  CHECK(pde_of_case(CaseTag::C).f == P("k5"));
}

TEST_CASE("invariant surface condition") {
  auto b = reduce_case_b();
  auto cs = reduce_case_c({}, CBranch::Scale);
  CHECK(invariant_surface_check(b.generator, b.ansatz, b.z));
  CHECK(invariant_surface_check(cs.generator, cs.ansatz, cs.z));
  CHECK_FALSE(invariant_surface_check(cs.generator, b.ansatz, b.z));
  CHECK(b.ansatz == P("k5*t + ln(h)/k2"));
  CHECK(cs.ansatz == P("ln(x^2/h)/k2"));
}

TEST_CASE("case a with k2 = k4 = k") {
  CaseParams p;
  p.k2 = Expr::constant("k");
  p.k4 = p.k2;
  auto s = reduce_case_a(p);
  CHECK(s.verification == "symbolic");
  CHECK(s.z == P("x^2"));
  const Expr reference = P("4*k1*z*h_zz + 4*k1*h_z + k*k3*h + 1");
  CHECK(is_zero(s.reduced_ode - p.k2 * reference));
}

TEST_CASE("case a with k1 = k3 = 1, k4 = 2 k2") {
  CaseParams p;
  p.k1 = Expr(1);
  p.k3 = Expr(1);
  p.k4 = 2 * p.k2;
  auto s = reduce_case_a(p);
  CHECK(s.verification == "symbolic");
  CHECK(s.z == P("x^2*t^(-1/2)"));
  const Expr reference = P("8*z*h_zz + (8 + z/h)*h_z + 2*k2*h^2 + 1");
  CHECK(is_zero(s.reduced_ode - p.k2 * reference));
}

TEST_CASE("case a factorization for rational exponent ratios") {
  for (auto r : {sym::rat(1), sym::rat(1, 2), sym::rat(2), sym::rat(1, 3)}) {
    auto s = reduce_case_a(ratio_params(r));
    CAPTURE(print(r));
    CHECK(s.verification == "symbolic");
    CHECK(is_zero(partial_diff(s.z, sym::x()) * s.generator.xi + partial_diff(s.z, sym::t()) * s.generator.tau));
    for (double x : {0.5, 1.5}) {
      for (double t : {0.7, 2.0}) {
        const double m = eval_numeric(s.multiplier, {{"x", x}, {"t", t}, {"h", 1.3}, {"k1", 0.7}, {"k2", 0.9},
                                                     {"k3", -1.1}, {"k4", 1.7}});
        CHECK(m != 0.0);
      }
    }
  }
}

TEST_CASE("case a with symbolic exponents") {
  CHECK(code_of([] { reduce_case_a_symbolic(CaseParams{}); }) == ErrorCode::NonRationalExponent);
  auto s = reduce_case_a();
  CHECK(s.verification == "numeric");
  CHECK(s.multiplier == P("-1/(k2*k4*t)"));
}

TEST_CASE("case a ansatz in log form") {
  auto s = reduce_case_a();
  // u = -ln(t)/k4 + h1(z), with h1 = ln(h)/k2
  CHECK(is_zero(s.ansatz - (-ln(sym::t()) / sym::k(4) + ln(hsym::h()) / sym::k(2))));
}

TEST_CASE("case b") {
  auto s = reduce_case_b();
  CHECK(s.reduced_ode == P("k1*z*h_zz + k1*h_z + k2*k3*z*h"));
  CHECK(s.verification == "symbolic");
  CHECK(s.closed_form_text == "c1*J0((k2*k3/k1)^(1/2)*z) + c2*Y0((k2*k3/k1)^(1/2)*z)");

  CaseParams unit;
  unit.k1 = unit.k2 = unit.k3 = Expr(1);
  CHECK(reduce_case_b(unit).closed_form_text == "c1*J0((1)^(1/2)*z) + c2*Y0((1)^(1/2)*z)");

  CaseParams neg = unit;
  neg.k3 = Expr(-1);
  auto n = reduce_case_b(neg);
  CHECK(n.closed_form_text.empty());
  REQUIRE(n.notes.size() == 1);
  CHECK(n.notes[0].find("NegativeBesselArgument") == 0);
  CHECK(n.reduced_ode == P("z*h_zz + h_z - z*h"));
  CHECK(code_of([] { bessel_closed_form_residual(1, 1, -1, 1, 0, 0.5, 20, 10); }) == ErrorCode::NegativeBesselArgument);

  CHECK(bessel_closed_form_residual(1, 1, 1, 1, 0, 0.5, 20, 100) < 1e-9);
  CHECK(bessel_closed_form_residual(2, 0.5, 3, 0.4, -1.2, 0.5, 20, 100) < 1e-9);
}

TEST_CASE("case c branches") {
  auto sc = reduce_case_c({}, CBranch::Scale);
  CHECK(sc.z == sym::t());
  CHECK(sc.reduced_ode == P("h_z + k2*k5*h + 4*k1"));
  REQUIRE(sc.closed_form);
  CHECK(*sc.closed_form == P("-4*k1/(k2*k5) + c1*exp(-k2*k5*z)"));
  CHECK(ode_on(sc.reduced_ode, *sc.closed_form).is_zero());
  CHECK(sc.multiplier == P("-1/(k2*h)"));

  auto lg = reduce_case_c({}, CBranch::Log);
  REQUIRE(lg.closed_form);
  CHECK(ode_on(lg.reduced_ode, *lg.closed_form).is_zero());
  // the closed-form solution itself solves the pde
  const Expr u = substitute(lg.ansatz, hsym::h(), substitute(*lg.closed_form, sym::z(), sym::x()));
  CHECK(u == P("k5*t + ln(c1 + c2*ln(x))/k2"));
  auto pde = pde_of_case(CaseTag::C);
  auto on_u = [&](const Expr& sol) {
    return substitute(pde.residual, {{sym::u(), sol},
                                     {sym::u_x(), partial_diff(sol, sym::x())},
                                     {sym::u_t(), partial_diff(sol, sym::t())},
                                     {sym::u_xx(), partial_diff(partial_diff(sol, sym::x()), sym::x())}});
  };
  CHECK(is_zero(on_u(u)));
  // the form without 1/k2 only works for k2 = 1
  const Expr printed = P("k5*t + ln(c1 + c2*ln(x))");
  CHECK_FALSE(is_zero(on_u(printed)));
  CHECK(is_zero(substitute(on_u(printed), sym::k(2), Expr(1))));
}

TEST_CASE("k3 = 0 specialization of case b gives the log branch") {
  auto b = reduce_case_b();
  auto lg = reduce_case_c({}, CBranch::Log);
  CHECK(substitute(b.reduced_ode, sym::k(3), Expr()) == lg.reduced_ode);
  CHECK(ode_on(lg.reduced_ode, Expr(1)).is_zero());
  CHECK(ode_on(lg.reduced_ode, ln(sym::z())).is_zero());
}

TEST_CASE("every solution's generator annihilates z") {
  for (const auto& s : {reduce_case_a(ratio_params(sym::rat(1, 2))), reduce_case_b(), reduce_case_c({}, CBranch::Log),
                        reduce_case_c({}, CBranch::Scale)}) {
    CAPTURE(to_string(s.tag));
    CHECK(is_zero(s.generator.xi * partial_diff(s.z, sym::x()) + s.generator.tau * partial_diff(s.z, sym::t())));
    CHECK(invariant_surface_check(s.generator, s.ansatz, s.z));
  }
}
