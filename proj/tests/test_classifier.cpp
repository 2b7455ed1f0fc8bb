#include <random>

#include "doctest.h"
#include "liesym/classifier.hpp"
#include "support/check.hpp"

using namespace liesym;
using liesym::testing::code_of;

namespace {

Expr P(const char* s) { return parse(s); }

bool exact_symmetry(const VectorField& v, const PDESpec& p) {
  // canonical form must vanish without falling back to probes
  const Expr c = symmetry_condition(v, p);
  return c.is_zero() || together_numerator(c).is_zero();
}

}  // namespace

TEST_CASE("build_case generators") {
  auto a = build_case(CaseTag::A);
  REQUIRE(a.generators.size() == 2);
  CHECK(a.generators[0].field.tau.is_one());
  CHECK(a.generators[1].field.xi == P("(k4 - k2)*x"));
  CHECK(a.generators[1].field.tau == P("2*k4*t"));
  CHECK(a.generators[1].field.eta == Expr(-2));
  CHECK(a.f == P("k3*exp(k4*u)"));

  auto b = build_case(CaseTag::B);
  CHECK(b.f == P("k3*exp(k2*u) + k5"));
  CHECK(b.generators[1].field.eta == P("k5*exp(-k2*k5*t)"));

  auto c = build_case(CaseTag::C);
  REQUIRE(c.generators.size() == 3);
  CHECK(c.generators[2].field.xi == P("k2*x"));
  CHECK(c.generators[2].field.eta == Expr(2));
  CHECK(c.f == P("k5"));
}

TEST_CASE("parameter constraints") {
  CaseParams p;
  p.k3 = Expr();
  CHECK(code_of([&] { build_case(CaseTag::A, p); }) == ErrorCode::ParameterConstraintViolated);
  CHECK(code_of([&] { build_case(CaseTag::B, p); }) == ErrorCode::ParameterConstraintViolated);
  CHECK_NOTHROW(build_case(CaseTag::C, p));
  CaseParams q;
  q.k5 = Expr();
  CHECK(code_of([&] { build_case(CaseTag::C, q); }) == ErrorCode::ParameterConstraintViolated);
  CHECK_NOTHROW(build_case(CaseTag::A, q));
}

TEST_CASE("every generator is an exact symmetry with symbolic constants") {
  for (auto tag : {CaseTag::A, CaseTag::B, CaseTag::C}) {
    auto c = build_case(tag);
    auto p = pde_of(c);
    for (const auto& g : c.generators) {
      CAPTURE(to_string(tag));
      CAPTURE(g.name);
      CHECK(exact_symmetry(g.field, p));
    }
  }
}

TEST_CASE("case a with k2 = k4 degenerates to a common exponent") {
  CaseParams p;
  p.k4 = p.k2;
  auto c = build_case(CaseTag::A, p);
  CHECK(c.f == P("k3*exp(k2*u)"));
  CHECK(c.generators[1].field.xi.is_zero());
  CHECK(exact_symmetry(c.generators[1].field, pde_of(c)));
}

TEST_CASE("eta_from_constraint") {
  const Expr g = P("k1*exp(k2*u)");
  CHECK(eta_from_constraint(P("c1*x"), P("c3*t + c4"), g) == P("(2*c1 - c3)/k2"));
  CHECK(eta_from_constraint(Expr(), P("c3*exp(-k2*k5*t)"), g) == P("c3*k5*exp(-k2*k5*t)"));
  CHECK(eta_from_constraint(P("x"), P("2*t"), g).is_zero());
  CHECK(code_of([] { eta_from_constraint(P("x"), P("t"), P("k1")); }) == ErrorCode::DegenerateDiffusion);
}

TEST_CASE("case a consistency relation") {
  // (k2/k4 - 1) c3 = -2 c1
  const Expr c3 = sym::c(3);
  const Expr c1 = (1 - sym::k(2) / sym::k(4)) * c3 / 2;
  const Expr xi = c1 * sym::x();
  const Expr tau = c3 * sym::t();
  const Expr eta = eta_from_constraint(xi, tau, P("k1*exp(k2*u)"));
  const auto x2 = build_case(CaseTag::A).generators[1].field;
  // (xi, tau, eta) = lambda * X2 with lambda = tau / X2.tau
  CHECK(is_zero(xi * x2.tau - tau * x2.xi));
  CHECK(is_zero(eta * x2.tau - tau * x2.eta));
}

TEST_CASE("diffusion_class") {
  CHECK(diffusion_class(P("k1*exp(k2*u)")) == DiffusionClass::Exponential);
  CHECK(diffusion_class(P("k1*(u + k2)^3")) == DiffusionClass::PowerLaw);
  CHECK(diffusion_class(P("k1*(u + k2)^(5/2)")) == DiffusionClass::PowerLaw);
  CHECK(diffusion_class(P("k1*(u + k2)^k3")) == DiffusionClass::PowerLaw);
  CHECK(diffusion_class(P("u^2 + 1")) == DiffusionClass::NoExtraSymmetry);
  CHECK(diffusion_class(P("exp(u^2)")) == DiffusionClass::NoExtraSymmetry);
  CHECK(code_of([] { diffusion_class(P("k1")); }) == ErrorCode::DegenerateDiffusion);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n(-20, 20);
  std::uniform_int_distribution<int> d(1, 9);
  for (int i = 0; i < 50;) {
    const int a = n(rng);
    const int b = n(rng);
    if (a == 0 || b == 0) continue;
    ++i;
    const Expr g = sym::rat(a, d(rng)) * exp(sym::rat(b, d(rng)) * sym::u());
    CHECK(diffusion_class(g) == DiffusionClass::Exponential);
  }
}

TEST_CASE("negative controls") {
  auto controls = negative_controls();
  CHECK(controls.size() >= 6);
  int passing = 0;
  for (const auto& c : controls) {
    CAPTURE(c.name);
    CHECK(is_symmetry(c.field, c.pde) == c.expected);
    passing += c.expected;
  }
  CHECK(passing == 1);
}

TEST_CASE("bracket closure in case c") {
  auto c = build_case(CaseTag::C);
  const auto& x1 = c.generators[0].field;
  const auto& x2 = c.generators[1].field;
  auto b = bracket(x1, x2);
  // [X1, X2] = -k2 k5 X2
  const Expr lambda = -sym::k(2) * sym::k(5);
  CHECK(is_zero(b.xi - lambda * x2.xi));
  CHECK(is_zero(b.tau - lambda * x2.tau));
  CHECK(is_zero(b.eta - lambda * x2.eta));
  CHECK(is_symmetry(b, pde_of(c)));
}
