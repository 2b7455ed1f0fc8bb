#include "doctest.h"
#include "liesym/expr.hpp"
#include "liesym/prolongation.hpp"
#include "support/check.hpp"

using namespace liesym;
using liesym::testing::code_of;

namespace {

Expr P(const char* s) { return parse(s); }

VectorField vf(const char* xi, const char* tau, const char* eta) { return make_vector_field(P(xi), P(tau), P(eta)); }

}  // namespace

TEST_CASE("time translation has trivial prolongation") {
  auto pf = prolong2(vf("0", "1", "0"));
  CHECK(pf.mu_x.is_zero());
  CHECK(pf.mu_t.is_zero());
  CHECK(pf.mu_xx.is_zero());
  CHECK(apply_prolonged(pf, P("u_t - u_xx")).is_zero());
}

TEST_CASE("spatial scaling") {
  auto pf = prolong2(vf("x", "0", "0"));
  CHECK(pf.mu_x == -sym::u_x());
  CHECK(pf.mu_t.is_zero());
  CHECK(pf.mu_xx == -2 * sym::u_xx());
  CHECK(apply_prolonged(pf, sym::u_x()) == -sym::u_x());
}

TEST_CASE("case a scaling generator") {
  auto pf = prolong2(vf("(k4 - k2)*x", "2*k4*t", "-2"));
  CHECK(pf.mu_x == P("(k2 - k4)*u_x"));
  CHECK(pf.mu_t == P("-2*k4*u_t"));
  CHECK(pf.mu_xx == P("2*(k2 - k4)*u_xx"));
}

TEST_CASE("apply_prolonged basics") {
  auto pf = prolong2(vf("xi", "tau", "eta"));
  CHECK(apply_prolonged(pf, sym::u()) == P("eta"));
  CHECK(code_of([&] { apply_prolonged(pf, P("u_xt")); }) == ErrorCode::UncoveredJetVariable);
  CHECK(code_of([&] { apply_prolonged(pf, P("u_tt + u")); }) == ErrorCode::UncoveredJetVariable);
  CHECK(code_of([] { make_vector_field(P("u_x"), Expr(), Expr()); }) == ErrorCode::InvalidCoefficient);
}

TEST_CASE("general second prolongation by hand") {
  auto pf = prolong2(vf("xi", "tau", "eta"));
  CHECK(is_zero(pf.mu_x - P("eta_x + (eta_u - xi_x)*u_x - xi_u*u_x^2 - tau_x*u_t - tau_u*u_x*u_t")));
  CHECK(is_zero(pf.mu_t - P("eta_t + (eta_u - tau_t)*u_t - tau_u*u_t^2 - xi_t*u_x - xi_u*u_x*u_t")));
}

TEST_CASE("linearity of prolong2") {
  const std::vector<VectorField> fields = {vf("xi", "tau", "eta"), vf("x*u", "t^2", "exp(k2*u)"),
                                           vf("(k4 - k2)*x", "2*k4*t", "-2"), vf("0", "exp(-k2*k5*t)", "k5*exp(-k2*k5*t)")};
  const Expr a = sym::rat(3, 2);
  const Expr b = sym::k(1);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = 0; j < fields.size(); ++j) {
      auto lhs = prolong2(combine(a, fields[i], b, fields[j]));
      auto pi = prolong2(fields[i]);
      auto pj = prolong2(fields[j]);
      CHECK(is_zero(lhs.mu_x - a * pi.mu_x - b * pj.mu_x));
      CHECK(is_zero(lhs.mu_t - a * pi.mu_t - b * pj.mu_t));
      CHECK(is_zero(lhs.mu_xx - a * pi.mu_xx - b * pj.mu_xx));
    }
  }
}

TEST_CASE("degenerate linear case") {
  auto pf = prolong2(vf("0", "0", "eta(x,t)"));
  CHECK(pf.mu_x == P("eta_x(x,t)"));
  CHECK(pf.mu_t == P("eta_t(x,t)"));
  CHECK(pf.mu_xx == P("eta_xx(x,t)"));
  auto q = prolong2(vf("0", "0", "x^2*t + ln(x)"));
  CHECK(q.mu_xx == P("2*t - 1/x^2"));
}

TEST_CASE("mu_xx agrees with the total derivative of mu_x") {
  for (auto v : {vf("xi", "tau", "eta"), vf("x*t", "t", "u*x"), vf("k2*x", "0", "2")}) {
    auto pf = prolong2(v);
    Expr d = pf.mu_xx - total_diff_x(pf.mu_x) + sym::u_xx() * total_diff_x(v.xi) + sym::u_xt() * total_diff_x(v.tau);
    CHECK(is_zero(d));
  }
}

TEST_CASE("bracket") {
  auto x1 = vf("0", "1", "0");
  auto x2 = vf("x", "2*t", "-2");
  auto b = bracket(x1, x2);
  CHECK(b.xi.is_zero());
  CHECK(b.tau == Expr(2));
  CHECK(b.eta.is_zero());
}
