#include "liesym/reduction.hpp"

#include <cmath>
#include <random>

#include "liesym/error.hpp"
#include "liesym/numerics.hpp"

namespace liesym {

namespace hsym {
Expr h() { return Expr::func(Fn::H); }
Expr h_z() { return Expr::func(Fn::H, {0, 0, 0, 1}); }
Expr h_zz() { return Expr::func(Fn::H, {0, 0, 0, 2}); }
}  // namespace hsym

namespace {

using hsym::h;
using hsym::h_z;
using hsym::h_zz;

Expr leading_symbol(const Expr& ode) { return depends_on(ode, h_zz()) ? h_zz() : h_z(); }

/// Multiplier M with residual == M * ode on z = z(x, t).
Expr factor_multiplier(const Expr& residual, const Expr& ode_xt) {
  const Expr lead = leading_symbol(ode_xt);
  const Expr num = linear_coefficient(residual, lead);
  const Expr den = linear_coefficient(ode_xt, lead);
  if (den.is_zero()) throw Error(ErrorCode::VerificationFailed, "reduced ode has no leading term");
  return num / den;
}

void verify_symbolic(SimilaritySolution& s) {
  const Expr r = substitute_ansatz(s.pde, s.ansatz, s.z);
  const Expr o = substitute(s.reduced_ode, sym::z(), s.z);
  s.multiplier = factor_multiplier(r, o);
  if (s.multiplier.is_zero() || !is_zero(r - s.multiplier * o))
    throw Error(ErrorCode::VerificationFailed, std::string("ansatz does not reduce to the ode in case ") + to_string(s.tag));
  s.verification = "symbolic";
}

void verify_numeric(SimilaritySolution& s) {
  const Expr r = substitute_ansatz(s.pde, s.ansatz, s.z);
  const Expr o = substitute(s.reduced_ode, sym::z(), s.z);
  s.multiplier = factor_multiplier(r, o);
  const Expr d = r - s.multiplier * o;
  std::mt19937_64 rng(probe_seed());
  std::uniform_real_distribution<double> pos(0.5, 3.0);
  std::uniform_real_distribution<double> any(-3.0, 3.0);
  std::uniform_real_distribution<double> mag(1.0 / 3.0, 3.0);
  std::bernoulli_distribution flip(0.5);
  for (int i = 0; i < 30; ++i) {
    Bindings b{{"x", pos(rng)}, {"t", pos(rng)}, {"h", pos(rng)}, {"h_z", any(rng)}, {"h_zz", any(rng)}};
    for (const char* k : {"k1", "k3"}) b[k] = mag(rng) * (flip(rng) ? -1.0 : 1.0);
    for (const char* k : {"k2", "k4", "k5"}) b[k] = mag(rng);
    const double dv = eval_numeric(d, b);
    const double scale = std::fabs(eval_numeric(r, b)) + std::fabs(eval_numeric(s.multiplier * o, b));
    if (!(std::fabs(dv) <= 1e-9 * std::max(scale, 1e-300)))
      throw Error(ErrorCode::VerificationFailed, "numeric factorization check failed in case a");
  }
  s.verification = "numeric";
}

void check_generator(const SimilaritySolution& s) {
  const Expr zx = s.generator.xi * partial_diff(s.z, sym::x()) + s.generator.tau * partial_diff(s.z, sym::t());
  if (!is_zero(zx)) throw Error(ErrorCode::VerificationFailed, "generator does not annihilate z");
  if (!invariant_surface_check(s.generator, s.ansatz, s.z))
    throw Error(ErrorCode::VerificationFailed, "ansatz is not an invariant surface of the generator");
}

}  // namespace

const char* to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::A: return "a";
    case ReductionCase::B: return "b";
    case ReductionCase::CLog: return "c-log";
    case ReductionCase::CScale: return "c-scale";
  }
  return "?";
}

Expr chain_diff(const Expr& e, const Expr& z, const Expr& var) {
  const Expr dz = partial_diff(z, var);
  return partial_diff(e, var) +
         dz * (partial_diff(e, h()) * h_z() + partial_diff(e, h_z()) * h_zz() +
               (depends_on(e, h_zz()) ? partial_diff(e, h_zz()) * Expr::func(Fn::H, {0, 0, 0, 3}) : Expr()));
}

Expr substitute_ansatz(const PDESpec& pde, const Expr& ansatz, const Expr& z) {
  const Expr ux = chain_diff(ansatz, z, sym::x());
  const Expr ut = chain_diff(ansatz, z, sym::t());
  const Expr uxx = chain_diff(ux, z, sym::x());
  return substitute(pde.residual, {{sym::u(), ansatz}, {sym::u_x(), ux}, {sym::u_t(), ut}, {sym::u_xx(), uxx}});
}

bool invariant_surface_check(const VectorField& vf, const Expr& ansatz, const Expr& z) {
  const Expr c = vf.xi * chain_diff(ansatz, z, sym::x()) + vf.tau * chain_diff(ansatz, z, sym::t()) - vf.eta;
  return is_zero(substitute(c, sym::u(), ansatz));
}

Expr ode_on(const Expr& ode, const Expr& closed) {
  const Expr d1 = partial_diff(closed, sym::z());
  const Expr d2 = partial_diff(d1, sym::z());
  return substitute(ode, {{h(), closed}, {h_z(), d1}, {h_zz(), d2}});
}

Expr reduced_ode_a(const CaseParams& p) {
  const Expr z = sym::z();
  return 4 * p.k1 * p.k4 * z * h_zz() + (4 * p.k1 * p.k4 + (p.k4 - p.k2) * z / h()) * h_z() +
         p.k2 * p.k3 * p.k4 * pow(h(), p.k4 / p.k2) + p.k2;
}

Expr reduced_ode_b(const CaseParams& p) {
  const Expr z = sym::z();
  return p.k1 * z * h_zz() + p.k1 * h_z() + p.k2 * p.k3 * z * h();
}

PDESpec pde_of_case(CaseTag tag, const CaseParams& p) { return pde_of(build_case(tag, p)); }

namespace {

SimilaritySolution base_case_a(const CaseParams& p) {
  SimilaritySolution s;
  s.tag = ReductionCase::A;
  s.params = p;
  auto c = build_case(CaseTag::A, p);
  s.pde = pde_of(c);
  s.generator = c.generators[1].field;
  s.z = pow(sym::x(), 2) * pow(sym::t(), p.k2 / p.k4 - 1);
  s.ansatz = ln(pow(h(), 1 / p.k2) / pow(sym::t(), 1 / p.k4));
  s.reduced_ode = reduced_ode_a(p);
  return s;
}

}  // namespace

SimilaritySolution reduce_case_a_symbolic(const CaseParams& p) {
  SimilaritySolution s = base_case_a(p);
  if (!normalize(p.k4 / p.k2).is_rational())
    throw Error(ErrorCode::NonRationalExponent, "k4/k2 = " + print(p.k4 / p.k2) + " is not a rational");
  check_generator(s);
  verify_symbolic(s);
  return s;
}

SimilaritySolution reduce_case_a(const CaseParams& p) {
  try {
    return reduce_case_a_symbolic(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonRationalExponent) throw;
  }
  SimilaritySolution s = base_case_a(p);
  check_generator(s);
  verify_numeric(s);
  return s;
}

SimilaritySolution reduce_case_b(const CaseParams& p) {
  SimilaritySolution s;
  s.tag = ReductionCase::B;
  s.params = p;
  auto c = build_case(CaseTag::B, p);
  s.pde = pde_of(c);
  s.generator = c.generators[1].field;
  s.z = sym::x();
  s.ansatz = p.k5 * sym::t() + ln(h()) / p.k2;
  s.reduced_ode = reduced_ode_b(p);
  check_generator(s);
  verify_symbolic(s);
  const Expr a2 = normalize(p.k2 * p.k3 / p.k1);
  if (a2.is_rational() && a2.value().is_negative()) {
    s.notes.push_back(std::string(to_string(ErrorCode::NegativeBesselArgument)) + ": k2*k3/k1 = " + print(a2) +
                      " < 0, no real Bessel closed form");
  } else {
    const std::string a = "(" + print(a2) + ")^(1/2)*z";
    s.closed_form_text = "c1*J0(" + a + ") + c2*Y0(" + a + ")";
  }
  return s;
}

SimilaritySolution reduce_case_c(const CaseParams& p, CBranch branch) {
  SimilaritySolution s;
  s.params = p;
  auto c = build_case(CaseTag::C, p);
  s.pde = pde_of(c);
  const Expr z = sym::z();
  if (branch == CBranch::Log) {
    s.tag = ReductionCase::CLog;
    s.generator = c.generators[1].field;
    s.z = sym::x();
    s.ansatz = p.k5 * sym::t() + ln(h()) / p.k2;
    s.reduced_ode = p.k1 * z * h_zz() + p.k1 * h_z();
    s.closed_form = sym::c(1) + sym::c(2) * ln(z);
    s.notes.push_back("u = k5*t + ln(c1 + c2*ln(x))/k2; the 1/k2 factor is required unless k2 = 1");
  } else {
    s.tag = ReductionCase::CScale;
    s.generator = c.generators[2].field;
    s.z = sym::t();
    s.ansatz = ln(pow(sym::x(), 2) / h()) / p.k2;
    s.reduced_ode = h_z() + p.k2 * p.k5 * h() + 4 * p.k1;
    s.closed_form = -4 * p.k1 / (p.k2 * p.k5) + sym::c(1) * exp(-p.k2 * p.k5 * z);
  }
  s.closed_form_text = print(*s.closed_form);
  check_generator(s);
  verify_symbolic(s);
  if (!is_zero(ode_on(s.reduced_ode, *s.closed_form)))
    throw Error(ErrorCode::VerificationFailed, "closed form does not solve the reduced ode");
  return s;
}

double bessel_closed_form_residual(double k1, double k2, double k3, double c1, double c2, double x0, double x1, int n) {
  const double a2 = k2 * k3 / k1;
  if (a2 < 0) throw Error(ErrorCode::NegativeBesselArgument, "k2*k3/k1 < 0");
  const double a = std::sqrt(a2);
  double worst = 0.0;
  for (double x : linspace(x0, x1, n)) {
    const Jet2 p = bessel_linear_form(x, a, c1, c2);
    worst = std::max(worst, std::fabs(k1 * x * p.d2 + k1 * p.d1 + k2 * k3 * x * p.v));
  }
  return worst;
}

}  // namespace liesym
