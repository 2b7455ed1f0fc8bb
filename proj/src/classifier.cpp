#include "liesym/classifier.hpp"

#include <random>

#include "liesym/error.hpp"

namespace liesym {

namespace {

void require_nonzero(const Expr& v, const char* name, CaseTag tag) {
  if (normalize(v).is_zero())
    throw Error(ErrorCode::ParameterConstraintViolated,
                std::string(name) + " must be nonzero in case " + to_string(tag));
}

VectorField time_translation() { return {Expr(), Expr(1), Expr()}; }

VectorField scaling_a(const CaseParams& p) {
  return {(p.k4 - p.k2) * sym::x(), 2 * p.k4 * sym::t(), Expr(-2)};
}

VectorField exp_time(const CaseParams& p) {
  const Expr e = exp(-p.k2 * p.k5 * sym::t());
  return {Expr(), e, p.k5 * e};
}

VectorField scaling_c(const CaseParams& p) { return {p.k2 * sym::x(), Expr(), Expr(2)}; }

Expr exp_diffusion(const CaseParams& p) { return p.k1 * exp(p.k2 * sym::u()); }

DiffusionClass classify_ratio(const Expr& r) {
  if (!is_zero(partial_diff(partial_diff(r, sym::u()), sym::u()))) return DiffusionClass::NoExtraSymmetry;
  return is_zero(partial_diff(r, sym::u())) ? DiffusionClass::Exponential : DiffusionClass::PowerLaw;
}

}  // namespace

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::A: return "a";
    case CaseTag::B: return "b";
    case CaseTag::C: return "c";
  }
  return "?";
}

const char* to_string(DiffusionClass c) {
  switch (c) {
    case DiffusionClass::PowerLaw: return "PowerLaw";
    case DiffusionClass::Exponential: return "Exponential";
    case DiffusionClass::NoExtraSymmetry: return "NoExtraSymmetry";
  }
  return "?";
}

TheoremCase build_case(CaseTag tag, const CaseParams& params) {
  TheoremCase c{tag, params, Expr(), exp_diffusion(params), {{"X1", time_translation()}}};
  const auto& p = params;
  require_nonzero(p.k1, "k1", tag);
  require_nonzero(p.k2, "k2", tag);
  switch (tag) {
    case CaseTag::A:
      require_nonzero(p.k3, "k3", tag);
      require_nonzero(p.k4, "k4", tag);
      c.f = p.k3 * exp(p.k4 * sym::u());
      c.generators.push_back({"X2", scaling_a(p)});
      break;
    case CaseTag::B:
      require_nonzero(p.k3, "k3", tag);
      require_nonzero(p.k5, "k5", tag);
      c.f = p.k3 * exp(p.k2 * sym::u()) + p.k5;
      c.generators.push_back({"X2", exp_time(p)});
      break;
    case CaseTag::C:
      require_nonzero(p.k5, "k5", tag);
      c.f = p.k5;
      c.generators.push_back({"X2", exp_time(p)});
      c.generators.push_back({"X3", scaling_c(p)});
      break;
  }
  return c;
}

PDESpec pde_of(const TheoremCase& c) { return make_pde(c.f, c.g); }

Expr eta_from_constraint(const Expr& xi, const Expr& tau, const Expr& g) {
  const Expr gu = partial_diff(g, sym::u());
  if (is_zero(gu)) throw Error(ErrorCode::DegenerateDiffusion, "g_u vanishes for g = " + print(g));
  return (2 * partial_diff(xi, sym::x()) - partial_diff(tau, sym::t())) * g / gu;
}

DiffusionClass diffusion_class(const Expr& g) {
  const Expr gu = partial_diff(g, sym::u());
  if (is_zero(gu)) throw Error(ErrorCode::DegenerateDiffusion, "g_u vanishes for g = " + print(g));
  const Expr r = g / gu;
  try {
    return classify_ratio(r);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ProbableZero || !depends_on(r, sym::k(3))) throw;
  }
  // Symbolic exponent k3: retry at random rational values; all must agree.
  std::mt19937_64 rng(probe_seed());
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::optional<DiffusionClass> verdict;
  for (int i = 0; i < 10;) {
    const int n = num(rng);
    if (n == 0) continue;
    ++i;
    const DiffusionClass c = classify_ratio(substitute(r, sym::k(3), sym::rat(n, den(rng))));
    if (verdict && *verdict != c)
      throw Error(ErrorCode::ProbableZero, "classification of " + print(g) + " depends on k3");
    verdict = c;
  }
  return *verdict;
}

std::vector<Control> negative_controls() {
  const CaseParams p;
  const PDESpec fisher = make_pde(sym::u() * (1 - sym::u()), exp_diffusion(p));
  const PDESpec case_a = pde_of(build_case(CaseTag::A));
  const PDESpec case_b = pde_of(build_case(CaseTag::B));
  VectorField wrong_ratio = scaling_a(p);
  wrong_ratio.tau = p.k4 * sym::t();
  return {
      {"time translation on Fisher source", time_translation(), fisher, true},
      {"case a X2 on Fisher source", scaling_a(p), fisher, false},
      {"case b X2 on Fisher source", exp_time(p), fisher, false},
      {"case c X3 on Fisher source", scaling_c(p), fisher, false},
      {"case a X2 with tau = k4*t", wrong_ratio, case_a, false},
      {"pure spatial scaling on case a", {sym::x(), Expr(), Expr()}, case_a, false},
      {"case c X3 on case b", scaling_c(p), case_b, false},
      {"case b X2 on case a", exp_time(p), case_a, false},
  };
}

}  // namespace liesym
