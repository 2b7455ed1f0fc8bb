#include "liesym/determining.hpp"

#include "liesym/error.hpp"

namespace liesym {

namespace {

bool allowed_in_coefficient(const Expr& s) {
  switch (s.kind()) {
    case Kind::Const: return true;
    case Kind::Jet: return s.jet() == Jet::U;
    case Kind::Func: return (s.func().signature & ~arg::u) == 0;
    default: return false;
  }
}

void check_coefficient(const Expr& e, const char* which) {
  for (const auto& s : free_symbols(e))
    if (!allowed_in_coefficient(s))
      throw Error(ErrorCode::InvalidCoefficient, std::string(which) + " must depend on u only, found " + print(s));
}

const std::vector<std::pair<std::string, Expr>>& monomial_list() {
  static const std::vector<std::pair<std::string, Expr>> m = {
      {"u_xt", sym::u_xt()},
      {"u_x*u_xt", sym::u_x() * sym::u_xt()},
      {"u_x*u_xx", sym::u_x() * sym::u_xx()},
      {"u_xx", sym::u_xx()},
      {"u_x^2", pow(sym::u_x(), 2)},
      {"u_x", sym::u_x()},
      {"1", Expr(1)},
  };
  return m;
}

}  // namespace

PDESpec make_pde(const Expr& f, const Expr& g) {
  PDESpec p{normalize(f), normalize(g), Expr()};
  check_coefficient(p.f, "f");
  check_coefficient(p.g, "g");
  if (p.g.is_zero()) throw Error(ErrorCode::InvalidCoefficient, "g is identically zero");
  const Expr x = sym::x();
  p.residual = sym::u_t() - p.f - total_diff_x(x * p.g * sym::u_x()) / x;
  return p;
}

Expr solved_rhs(const PDESpec& pde) { return sym::u_t() - pde.residual; }

Expr symmetry_condition(const VectorField& vf, const PDESpec& pde) {
  const Expr c = apply_prolonged(prolong2(vf), pde.residual);
  return substitute(c, sym::u_t(), solved_rhs(pde));
}

Expr symmetry_condition_presubstituted(const VectorField& vf, const PDESpec& pde) {
  ProlongedField pf = prolong2(vf);
  const Expr rhs = solved_rhs(pde);
  pf.mu_x = substitute(pf.mu_x, sym::u_t(), rhs);
  pf.mu_t = substitute(pf.mu_t, sym::u_t(), rhs);
  pf.mu_xx = substitute(pf.mu_xx, sym::u_t(), rhs);
  return substitute(apply_prolonged(pf, pde.residual), sym::u_t(), rhs);
}

bool is_symmetry(const VectorField& vf, const PDESpec& pde) { return is_zero(symmetry_condition(vf, pde)); }

Expr impose_tau_t_xi_xt(const Expr& e) {
  return map_funcs(e, [](const Expr& s) -> Expr {
    const auto& f = s.func();
    if (f.name == Fn::Tau && (f.d.x > 0 || f.d.u > 0)) return Expr();
    if (f.name == Fn::Xi && f.d.u > 0) return Expr();
    return s;
  });
}

DeterminingSystem determining_system() {
  return determining_system(make_pde(Expr::func(Fn::F), Expr::func(Fn::G)));
}

DeterminingSystem determining_system(const PDESpec& pde) {
  const VectorField v{Expr::func(Fn::Xi), Expr::func(Fn::Tau), Expr::func(Fn::Eta)};
  const Expr x2 = pow(sym::x(), 2);
  const Expr full = x2 * symmetry_condition(v, pde);

  DeterminingSystem out;
  out.first_pass = jet_monomials(full);
  const auto& monos = monomial_list();

  std::vector<Expr> first_keys;
  for (std::size_t i = 0; i < 3; ++i) first_keys.push_back(monos[i].second);
  const Collected first = collect(full, first_keys);

  std::vector<Expr> keys;
  for (const auto& [label, m] : monos) keys.push_back(m);
  const Collected second = collect(impose_tau_t_xi_xt(full), keys);

  for (std::size_t i = 0; i < monos.size(); ++i) {
    const Expr eq = i < 3 ? first.coefficients[i].second : second.coefficients[i].second;
    out.equations.push_back({monos[i].first, monos[i].second, eq});
  }
  out.remainder = second.remainder;
  if (!out.remainder.is_zero())
    throw Error(ErrorCode::NonzeroRemainder, "uncollected terms: " + print(out.remainder));
  return out;
}

std::optional<Expr> x_monomial_ratio(const Expr& a, const Expr& b) {
  const Expr na = normalize(a);
  const Expr nb = normalize(b);
  if (na.is_zero() || nb.is_zero()) return na.is_zero() && nb.is_zero() ? std::optional<Expr>(Expr(1)) : std::nullopt;
  static const Rational coeffs[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 2)};
  for (int k = -4; k <= 4; ++k) {
    for (const auto& c : coeffs) {
      const Expr m = Expr(c) * pow(sym::x(), k);
      if (normalize(na - m * nb).is_zero()) return m;
    }
  }
  return std::nullopt;
}

}  // namespace liesym
