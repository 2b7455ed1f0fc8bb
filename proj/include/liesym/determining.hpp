#pragma once

// Symmetry condition and determining system for
//   u_t = f(u) + (1/x) (x g(u) u_x)_x .

#include <optional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/prolongation.hpp"

namespace liesym {

struct PDESpec {
  Expr f;
  Expr g;
  Expr residual;  // u_t - f - g_u u_x^2 - g u_xx - g u_x / x
};

/// f, g may only involve u, named constants and f/g-type symbols of u.
/// Throws InvalidCoefficient otherwise, or when g is identically 0.
PDESpec make_pde(const Expr& f, const Expr& g);

/// Right-hand side of the solved form u_t = rhs.
Expr solved_rhs(const PDESpec& pde);

/// X^(2)(residual) restricted to the solution manifold (u_t replaced by rhs).
Expr symmetry_condition(const VectorField& vf, const PDESpec& pde);

/// Same condition, but u_t is eliminated from the prolongation coefficients
/// before X^(2) is applied. Must agree with symmetry_condition.
Expr symmetry_condition_presubstituted(const VectorField& vf, const PDESpec& pde);

bool is_symmetry(const VectorField& vf, const PDESpec& pde);

struct DeterminingEquation {
  std::string label;  // u_xt, u_x*u_xt, u_x*u_xx, u_xx, u_x^2, u_x, 1
  Expr monomial;
  Expr equation;  // coefficient of the monomial; free of derivative jets
};

struct DeterminingSystem {
  std::vector<DeterminingEquation> equations;
  /// Jet monomials found with fully general xi, tau (first pass).
  std::vector<std::pair<Expr, Expr>> first_pass;
  Expr remainder;
};

/// Symbolic determining system for unknown xi(t,x,u), tau(t,x,u), eta(t,x,u)
/// and f(u), g(u). The condition is multiplied by x^2 to clear denominators.
/// First pass: full dependence; the u_xt, u_x*u_xt, u_x*u_xx coefficients
/// give tau_x = tau_u = xi_u = 0. Second pass imposes these and collects the
/// remaining four monomials. Throws NonzeroRemainder if anything is left over.
DeterminingSystem determining_system();
DeterminingSystem determining_system(const PDESpec& pde);

/// Sets tau derivatives in x or u, and xi derivatives in u, to zero.
Expr impose_tau_t_xi_xt(const Expr& e);

/// If a == c * x^k * b for some small rational c != 0 and |k| <= 4, returns
/// c * x^k. Used to compare against reference equations.
std::optional<Expr> x_monomial_ratio(const Expr& a, const Expr& b);

}  // namespace liesym
