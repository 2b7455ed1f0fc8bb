#pragma once

// Second prolongation of a point-symmetry generator
//   X = xi d/dx + tau d/dt + eta d/du
// acting on functions of (x, t, u, u_x, u_t, u_xx).

#include "liesym/expr.hpp"

namespace liesym {

struct VectorField {
  Expr xi;
  Expr tau;
  Expr eta;
};

/// Throws InvalidCoefficient if a component contains u_x, u_t or higher jets.
VectorField make_vector_field(const Expr& xi, const Expr& tau, const Expr& eta);

/// a*v + b*w componentwise.
VectorField combine(const Expr& a, const VectorField& v, const Expr& b, const VectorField& w);

struct ProlongedField {
  VectorField base;
  Expr mu_x;
  Expr mu_t;
  Expr mu_xx;
};

ProlongedField prolong2(const VectorField& vf);

/// X^(2) applied to target. No coefficient exists for u_xt or u_tt, so a
/// target depending on them throws UncoveredJetVariable.
Expr apply_prolonged(const ProlongedField& pf, const Expr& target);

/// X(e) = xi e_x + tau e_t + eta e_u (the unprolonged action).
Expr apply(const VectorField& vf, const Expr& e);

/// Lie bracket [v, w], componentwise v(w^i) - w(v^i).
VectorField bracket(const VectorField& v, const VectorField& w);

std::string print(const VectorField& vf);
/// Inverse of print: "xi=...; tau=...; eta=..." in any order, missing
/// components are 0. Throws MalformedExpression.
VectorField parse_vector_field(const std::string& text);

}  // namespace liesym
