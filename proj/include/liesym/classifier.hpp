#pragma once

// Exponential-diffusion classification: g = k1 exp(k2 u) and the three
// source families that admit symmetries beyond time translation.

#include <string>
#include <vector>

#include "liesym/determining.hpp"

namespace liesym {

enum class CaseTag { A, B, C };

const char* to_string(CaseTag tag);

/// Parameters may be symbolic constants or exact rationals.
struct CaseParams {
  Expr k1 = sym::k(1);
  Expr k2 = sym::k(2);
  Expr k3 = sym::k(3);
  Expr k4 = sym::k(4);
  Expr k5 = sym::k(5);
};

struct Generator {
  std::string name;
  VectorField field;
};

struct TheoremCase {
  CaseTag tag;
  CaseParams params;
  Expr f;
  Expr g;
  std::vector<Generator> generators;
};

/// A: f = k3 exp(k4 u)          k1,k2,k3,k4 != 0
/// B: f = k3 exp(k2 u) + k5     k1,k2,k3,k5 != 0
/// C: f = k5                    k1,k2,k5 != 0
/// Throws ParameterConstraintViolated if a required parameter is the rational 0.
TheoremCase build_case(CaseTag tag, const CaseParams& params = {});

PDESpec pde_of(const TheoremCase& c);

/// eta = (2 xi_x - tau_t) g / g_u. Throws DegenerateDiffusion if g_u == 0.
Expr eta_from_constraint(const Expr& xi, const Expr& tau, const Expr& g);

enum class DiffusionClass { PowerLaw, Exponential, NoExtraSymmetry };

const char* to_string(DiffusionClass c);

/// Classifies g by r = g/g_u: r_uu != 0 gives NoExtraSymmetry, constant r
/// gives Exponential, linear r gives PowerLaw.
DiffusionClass diffusion_class(const Expr& g);

struct Control {
  std::string name;
  VectorField field;
  PDESpec pde;
  bool expected;
};

/// Pairs of generator and equation with the expected verdict. Only time
/// translation is expected to pass.
std::vector<Control> negative_controls();

}  // namespace liesym
