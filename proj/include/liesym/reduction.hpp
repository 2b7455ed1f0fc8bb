#pragma once

// Similarity reductions for the three exponential-diffusion families.
// The reduced unknown is h(z); h, h_z, h_zz are treated as coordinates and
// chain-ruled through the similarity variable z(x, t).

#include <optional>
#include <string>
#include <vector>

#include "liesym/classifier.hpp"

namespace liesym {

enum class ReductionCase { A, B, CLog, CScale };

const char* to_string(ReductionCase c);

struct SimilaritySolution {
  ReductionCase tag = ReductionCase::A;
  CaseParams params;
  PDESpec pde;
  Expr z;            // similarity variable in x, t
  Expr ansatz;       // u in terms of x, t and h
  Expr reduced_ode;  // in z, h, h_z, h_zz
  VectorField generator;
  std::optional<Expr> closed_form;  // h(z) when expressible in the grammar
  std::string closed_form_text;     // also covers Bessel forms
  Expr multiplier;                  // pde residual = multiplier * reduced ode
  std::string verification;         // "symbolic" or "numeric"
  std::vector<std::string> notes;
};

namespace hsym {
Expr h();
Expr h_z();
Expr h_zz();
}  // namespace hsym

/// d/dx or d/dt of an expression in (x, t, h, h_z, h_zz), with h chained through z.
Expr chain_diff(const Expr& e, const Expr& z, const Expr& var);

/// The PDE residual with u and its derivatives replaced by the ansatz.
Expr substitute_ansatz(const PDESpec& pde, const Expr& ansatz, const Expr& z);

/// xi u_x + tau u_t - eta evaluated on u = ansatz, tested with is_zero.
bool invariant_surface_check(const VectorField& vf, const Expr& ansatz, const Expr& z);

/// Substitutes h(z) := closed into the ode.
Expr ode_on(const Expr& ode, const Expr& closed);

/// Reduced ODEs as stored in the solutions (parameters substituted).
Expr reduced_ode_a(const CaseParams& p);
Expr reduced_ode_b(const CaseParams& p);

/// Case a with X2. Symbolic verification requires k4/k2 to be a rational;
/// otherwise the factorization is checked at 30 seeded numeric points.
/// Throws VerificationFailed.
SimilaritySolution reduce_case_a(const CaseParams& p = {});
/// Case a, symbolic path only: NonRationalExponent unless k4/k2 is rational.
SimilaritySolution reduce_case_a_symbolic(const CaseParams& p);

/// Case b, z = x. If k2 k3 / k1 is a negative rational the Bessel closed
/// form is omitted and a NegativeBesselArgument note is attached.
SimilaritySolution reduce_case_b(const CaseParams& p = {});

enum class CBranch { Log, Scale };
SimilaritySolution reduce_case_c(const CaseParams& p = {}, CBranch branch = CBranch::Scale);

PDESpec pde_of_case(CaseTag tag, const CaseParams& p = {});

/// Max |k1 x p'' + k1 p' + k2 k3 x p| of the Bessel closed form over n points
/// in [x0, x1], with numeric parameters.
double bessel_closed_form_residual(double k1, double k2, double k3, double c1, double c2, double x0, double x1, int n);

}  // namespace liesym
