#pragma once

// Finite-difference validation against u_t = f(u) + (1/x)(x g(u) u_x)_x on
// annular grids (x > 0): residual ladders, an explicit evolution check and
// the case-a group action.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "liesym/determining.hpp"

namespace liesym {

struct Model {
  std::function<double(double)> f;
  std::function<double(double)> g;
};

/// Numeric f, g from a PDESpec with constants bound.
Model numeric_model(const PDESpec& pde, const Bindings& constants);

/// A candidate solution and the box on which it may be sampled.
struct Solution {
  std::function<double(double, double)> u;
  std::array<double, 2> x;
  std::array<double, 2> t;
};

struct Rung {
  double dx = 0, dt = 0;
  double max_norm = 0, l2_norm = 0;
};

struct ResidualReport {
  std::vector<Rung> rungs;
  std::optional<double> slope;  // log2(max[n-2] / max[n-1]), only with >= 3 rungs
};

/// Residual at interior nodes of a uniform grid (central difference in t,
/// conservative flux form in x). Throws NonFiniteSample.
Rung fd_residual(const std::function<double(double, double)>& u, const Model& m, const std::vector<double>& xs,
                 const std::vector<double>& ts);

/// Spacing ladder: rung r uses (n0 - 1) 2^r + 1 nodes per axis.
ResidualReport residual_ladder(const std::function<double(double, double)>& u, const Model& m,
                               std::array<double, 2> xr, std::array<double, 2> tr, int n0, int rungs);

/// Forward Euler with Dirichlet data from boundary(x, t). Returns every time
/// slice, slice 0 being u0. Throws StabilityViolation if dt exceeds
/// 0.4 dx^2 / max g at any step, NonFiniteState.
std::vector<std::vector<double>> evolve(const std::vector<double>& xs, const std::vector<double>& u0, const Model& m,
                                        double t0, double dt, int steps,
                                        const std::function<double(double, double)>& boundary);

/// (x, t) -> u(e^{(k2-k4) eps} x, e^{-2 k4 eps} t) - 2 eps. The returned box
/// is the preimage of the original one; sampling outside throws DomainEscape.
Solution group_action_a(const Solution& s, double eps, double k2, double k4);

namespace kernels {

/// Interior residual r[(i-1)(nt-2) + (j-1)] from sampled values U (row-major, nx x nt).
void residual_serial(const std::vector<double>& U, const std::vector<double>& xs, double dt, std::size_t nt,
                     const Model& m, std::vector<double>& r);
void residual_parallel(const std::vector<double>& U, const std::vector<double>& xs, double dt, std::size_t nt,
                       const Model& m, std::vector<double>& r);

/// One explicit step on interior nodes; boundary entries of out are left untouched.
void diffusion_step_serial(const std::vector<double>& u, const std::vector<double>& xs, double dt, const Model& m,
                           std::vector<double>& out);
void diffusion_step_parallel(const std::vector<double>& u, const std::vector<double>& xs, double dt, const Model& m,
                             std::vector<double>& out);

}  // namespace kernels

}  // namespace liesym
