#pragma once

// Bessel functions of order 0 and 1, an adaptive (5,4) Runge-Kutta driver
// with cubic Hermite dense output, and the numeric side of the case-a
// reduction (reduced ODE trajectories and u(x,t) surfaces).

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace liesym {

// ---- Bessel -----------------------------------------------------------------
//
// x <= 8       ascending series (logarithmic form for Y)
// 8 < x <= 25  Miller backward recurrence, Neumann series for Y0, Y1
// x > 25       Hankel asymptotic expansion

double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);  // DomainError for x <= 0
double bessel_y1(double x);

namespace bessel_detail {
void series(double x, double& j0, double& j1, double& y0, double& y1);
void miller(double x, double& j0, double& j1, double& y0, double& y1);
void hankel(double x, double& j0, double& j1, double& y0, double& y1);
}  // namespace bessel_detail

// ---- ODE integration ----------------------------------------------------------

using State = std::vector<double>;
using Rhs = std::function<void(double s, const State& y, State& dy)>;

struct Trajectory {
  std::vector<double> s;   // strictly increasing
  std::vector<State> y;
  std::vector<State> dy;   // rhs at each sample, for Hermite interpolation
  int accepted = 0;
  int rejected = 0;
  double tol = 0.0;

  double front() const { return s.front(); }
  double back() const { return s.back(); }
  bool covers(double at) const { return !s.empty() && at >= s.front() && at <= s.back(); }
  /// Cubic Hermite interpolant. Throws CoverageGap outside [front, back].
  State operator()(double at) const;
  /// Derivative of the interpolant.
  State derivative(double at) const;

 private:
  std::size_t segment(double at) const;
};

/// Adaptive Dormand-Prince (5,4) from s0 to s1 (s1 < s0 integrates backward).
/// Local error per step <= tol * (|y| + 1) componentwise. Steps are also
/// rejected when the Hermite interpolant's derivative misses the rhs by more
/// than 10 * tol * (|f| + 1) at the quarter points of the step.
/// Throws StepSizeUnderflow, NonFiniteState. tol must lie in [1e-12, 1e-3].
Trajectory integrate(const Rhs& rhs, const State& y0, double s0, double s1, double tol);

/// Joins a backward and a forward trajectory that share their first sample.
Trajectory stitch(const Trajectory& backward, const Trajectory& forward);

// ---- case a, reduced ODE with k1 = k3 = 1, k4 = 2 k2 ----------------------------
//
//   8 z h'' + (8 + z/h) h' + 2 k2 h^2 + 1 = 0

double example2_hzz(double k2, double z, double h, double hz);

/// Integrates from z = 1 with h(1) = h1, h'(1) = dh1 backward to z0 and
/// forward to z1. Throws SingularityApproached when |h| < 1e-6 or the step
/// size underflows; the message names the z reached.
Trajectory solve_example2(double k2, double h1, double dh1, double z0, double z1, double tol = 1e-10);

struct SurfaceGrid {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> u;  // row-major, u[i * t.size() + j] = u(x_i, t_j)
  double k1 = 1, k2 = 0, k3 = 1, k4 = 0;
  double h1 = 0, dh1 = 0;

  double at(std::size_t i, std::size_t j) const { return u[i * t.size() + j]; }
};

/// u(x, t) = (1/k2) ln h(z) - (1/k4) ln t with z = x^2 t^(k2/k4 - 1).
/// Throws CoverageGap if a node's z is outside the trajectory, NonPositiveH.
SurfaceGrid surface_case_a(double k2, double k4, const Trajectory& traj, std::array<double, 2> xr,
                           std::array<double, 2> tr, int nx, int nt);
SurfaceGrid surface_case_a_serial(double k2, double k4, const Trajectory& traj, std::array<double, 2> xr,
                                  std::array<double, 2> tr, int nx, int nt);

/// The same surface as a continuous function through the dense output.
std::function<double(double, double)> surface_function(double k2, double k4, const Trajectory& traj);

// ---- closed forms --------------------------------------------------------------

struct Jet2 {
  double v = 0, d1 = 0, d2 = 0;
};

/// h(z) = c1 J0(a sqrt z) + c2 Y0(a sqrt z) - 1/(k k3), a = sqrt(k k3 / k1),
/// which solves 4 k1 z h'' + 4 k1 h' + k k3 h + 1 = 0.
Jet2 bessel_sqrt_form(double z, double k, double k1, double k3, double c1, double c2);

/// p(x) = c1 J0(a x) + c2 Y0(a x), which solves x p'' + p' + a^2 x p = 0.
Jet2 bessel_linear_form(double x, double a, double c1, double c2);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);

}  // namespace liesym
