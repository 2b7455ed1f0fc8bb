#include <cmath>
#include <exception>
#include <memory>

#include "liesym/error.hpp"
#include "liesym/numerics.hpp"

namespace liesym {

namespace {

double node_value(double k2, double k4, const Trajectory& traj, double x, double t) {
  const double z = x * x * std::pow(t, k2 / k4 - 1.0);
  if (!traj.covers(z)) throw Error(ErrorCode::CoverageGap, "grid node maps to z outside the trajectory");
  const double h = traj(z)[0];
  if (!(h > 0.0)) throw Error(ErrorCode::NonPositiveH, "h <= 0 on the trajectory");
  return std::log(h) / k2 - std::log(t) / k4;
}

SurfaceGrid empty_grid(double k2, double k4, const Trajectory& traj, std::array<double, 2> xr, std::array<double, 2> tr,
                       int nx, int nt) {
  if (nx < 1 || nt < 1 || !(xr[0] > 0.0) || !(tr[0] > 0.0) || xr[1] < xr[0] || tr[1] < tr[0])
    throw Error(ErrorCode::DomainError, "surface grid needs positive increasing ranges");
  SurfaceGrid g;
  g.x = linspace(xr[0], xr[1], nx);
  g.t = linspace(tr[0], tr[1], nt);
  g.u.assign(static_cast<std::size_t>(nx) * nt, 0.0);
  g.k2 = k2;
  g.k4 = k4;
  if (!traj.s.empty()) {
    // initial data sits at z = 1
    for (std::size_t i = 0; i < traj.s.size(); ++i) {
      if (traj.s[i] == 1.0) {
        g.h1 = traj.y[i][0];
        g.dh1 = traj.y[i][1];
      }
    }
  }
  return g;
}

}  // namespace

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v = linspace(std::log(a), std::log(b), n);
  for (auto& e : v) e = std::exp(e);
  return v;
}

SurfaceGrid surface_case_a_serial(double k2, double k4, const Trajectory& traj, std::array<double, 2> xr,
                                  std::array<double, 2> tr, int nx, int nt) {
  SurfaceGrid g = empty_grid(k2, k4, traj, xr, tr, nx, nt);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nt; ++j) g.u[static_cast<std::size_t>(i) * nt + j] = node_value(k2, k4, traj, g.x[i], g.t[j]);
  return g;
}

SurfaceGrid surface_case_a(double k2, double k4, const Trajectory& traj, std::array<double, 2> xr,
                           std::array<double, 2> tr, int nx, int nt) {
  SurfaceGrid g = empty_grid(k2, k4, traj, xr, tr, nx, nt);
  const long n = static_cast<long>(nx) * nt;
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < n; ++idx) {
    const long i = idx / nt;
    const long j = idx % nt;
    try {
      g.u[idx] = node_value(k2, k4, traj, g.x[i], g.t[j]);
    } catch (const Error&) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return g;
}

std::function<double(double, double)> surface_function(double k2, double k4, const Trajectory& traj) {
  auto shared = std::make_shared<const Trajectory>(traj);
  return [k2, k4, shared](double x, double t) { return node_value(k2, k4, *shared, x, t); };
}

}  // namespace liesym
