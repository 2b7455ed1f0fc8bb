#include "liesym/pde_check.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "liesym/error.hpp"
#include "liesym/numerics.hpp"

namespace liesym {

namespace {

inline double node_residual(const double* U, std::size_t i, std::size_t j, std::size_t nt, const std::vector<double>& xs,
                            double dt, const Model& m) {
  const double dx = xs[1] - xs[0];
  const double uc = U[i * nt + j];
  const double ul = U[(i - 1) * nt + j];
  const double ur = U[(i + 1) * nt + j];
  const double ut = (U[i * nt + j + 1] - U[i * nt + j - 1]) / (2 * dt);
  const double fr = 0.5 * (xs[i] + xs[i + 1]) * m.g(0.5 * (uc + ur)) * (ur - uc) / dx;
  const double fl = 0.5 * (xs[i - 1] + xs[i]) * m.g(0.5 * (ul + uc)) * (uc - ul) / dx;
  return ut - m.f(uc) - (fr - fl) / (xs[i] * dx);
}

inline double node_update(const std::vector<double>& u, std::size_t i, const std::vector<double>& xs, double dt,
                          const Model& m) {
  const double dx = xs[1] - xs[0];
  const double fr = 0.5 * (xs[i] + xs[i + 1]) * m.g(0.5 * (u[i] + u[i + 1])) * (u[i + 1] - u[i]) / dx;
  const double fl = 0.5 * (xs[i - 1] + xs[i]) * m.g(0.5 * (u[i - 1] + u[i])) * (u[i] - u[i - 1]) / dx;
  return u[i] + dt * (m.f(u[i]) + (fr - fl) / (xs[i] * dx));
}

void check_uniform(const std::vector<double>& v, const char* what) {
  if (v.size() < 3) throw Error(ErrorCode::DomainError, std::string(what) + " grid needs at least 3 nodes");
}

}  // namespace

Model numeric_model(const PDESpec& pde, const Bindings& constants) {
  auto make = [constants](const Expr& e) {
    return [e, constants](double u) {
      Bindings b = constants;
      b["u"] = u;
      return eval_numeric(e, b);
    };
  };
  return {make(pde.f), make(pde.g)};
}

namespace kernels {

void residual_serial(const std::vector<double>& U, const std::vector<double>& xs, double dt, std::size_t nt,
                     const Model& m, std::vector<double>& r) {
  const std::size_t nx = xs.size();
  r.assign((nx - 2) * (nt - 2), 0.0);
  for (std::size_t i = 1; i + 1 < nx; ++i)
    for (std::size_t j = 1; j + 1 < nt; ++j) r[(i - 1) * (nt - 2) + (j - 1)] = node_residual(U.data(), i, j, nt, xs, dt, m);
}

void residual_parallel(const std::vector<double>& U, const std::vector<double>& xs, double dt, std::size_t nt,
                       const Model& m, std::vector<double>& r) {
  const long nx = static_cast<long>(xs.size());
  r.assign(static_cast<std::size_t>(nx - 2) * (nt - 2), 0.0);
#pragma omp parallel for schedule(static)
  for (long i = 1; i < nx - 1; ++i)
    for (std::size_t j = 1; j + 1 < nt; ++j)
      r[(i - 1) * (nt - 2) + (j - 1)] = node_residual(U.data(), static_cast<std::size_t>(i), j, nt, xs, dt, m);
}

void diffusion_step_serial(const std::vector<double>& u, const std::vector<double>& xs, double dt, const Model& m,
                           std::vector<double>& out) {
  out.resize(u.size());
  for (std::size_t i = 1; i + 1 < u.size(); ++i) out[i] = node_update(u, i, xs, dt, m);
}

void diffusion_step_parallel(const std::vector<double>& u, const std::vector<double>& xs, double dt, const Model& m,
                             std::vector<double>& out) {
  out.resize(u.size());
  const long n = static_cast<long>(u.size());
#pragma omp parallel for schedule(static)
  for (long i = 1; i < n - 1; ++i) out[i] = node_update(u, static_cast<std::size_t>(i), xs, dt, m);
}

}  // namespace kernels

Rung fd_residual(const std::function<double(double, double)>& u, const Model& m, const std::vector<double>& xs,
                 const std::vector<double>& ts) {
  check_uniform(xs, "x");
  check_uniform(ts, "t");
  if (!(xs.front() > 0.0)) throw Error(ErrorCode::DomainError, "x grid must stay away from the origin");
  const std::size_t nx = xs.size();
  const std::size_t nt = ts.size();
  std::vector<double> U(nx * nt);
  std::exception_ptr failure;
  const long n = static_cast<long>(nx * nt);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    try {
      U[k] = u(xs[k / nt], ts[k % nt]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (!std::all_of(U.begin(), U.end(), [](double v) { return std::isfinite(v); }))
    throw Error(ErrorCode::NonFiniteSample, "candidate solution is not finite on the grid");

  Rung out;
  out.dx = xs[1] - xs[0];
  out.dt = ts[1] - ts[0];
  std::vector<double> r;
  kernels::residual_parallel(U, xs, out.dt, nt, m, r);
  double sq = 0.0;
  for (double v : r) {
    out.max_norm = std::max(out.max_norm, std::fabs(v));
    sq += v * v;
  }
  out.l2_norm = std::sqrt(sq * out.dx * out.dt);
  if (!std::isfinite(out.max_norm)) throw Error(ErrorCode::NonFiniteSample, "residual is not finite");
  return out;
}

ResidualReport residual_ladder(const std::function<double(double, double)>& u, const Model& m,
                               std::array<double, 2> xr, std::array<double, 2> tr, int n0, int rungs) {
  ResidualReport rep;
  for (int r = 0; r < rungs; ++r) {
    const int n = (n0 - 1) * (1 << r) + 1;
    rep.rungs.push_back(fd_residual(u, m, linspace(xr[0], xr[1], n), linspace(tr[0], tr[1], n)));
  }
  if (rep.rungs.size() >= 3) {
    const auto& a = rep.rungs[rep.rungs.size() - 2];
    const auto& b = rep.rungs.back();
    rep.slope = std::log2(a.max_norm / b.max_norm);
  }
  return rep;
}

std::vector<std::vector<double>> evolve(const std::vector<double>& xs, const std::vector<double>& u0, const Model& m,
                                        double t0, double dt, int steps,
                                        const std::function<double(double, double)>& boundary) {
  check_uniform(xs, "x");
  if (u0.size() != xs.size()) throw Error(ErrorCode::DomainError, "profile and grid sizes differ");
  const double dx = xs[1] - xs[0];
  std::vector<std::vector<double>> out{u0};
  out.reserve(static_cast<std::size_t>(steps) + 1);
  std::vector<double> next;
  for (int n = 0; n < steps; ++n) {
    const auto& cur = out.back();
    double gmax = 0.0;
    for (double v : cur) gmax = std::max(gmax, std::fabs(m.g(v)));
    if (dt > 0.4 * dx * dx / gmax)
      throw Error(ErrorCode::StabilityViolation, "dt exceeds 0.4*dx^2/max(g) at step " + std::to_string(n));
    kernels::diffusion_step_parallel(cur, xs, dt, m, next);
    const double t = t0 + (n + 1) * dt;
    next.front() = boundary(xs.front(), t);
    next.back() = boundary(xs.back(), t);
    if (!std::all_of(next.begin(), next.end(), [](double v) { return std::isfinite(v); }))
      throw Error(ErrorCode::NonFiniteState, "non-finite value at step " + std::to_string(n + 1));
    out.push_back(next);
  }
  return out;
}

Solution group_action_a(const Solution& s, double eps, double k2, double k4) {
  const double ax = std::exp((k2 - k4) * eps);
  const double at = std::exp(-2.0 * k4 * eps);
  Solution g;
  g.x = {s.x[0] / ax, s.x[1] / ax};
  g.t = {s.t[0] / at, s.t[1] / at};
  auto inner = s;
  g.u = [inner, ax, at, eps](double x, double t) {
    const double xx = x * ax;
    const double tt = t * at;
    if (xx < inner.x[0] || xx > inner.x[1] || tt < inner.t[0] || tt > inner.t[1])
      throw Error(ErrorCode::DomainEscape, "transformed point leaves the solution's domain");
    return inner.u(xx, tt) - 2.0 * eps;
  };
  return g;
}

}  // namespace liesym
