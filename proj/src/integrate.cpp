#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "liesym/error.hpp"
#include "liesym/numerics.hpp"

namespace liesym {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kDefectFactor = 10.0;

bool finite(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

std::string where(double s) {
  std::ostringstream o;
  o.precision(10);
  o << s;
  return o.str();
}

}  // namespace

std::size_t Trajectory::segment(double at) const {
  if (!covers(at)) throw Error(ErrorCode::CoverageGap, "s = " + where(at) + " outside [" + where(front()) + ", " + where(back()) + "]");
  if (s.size() < 2) throw Error(ErrorCode::CoverageGap, "trajectory has a single sample");
  auto it = std::upper_bound(s.begin(), s.end(), at);
  std::size_t i = it == s.end() ? s.size() - 2 : static_cast<std::size_t>(it - s.begin()) - 1;
  return std::min(i, s.size() - 2);
}

State Trajectory::derivative(double at) const {
  const std::size_t i = segment(at);
  const double h = s[i + 1] - s[i];
  const double th = (at - s[i]) / h;
  const double d00 = 6 * th * (th - 1) / h;
  const double d10 = (1 - th) * (1 - 3 * th);
  const double d01 = -d00;
  const double d11 = th * (3 * th - 2);
  State out(y[i].size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = d00 * y[i][k] + d10 * dy[i][k] + d01 * y[i + 1][k] + d11 * dy[i + 1][k];
  return out;
}

State Trajectory::operator()(double at) const {
  if (s.size() == 1 && at == s[0]) return y[0];
  const std::size_t i = segment(at);
  const double h = s[i + 1] - s[i];
  const double th = (at - s[i]) / h;
  const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
  const double h10 = th * (1 - th) * (1 - th);
  const double h01 = th * th * (3 - 2 * th);
  const double h11 = th * th * (th - 1);
  State out(y[i].size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = h00 * y[i][k] + h10 * h * dy[i][k] + h01 * y[i + 1][k] + h11 * h * dy[i + 1][k];
  return out;
}

Trajectory integrate(const Rhs& rhs, const State& y0, double s0, double s1, double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-3)) throw Error(ErrorCode::DomainError, "tol must lie in [1e-12, 1e-3]");
  if (!finite(y0)) throw Error(ErrorCode::NonFiniteState, "non-finite initial state");
  Trajectory tr;
  tr.tol = tol;
  auto system = [&rhs](const State& y, State& dy, double s) {
    dy.resize(y.size());
    rhs(s, y, dy);
  };
  auto record = [&](double s, const State& y) {
    State d(y.size());
    rhs(s, y, d);
    if (!finite(y) || !finite(d)) throw Error(ErrorCode::NonFiniteState, "non-finite state at s = " + where(s));
    tr.s.push_back(s);
    tr.y.push_back(y);
    tr.dy.push_back(std::move(d));
  };
  record(s0, y0);
  if (s1 == s0) return tr;

  const double dir = s1 > s0 ? 1.0 : -1.0;
  const double span = std::fabs(s1 - s0);
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
  State y = y0;
  double s = s0;
  double ds = dir * std::min(span, 1e-3 * std::max(1.0, span));
  while (dir * (s1 - s) > 0) {
    if (dir * (s + ds - s1) > 0) ds = s1 - s;
    const double floor = 1e-14 * std::max(1.0, std::fabs(s));
    if (std::fabs(ds) < floor) throw Error(ErrorCode::StepSizeUnderflow, "step size underflow at s = " + where(s));
    const State before = y;
    const double s_before = s;
    const double ds_used = ds;
    State dydx = tr.dy.back();
    if (stepper.try_step(system, y, dydx, s, ds) != odeint::success) {
      ++tr.rejected;
      continue;
    }
    // defect of the Hermite interpolant on the new segment
    Trajectory seg;
    seg.s = {std::min(s_before, s), std::max(s_before, s)};
    seg.y = {before, y};
    seg.dy = {tr.dy.back(), State(y.size())};
    rhs(s, y, seg.dy[1]);
    if (dir < 0) {
      std::swap(seg.y[0], seg.y[1]);
      std::swap(seg.dy[0], seg.dy[1]);
    }
    double ratio = 0.0;
    if (finite(seg.dy[1])) {
      State f(y.size());
      for (double th : {0.25, 0.5, 0.75}) {
        const double at = seg.s[0] + th * (seg.s[1] - seg.s[0]);
        const State p = seg(at);
        const State dp = seg.derivative(at);
        rhs(at, p, f);
        for (std::size_t k = 0; k < f.size(); ++k)
          ratio = std::max(ratio, std::fabs(dp[k] - f[k]) / (kDefectFactor * tol * (std::fabs(f[k]) + 1.0)));
      }
    } else {
      ratio = HUGE_VAL;
    }
    if (!(ratio <= 1.0)) {
      ++tr.rejected;
      y = before;
      s = s_before;
      ds = ds_used * (std::isfinite(ratio) ? std::clamp(0.9 * std::cbrt(1.0 / ratio), 0.2, 0.9) : 0.2);
      continue;
    }
    ++tr.accepted;
    record(s, y);
  }
  if (dir < 0) {
    std::reverse(tr.s.begin(), tr.s.end());
    std::reverse(tr.y.begin(), tr.y.end());
    std::reverse(tr.dy.begin(), tr.dy.end());
  }
  return tr;
}

Trajectory stitch(const Trajectory& backward, const Trajectory& forward) {
  Trajectory out = backward;
  for (std::size_t i = 1; i < forward.s.size(); ++i) {
    out.s.push_back(forward.s[i]);
    out.y.push_back(forward.y[i]);
    out.dy.push_back(forward.dy[i]);
  }
  out.accepted += forward.accepted;
  out.rejected += forward.rejected;
  out.tol = std::max(backward.tol, forward.tol);
  return out;
}

double example2_hzz(double k2, double z, double h, double hz) {
  return -((8.0 + z / h) * hz + 2.0 * k2 * h * h + 1.0) / (8.0 * z);
}

Trajectory solve_example2(double k2, double h1, double dh1, double z0, double z1, double tol) {
  if (!(z0 > 0.0) || !(z1 > z0)) throw Error(ErrorCode::DomainError, "need 0 < z0 < z1");
  if (h1 == 0.0) throw Error(ErrorCode::DomainError, "h(1) must be nonzero");
  Rhs rhs = [k2](double z, const State& y, State& dy) {
    if (std::fabs(y[0]) < 1e-6)
      throw Error(ErrorCode::SingularityApproached, "h -> 0 near z = " + where(z));
    dy[0] = y[1];
    dy[1] = example2_hzz(k2, z, y[0], y[1]);
  };
  auto run = [&](double to) {
    try {
      return integrate(rhs, {h1, dh1}, 1.0, to, tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::StepSizeUnderflow)
        throw Error(ErrorCode::SingularityApproached, std::string(e.what()));
      throw;
    }
  };
  const Trajectory back = run(std::min(z0, 1.0));
  const Trajectory fwd = run(std::max(z1, 1.0));
  return stitch(back, fwd);
}

}  // namespace liesym
