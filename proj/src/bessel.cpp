#include <cmath>
#include <numbers>
#include <vector>

#include "liesym/error.hpp"
#include "liesym/numerics.hpp"

namespace liesym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGamma = std::numbers::egamma;
constexpr double kSeriesMax = 8.0;
constexpr double kMillerMax = 25.0;

struct Values {
  double j0, j1, y0, y1;
};

Values evaluate(double x) {
  Values v{};
  if (x <= kSeriesMax) {
    bessel_detail::series(x, v.j0, v.j1, v.y0, v.y1);
  } else if (x <= kMillerMax) {
    bessel_detail::miller(x, v.j0, v.j1, v.y0, v.y1);
  } else {
    bessel_detail::hankel(x, v.j0, v.j1, v.y0, v.y1);
  }
  return v;
}

void check_j(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::DomainError, "Bessel J needs x >= 0");
}

void check_y(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::DomainError, "Bessel Y needs x > 0");
}

}  // namespace

namespace bessel_detail {

void series(double x, double& j0, double& j1, double& y0, double& y1) {
  const double q = 0.25 * x * x;
  double a0 = 1.0;  // (-q)^k / (k!)^2
  double a1 = 1.0;  // (-q)^k / (k! (k+1)!)
  double h = 0.0;   // H_k
  double s_j0 = 0.0, s_j1 = 0.0, s_y0 = 0.0, s_y1 = 0.0;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      a0 *= -q / (double(k) * k);
      a1 *= -q / (double(k) * (k + 1));
      h += 1.0 / k;
    }
    const double h1 = h + 1.0 / (k + 1);
    s_j0 += a0;
    s_j1 += a1;
    s_y0 -= a0 * h;
    s_y1 += a1 * (h + h1 - 2.0 * kGamma);
    if (k > 2 && std::fabs(a0) < 1e-18 * std::fabs(s_j0) + 1e-300 && std::fabs(a1) < 1e-18) break;
  }
  j0 = s_j0;
  j1 = 0.5 * x * s_j1;
  if (x > 0.0) {
    const double l = std::log(0.5 * x);
    y0 = 2.0 / kPi * ((l + kGamma) * j0 + s_y0);
    y1 = 2.0 / kPi * l * j1 - 2.0 / (kPi * x) - 0.5 * x / kPi * s_y1;
  } else {
    y0 = -HUGE_VAL;
    y1 = -HUGE_VAL;
  }
}

void miller(double x, double& j0, double& j1, double& y0, double& y1) {
  int n = static_cast<int>(x) + 40;
  if (n % 2) ++n;
  std::vector<double> jn(n + 2, 0.0);
  jn[n + 1] = 0.0;
  jn[n] = 1e-30;
  for (int k = n; k >= 1; --k) {
    jn[k - 1] = 2.0 * k / x * jn[k] - jn[k + 1];
    if (std::fabs(jn[k - 1]) > 1e250) {
      for (int m = k - 1; m <= n + 1; ++m) jn[m] *= 1e-250;
    }
  }
  double norm = jn[0];
  for (int k = 2; k <= n; k += 2) norm += 2.0 * jn[k];
  for (auto& v : jn) v /= norm;
  j0 = jn[0];
  j1 = jn[1];
  // Neumann series: Y0 = (2/pi)[(ln(x/2)+gamma) J0 - 2 sum (-1)^k J_2k / k]
  // and Y1 = -Y0' using J_2k' = (J_{2k-1} - J_{2k+1}) / 2.
  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = 1; 2 * k + 1 <= n + 1; ++k) {
    const double sgn = (k % 2) ? -1.0 : 1.0;
    s0 += sgn * jn[2 * k] / k;
    s1 += sgn * (jn[2 * k - 1] - jn[2 * k + 1]) / k;
  }
  const double l = std::log(0.5 * x) + kGamma;
  y0 = 2.0 / kPi * (l * j0 - 2.0 * s0);
  y1 = 2.0 / kPi * (l * j1 - j0 / x + s1);
}

void hankel(double x, double& j0, double& j1, double& y0, double& y1) {
  // P, Q amplitude functions of order nu; a_k(nu) = prod (4nu^2 - (2m-1)^2) / (k! 8^k)
  auto pq = [x](double nu, double& p, double& q) {
    const double mu = 4.0 * nu * nu;
    p = 0.0;
    q = 0.0;
    double a = 1.0;
    double prev = HUGE_VAL;
    for (int k = 0; k < 60; ++k) {
      if (k > 0) a *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
      const double mag = std::fabs(a);
      if (mag > prev) break;
      prev = mag;
      const int m = k % 4;
      if (k % 2 == 0) {
        p += (m == 0 ? a : -a);
      } else {
        q += (m == 1 ? a : -a);
      }
      if (mag < 1e-18) break;
    }
  };
  const double amp = std::sqrt(2.0 / (kPi * x));
  double p = 0, q = 0;
  pq(0.0, p, q);
  double c = std::cos(x - 0.25 * kPi);
  double s = std::sin(x - 0.25 * kPi);
  j0 = amp * (p * c - q * s);
  y0 = amp * (p * s + q * c);
  pq(1.0, p, q);
  c = std::cos(x - 0.75 * kPi);
  s = std::sin(x - 0.75 * kPi);
  j1 = amp * (p * c - q * s);
  y1 = amp * (p * s + q * c);
}

}  // namespace bessel_detail

double bessel_j0(double x) {
  check_j(x);
  return evaluate(x).j0;
}

double bessel_j1(double x) {
  check_j(x);
  return evaluate(x).j1;
}

double bessel_y0(double x) {
  check_y(x);
  return evaluate(x).y0;
}

double bessel_y1(double x) {
  check_y(x);
  return evaluate(x).y1;
}

Jet2 bessel_linear_form(double x, double a, double c1, double c2) {
  const double s = a * x;
  const Values v = evaluate(s);
  const double w = c1 * v.j0 + (c2 != 0.0 ? c2 * v.y0 : 0.0);
  const double dw = -(c1 * v.j1 + (c2 != 0.0 ? c2 * v.y1 : 0.0));
  const double d2w = -w - dw / s;
  return {w, a * dw, a * a * d2w};
}

Jet2 bessel_sqrt_form(double z, double k, double k1, double k3, double c1, double c2) {
  const double a = std::sqrt(k * k3 / k1);
  const double rz = std::sqrt(z);
  const double s = a * rz;
  const Values v = evaluate(s);
  const double w = c1 * v.j0 + (c2 != 0.0 ? c2 * v.y0 : 0.0);
  const double dw = -(c1 * v.j1 + (c2 != 0.0 ? c2 * v.y1 : 0.0));
  const double d2w = -w - dw / s;
  Jet2 out;
  out.v = w - 1.0 / (k * k3);
  out.d1 = dw * a / (2.0 * rz);
  out.d2 = d2w * a * a / (4.0 * z) - dw * a / (4.0 * z * rz);
  return out;
}

}  // namespace liesym
