#include "liesym/rational.hpp"

#include <limits>
#include <numeric>

#include "liesym/error.hpp"

namespace liesym {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::MalformedExpression, "rational with zero denominator");
  *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw Error(ErrorCode::MalformedExpression, "division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < -kMax || d > kMax) throw Error(ErrorCode::Overflow, "rational coefficient exceeds 64 bits");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational Rational::reciprocal() const {
  if (num_ == 0) throw Error(ErrorCode::MalformedExpression, "reciprocal of zero");
  return from_wide(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::pow(std::int64_t e) const {
  if (e < 0) return reciprocal().pow(-e);
  Rational result(1);
  Rational b = *this;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return result;
}

Rational Rational::parse(const std::string& text) {
  auto fail = [&] { return Error(ErrorCode::MalformedExpression, "bad rational literal '" + text + "'"); };
  if (text.empty()) throw fail();
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    ++i;
  }
  __int128 n = 0;
  __int128 d = 1;
  bool seen_digit = false;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      n = n * 10 + (ch - '0');
      if (seen_dot) d *= 10;
      seen_digit = true;
      if (n > kMax * 10 || d > kMax) throw fail();
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch == '/' && !seen_dot) {
      Rational den = parse(text.substr(i + 1));
      if (!seen_digit) throw fail();
      return from_wide(neg ? -n : n, d) / den;
    } else {
      throw fail();
    }
  }
  if (!seen_digit) throw fail();
  return from_wide(neg ? -n : n, d);
}

}  // namespace liesym
