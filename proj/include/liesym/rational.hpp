#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace liesym {

/// Exact rational with 64-bit numerator/denominator. Arithmetic is carried out
/// in 128 bits and throws Error(Overflow) if the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Integer power; negative exponents invert.
  Rational pow(std::int64_t e) const;

  /// Parse "p", "p/q" or a terminating decimal such as "0.25" exactly.
  static Rational parse(const std::string& text);

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace liesym
