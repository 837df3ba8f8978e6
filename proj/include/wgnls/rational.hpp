#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace wgnls {

// Exact rational with 64-bit numerator/denominator, always normalized with a
// positive denominator. Arithmetic throws on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  // Closest rational with denominator <= max_den (continued fractions);
  // throws if it misses x by more than tol.
  static Rational from_double(double x, std::int64_t max_den = 1000000, double tol = 1e-12);

  std::int64_t num() const { return n_; }
  std::int64_t den() const { return d_; }
  double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
  std::string str() const;

  Rational operator-() const { return Rational(-n_, d_); }
  Rational reciprocal() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static Rational make(__int128 n, __int128 d);
  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace wgnls
