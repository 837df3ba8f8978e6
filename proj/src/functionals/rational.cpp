#include "wgnls/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "wgnls/error.hpp"

namespace wgnls {

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw InvalidArgument("rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  constexpr auto lim = std::numeric_limits<std::int64_t>::max();
  if (n > lim || n < -lim || d > lim) throw Error("rational: overflow");
  Rational r;
  r.n_ = static_cast<std::int64_t>(n);
  r.d_ = static_cast<std::int64_t>(d);
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rational Rational::from_double(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) throw InvalidArgument("rational: non-finite value");
  // Continued-fraction convergents.
  long double v = x;
  __int128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const long double a = std::floor(v);
    const auto ai = static_cast<__int128>(a);
    const __int128 p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const long double frac = v - a;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= 1e-15 * std::max(1.0, std::abs(x)) ||
        frac == 0)
      break;
    v = 1.0L / frac;
  }
  const Rational r = make(p1, q1);
  if (std::abs(r.to_double() - x) > tol * std::max(1.0, std::abs(x)))
    throw InvalidArgument("rational: no close rational for " + std::to_string(x));
  return r;
}

std::string Rational::str() const {
  return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::reciprocal() const { return make(d_, n_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                        static_cast<__int128>(a.d_) * b.d_);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
}
Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }
bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace wgnls
