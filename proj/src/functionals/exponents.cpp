#include "wgnls/exponents.hpp"

#include <limits>

namespace wgnls {

double Exponent::value() const {
  return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / inv.to_double();
}

namespace {
// 1/q from 2/q + d/r = d/2.
Rational admissible_q_inv(int d, const Rational& r_inv) {
  return Rational(d, 4) - Rational(d, 2) * r_inv;
}
}  // namespace

ExponentTable exponent_table(int d, const Rational& alpha) {
  check_intercritical(d, alpha);
  const Rational a = alpha;
  const Rational two(2), four(4), D(d);
  ExponentTable t;
  t.d = d;
  t.alpha = a;
  t.s_alpha = Rational(d, 2) - two / a;
  t.theta = two * (four - (D - two) * a) / (a * a * D);
  t.ba = Exponent::of(two * a * (a + two) / (four - (D - two) * a));
  t.bb = Exponent::of(two * a * (a + two) / (D * a * a + (D - two) * a - four));
  t.br = Exponent::of(a + two);

  Rational rt_inv;
  if (d <= 2) {
    t.case_index = 1;
    rt_inv = (a + two).reciprocal();
  } else if (a <= two / (D - Rational(1))) {
    t.case_index = 2;
    rt_inv = (two - a) / (two * (two + a));
  } else {
    t.case_index = 3;
    rt_inv = (D - two) / (two * D);
  }
  t.pair_tilde.r.inv = rt_inv;
  t.pair_tilde.q.inv = admissible_q_inv(d, rt_inv);
  // Hat pair from the Hoelder relation; its admissibility is then a check.
  t.pair_hat.r.inv = t.pair_tilde.r.conj_inv() - a * t.br.inv;
  t.pair_hat.q.inv = t.pair_tilde.q.conj_inv() - a * t.ba.inv;
  return t;
}

ExponentTable exponent_table(const ModelParams& p) { return exponent_table(p.d, p.alpha_q); }

bool ExponentTable::s_in_range() const { return Rational(0) < s_alpha && s_alpha < Rational(1, 2); }

bool ExponentTable::theta_in_range() const { return Rational(0) < theta && theta < Rational(1); }

bool ExponentTable::exotic_identities() const {
  const Rational a1 = alpha + Rational(1);
  // (alpha+1) br' = br  <=>  (alpha+1) / br' ... compared through reciprocals.
  return a1 * br.conj_inv().reciprocal() == br.inv.reciprocal() &&
         a1 * bb.conj_inv().reciprocal() == ba.inv.reciprocal();
}

bool ExponentTable::admissible(const ExponentPair& pr) const {
  const Rational half(1, 2), zero(0);
  if (pr.q.inv < zero || pr.q.inv > half || pr.r.inv < zero || pr.r.inv > half) return false;
  if (d == 2 && pr.q.inv == half) return false;
  return Rational(2) * pr.q.inv + Rational(d) * pr.r.inv == Rational(d, 2);
}

bool ExponentTable::pair_relation() const {
  return pair_tilde.q.conj_inv() == alpha * ba.inv + pair_hat.q.inv &&
         pair_tilde.r.conj_inv() == alpha * br.inv + pair_hat.r.inv;
}

bool ExponentTable::all_identities() const {
  return s_in_range() && theta_in_range() && exotic_identities() && admissible(pair_tilde) &&
         admissible(pair_hat) && pair_relation();
}

}  // namespace wgnls
