#pragma once

#include "wgnls/model.hpp"
#include "wgnls/rational.hpp"

namespace wgnls {

// Lebesgue exponent stored as its reciprocal so that infinity is exact (inv = 0).
struct Exponent {
  Rational inv;
  static Exponent of(const Rational& p) { return {p.reciprocal()}; }
  static Exponent infinity() { return {Rational(0)}; }
  bool is_infinite() const { return inv == Rational(0); }
  // Reciprocal of the Hoelder conjugate, 1/p' = 1 - 1/p.
  Rational conj_inv() const { return Rational(1) - inv; }
  double value() const;
};

struct ExponentPair {
  Exponent q, r;
};

struct ExponentTable {
  int d = 1;
  Rational alpha;
  Rational s_alpha, theta;
  Exponent ba, bb, br;
  ExponentPair pair_tilde, pair_hat;
  int case_index = 1;  // branch of the pair construction (1, 2 or 3)

  // Exact checks of the table's defining identities.
  bool s_in_range() const;
  bool theta_in_range() const;
  bool exotic_identities() const;
  bool admissible(const ExponentPair& pr) const;
  bool pair_relation() const;
  bool all_identities() const;
};

ExponentTable exponent_table(int d, const Rational& alpha);
ExponentTable exponent_table(const ModelParams& p);

}  // namespace wgnls
