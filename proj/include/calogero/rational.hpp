#pragma once

#include <gmpxx.h>

#include <string>

namespace calogero {

// Exact arithmetic carriers. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// once canonicalize() has run; rational() below is the safe constructor.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational(long num, long den) {
  return rational(Integer(num), Integer(den));
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer pow2(unsigned long n) {
  Integer r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), n);
  return r;
}

inline Integer pow_ui(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool is_odd(const Integer& z) { return mpz_odd_p(z.get_mpz_t()) != 0; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace calogero
