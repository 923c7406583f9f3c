#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/rational.hpp"
#include "calogero/real.hpp"

namespace calogero {

namespace detail {

// Odd primes below 10^4. Every radicand this engine produces is a product of
// factorials and powers of two of desk-scale arguments, so its prime factors
// all sit far below this bound; the perfect-square fallback in
// square_free_decompose covers the general case for test inputs.
inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long limit = 10000;
    std::vector<bool> composite(limit, false);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p < limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (unsigned long q = p * p; q < limit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

struct SquareFreeParts {
  Integer square_free;  // s
  Integer root;         // f, with m = f^2 * s
};

// m = f^2 * s with s square-free. Inputs with a prime-square factor above
// 10^8 would escape both the sieve and the perfect-square fallback; nothing
// in this engine produces such a radicand (all are 10^4-smooth).
inline SquareFreeParts square_free_decompose(const Integer& m) {
  if (m <= 0) throw Error(ExitCode::failure, "square_free_decompose: input must be positive");
  if (mpz_fits_ulong_p(m.get_mpz_t())) {
    // Fast path: word-sized trial division with early exit at p^2 > n.
    unsigned long n = mpz_get_ui(m.get_mpz_t());
    unsigned long root = 1, rest = 1;
    for (unsigned long p : detail::small_primes()) {
      if (p * p > n) break;
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      for (unsigned i = 0; i + 1 < e; i += 2) root *= p;
      if (e % 2) rest *= p;
    }
    Integer rest_z(rest), root_z(root);
    if (n > 1) {
      // Leftover has no factor below 10^4: a prime, a prime square, or (for
      // inputs near 2^64) a semiprime; only the square case needs splitting.
      Integer nz(n);
      if (mpz_perfect_square_p(nz.get_mpz_t())) {
        Integer s;
        mpz_sqrt(s.get_mpz_t(), nz.get_mpz_t());
        root_z *= s;
      } else {
        rest_z *= nz;
      }
    }
    return {rest_z, root_z};
  }
  Integer n = m, root = 1, rest = 1;
  Integer p;
  for (unsigned long pu : detail::small_primes()) {
    p = pu;
    if (mpz_cmp(n.get_mpz_t(), p.get_mpz_t()) < 0) break;
    mp_bitcnt_t e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    if (e >= 2) {
      Integer pk = pow_ui(p, e / 2);
      root *= pk;
    }
    if (e % 2) rest *= p;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
      root *= s;
    } else {
      rest *= n;  // no small factors and not a square: assume square-free
    }
  }
  return {rest, root};
}

// Exact value coefficient * sqrt(radicand), radicand square-free and >= 1.
// Canonical zero is 0 * sqrt(1). This is the closure in which every
// wavefunction amplitude and RDM entry lives.
struct Radical {
  Rational coefficient{0};
  Integer radicand{1};

  bool is_zero() const { return coefficient == 0; }

  bool operator==(const Radical& o) const {
    return coefficient == o.coefficient && radicand == o.radicand;
  }

  Radical operator-() const { return Radical{-coefficient, radicand}; }
};

inline Radical make_radical(const Rational& coefficient, const Integer& radicand) {
  if (coefficient == 0 || radicand == 0) return Radical{};
  if (radicand < 0) throw Error(ExitCode::failure, "make_radical: negative radicand");
  SquareFreeParts parts = square_free_decompose(radicand);
  return Radical{coefficient * Rational(parts.root), parts.square_free};
}

// sqrt(r) for positive rational r: sqrt(p/q) = sqrt(p q)/q, canonicalized.
inline Radical radical_from_sqrt(const Rational& r) {
  if (r <= 0) throw Error(ExitCode::failure, "radical_from_sqrt: input must be positive");
  return make_radical(rational(Integer(1), r.get_den()), r.get_num() * r.get_den());
}

// Sums in this engine always share one radicand (trailing factors enter
// squared); a mismatch is an indexing bug, reported loudly.
inline Radical radical_add(const Radical& a, const Radical& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.radicand != b.radicand)
    throw MismatchedRadicand("radical_add: radicands " + to_string(a.radicand) + " and " +
                             to_string(b.radicand) + " differ");
  Rational c = a.coefficient + b.coefficient;
  if (c == 0) return Radical{};
  return Radical{c, a.radicand};
}

inline Radical radical_mul(const Radical& a, const Radical& b) {
  if (a.is_zero() || b.is_zero()) return Radical{};
  return make_radical(a.coefficient * b.coefficient, a.radicand * b.radicand);
}

inline Radical radical_scale(const Radical& a, const Rational& c) {
  if (c == 0 || a.is_zero()) return Radical{};
  return Radical{a.coefficient * c, a.radicand};
}

inline Radical radical_abs(const Radical& a) {
  return Radical{abs(a.coefficient), a.radicand};
}

// Decimal value correct to the requested number of digits.
inline Real to_real(const Radical& a, unsigned digits) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  if (a.is_zero()) return Real::of(0l, bits);
  return Real::of(a.coefficient, bits) * sqrt(Real::of(a.radicand, bits));
}

}  // namespace calogero
