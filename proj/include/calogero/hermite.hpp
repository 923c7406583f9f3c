#pragma once

#include <map>
#include <vector>

#include "calogero/rational.hpp"
#include "calogero/real.hpp"

namespace calogero {

// Sparse Hermite-basis expansions, degree -> coefficient.
using IntegerExpansion = std::map<unsigned, Integer>;
using RationalExpansion = std::map<unsigned, Rational>;

// Coefficient of H_{m+n-2k} in H_m * H_n: 2^k k! C(m,k) C(n,k).
inline Integer hermite_product_coeff(unsigned m, unsigned n, unsigned k) {
  return pow2(k) * factorial(k) * binomial(m, k) * binomial(n, k);
}

// Multiply an expansion by a single H_n via the two-factor product rule.
inline IntegerExpansion hermite_multiply(const IntegerExpansion& a, unsigned n) {
  IntegerExpansion out;
  for (const auto& [m, c] : a) {
    unsigned kmax = std::min(m, n);
    for (unsigned k = 0; k <= kmax; ++k) {
      Integer term = c * hermite_product_coeff(m, n, k);
      auto [it, inserted] = out.try_emplace(m + n - 2 * k, term);
      if (!inserted) it->second += term;
    }
  }
  return out;
}

// Product linearization: Pi_i H_{k_i}(x) = Sum_q L_q H_q(x), L_q nonnegative
// integers, L_q = 0 unless q == Sum k_i (mod 2). Left-fold of the two-factor
// rule; the direct closed form lives in the oracle header as a test oracle.
inline IntegerExpansion linearize_product(const std::vector<unsigned>& degrees) {
  IntegerExpansion acc{{0u, Integer(1)}};
  for (unsigned k : degrees) acc = hermite_multiply(acc, k);
  return acc;
}

// Integer connection T(d,k) = d! / (k! ((d-k)/2)!) in
// x^d = 2^{-d} Sum_{k<=d, k==d (2)} T(d,k) H_k(x). Zero when parities differ.
inline Integer monomial_hermite_connection(unsigned d, unsigned k) {
  if (k > d || (d - k) % 2 != 0) return Integer(0);
  return factorial(d) / (factorial(k) * factorial((d - k) / 2));
}

// x^d as a rational Hermite expansion (the T table with its 2^{-d} scale).
inline RationalExpansion monomial_to_hermite(unsigned d) {
  RationalExpansion out;
  Integer den = pow2(d);
  for (unsigned k = d % 2; k <= d; k += 2)
    out.emplace(k, rational(monomial_hermite_connection(d, k), den));
  return out;
}

// Monomial coefficients of the physicists' H_k, index = power of x.
inline std::vector<Integer> hermite_coefficients(unsigned k) {
  std::vector<Integer> h0{Integer(1)};
  if (k == 0) return h0;
  std::vector<Integer> h1{Integer(0), Integer(2)};
  if (k == 1) return h1;
  for (unsigned n = 1; n < k; ++n) {
    // H_{n+1} = 2x H_n - 2n H_{n-1}
    std::vector<Integer> next(n + 2, Integer(0));
    for (unsigned i = 0; i <= n; ++i) next[i + 1] += 2 * h1[i];
    for (unsigned i = 0; i < h0.size(); ++i) next[i] -= 2 * static_cast<long>(n) * h0[i];
    h0 = std::move(h1);
    h1 = std::move(next);
  }
  return h1;
}

// Orthonormal oscillator eigenfunctions psi_0..psi_kmax at x, by the stable
// normalized recurrence psi_{k+1} = x sqrt(2/(k+1)) psi_k - sqrt(k/(k+1)) psi_{k-1},
// psi_0 = pi^{-1/4} e^{-x^2/2}. Works in double or Real via Field<T>.
template <class T>
std::vector<T> oscillator_eigenfunctions(unsigned kmax, const T& x) {
  using F = Field<T>;
  std::vector<T> psi;
  psi.reserve(kmax + 1);
  T quarter_pi = F::sqrt_(F::sqrt_(F::pi(x)));
  psi.push_back(F::exp_(-(x * x) / F::from_ui(2, x)) / quarter_pi);
  if (kmax == 0) return psi;
  T sqrt2 = F::sqrt_(F::from_ui(2, x));
  psi.push_back(sqrt2 * x * psi[0]);
  for (unsigned k = 1; k < kmax; ++k) {
    T a = F::sqrt_(F::from_rational(rational(2, static_cast<long>(k) + 1), x));
    T b = F::sqrt_(F::from_rational(rational(static_cast<long>(k), static_cast<long>(k) + 1), x));
    psi.push_back(x * a * psi[k] - b * psi[k - 1]);
  }
  return psi;
}

// Single-value form of the above; relative error <= 10 k 10^{-digits}.
inline Real hermite_function_eval(unsigned k, const Real& x, unsigned digits) {
  Real xw = x;
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  if (xw.precision() < bits) {
    Real widened(bits);
    widened += x;
    xw = widened;
  }
  return oscillator_eigenfunctions<Real>(k, xw)[k];
}

}  // namespace calogero
