#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/rdm.hpp"
#include "calogero/real.hpp"

namespace calogero {

// Cyclic Jacobi eigenvalue iteration on a symmetric n x n matrix (row major,
// destroyed). Runs in double or Real; stops once the off-diagonal Frobenius
// norm drops to `tol`, throws ConvergenceFailure after `max_sweeps` full
// sweeps. Jacobi is chosen for its elementwise-bounded rounding error, which
// keeps eigenvalues accurate at the working precision.
template <class T>
std::vector<T> jacobi_eigenvalues(std::vector<T>& a, std::size_t n, const T& tol,
                                  unsigned max_sweeps = 64) {
  using F = Field<T>;
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
  T zero = tol - tol;
  T one = F::from_ui(1, tol);
  T skip = tol / F::from_ui(4 * n * n + 4, tol);
  for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
    T off = zero;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    off = F::sqrt_(off + off);
    if (off <= tol) {
      std::vector<T> eig;
      eig.reserve(n);
      for (std::size_t i = 0; i < n; ++i) eig.push_back(at(i, i));
      return eig;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        T apq = at(p, q);
        if (F::abs_(apq) <= skip) continue;
        // tan of the annihilating rotation via the stable quadratic root.
        T theta = (at(q, q) - at(p, p)) / (apq + apq);
        T t = one / (F::abs_(theta) + F::sqrt_(theta * theta + one));
        if (theta < zero) t = -t;
        T c = one / F::sqrt_(t * t + one);
        T s = t * c;
        T tau = s / (one + c);
        T app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = zero;
        at(q, p) = zero;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          T akp = at(k, p), akq = at(k, q);
          at(k, p) = akp - s * (akq + tau * akp);
          at(p, k) = at(k, p);
          at(k, q) = akq + s * (akp - tau * akq);
          at(q, k) = at(k, q);
        }
      }
  }
  throw ConvergenceFailure("eigenvalue iteration did not reach tolerance in " +
                           std::to_string(max_sweeps) + " sweeps");
}

struct EntanglementSpectrum {
  ModelSpec spec;
  unsigned p = 1;
  unsigned digits = 50;
  std::vector<Real> values;     // descending, length = matrix dimension
  Real multiplicity_tolerance;  // 10^{-digits/2}

  // Consecutive eigenvalues within the tolerance grouped as one level.
  std::vector<std::pair<Real, unsigned>> multiplicities() const {
    std::vector<std::pair<Real, unsigned>> out;
    for (const Real& v : values) {
      if (!out.empty() && out.back().first - v <= multiplicity_tolerance)
        ++out.back().second;
      else
        out.emplace_back(v, 1u);
    }
    return out;
  }
};

namespace detail {

// Occupied rows of one parity block: rho is positive semidefinite, so a
// vanishing diagonal entry forces the whole row to vanish exactly.
inline std::vector<unsigned> support_rows(const ReducedDensityMatrix& rdm,
                                          const std::vector<unsigned>& block) {
  std::vector<unsigned> rows;
  for (unsigned i : block)
    if (rdm.s_at(i, i) != 0) rows.push_back(i);
  return rows;
}

}  // namespace detail

// Entanglement spectrum at `digits` decimal digits: each parity block is
// restricted to its occupied rows, converted to Real once, and diagonalized
// by Jacobi with tolerance 10^{-digits} * trace; rows outside the support
// contribute exact zeros. Sorted descending.
inline EntanglementSpectrum eigenvalues(const ReducedDensityMatrix& rdm, unsigned digits = 50) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  EntanglementSpectrum out;
  out.spec = rdm.spec;
  out.p = rdm.p;
  out.digits = digits;
  out.multiplicity_tolerance = pow_si(Real::of(10ul, bits), -static_cast<long>(digits / 2));
  out.values.reserve(rdm.dim);

  Real scale = Real::of(rdm.scale, bits);
  std::vector<Real> rootf;
  rootf.reserve(rdm.dim);
  for (unsigned i = 0; i < rdm.dim; ++i) rootf.push_back(sqrt(Real::of(rdm.F[i], bits)));

  std::size_t zeros = 0;
  for (const auto& block : parity_blocks(rdm)) {
    std::vector<unsigned> rows = detail::support_rows(rdm, block);
    zeros += block.size() - rows.size();
    std::size_t n = rows.size();
    if (n == 0) continue;
    std::vector<Real> a;
    a.reserve(n * n);
    for (unsigned i : rows)
      for (unsigned j : rows) a.push_back(scale * Real::of(rdm.s_at(i, j), bits) * rootf[i] * rootf[j]);
    Real tol = pow_si(Real::of(10ul, bits), -static_cast<long>(digits));
    std::vector<Real> eig = jacobi_eigenvalues(a, n, tol);
    for (auto& v : eig) out.values.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < zeros; ++i) out.values.emplace_back(bits);
  std::sort(out.values.begin(), out.values.end(), [](const Real& x, const Real& y) { return y < x; });
  return out;
}

namespace detail {

inline Real entropy_threshold(unsigned digits) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  unsigned d = digits > 5 ? digits - 5 : 1;
  return pow_si(Real::of(10ul, bits), -static_cast<long>(d));
}

inline std::vector<const Real*> kept_values(const std::vector<Real>& lambda, unsigned digits) {
  Real cut = entropy_threshold(digits);
  std::vector<const Real*> kept;
  for (const Real& v : lambda)
    if (v > cut) kept.push_back(&v);
  return kept;
}

}  // namespace detail

// Von Neumann entropy in bits, - Sum lambda log2 lambda over eigenvalues
// above the drop threshold 10^{-(digits-5)}.
inline Real von_neumann_entropy(const std::vector<Real>& lambda, unsigned digits = 50) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  Real s(bits);
  for (const Real* v : detail::kept_values(lambda, digits)) s -= *v * log2(*v);
  return s;
}

// Linear entropy 1 - Sum lambda^2 (the exact route is 1 - purity_exact()).
inline Real linear_entropy(const std::vector<Real>& lambda, unsigned digits = 50) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  Real s = Real::of(1ul, bits);
  for (const Real* v : detail::kept_values(lambda, digits)) s -= *v * *v;
  return s;
}

// Subentropy Q = - Sum_k w_k log2 lambda_k with w_k = lambda_k^n /
// Prod_{j != k} (lambda_k - lambda_j) over the n kept eigenvalues. Dropping
// exact zeros is exact here: a zero eigenvalue's term vanishes and its factor
// in every other weight cancels one power of lambda_k. Near-degenerate pairs
// (gap < 10^{-digits/2}) make the weights numerically meaningless, which is
// reported as DegenerateSpectrum rather than returned as noise.
inline Real jrw_subentropy(const std::vector<Real>& lambda, unsigned digits = 50) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  std::vector<const Real*> kept = detail::kept_values(lambda, digits);
  Real gap_tol = pow_si(Real::of(10ul, bits), -static_cast<long>(digits / 2));
  Real q(bits);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    Real w = *kept[k];
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j == k) continue;
      Real diff = *kept[k] - *kept[j];
      if (abs(diff) < gap_tol)
        throw DegenerateSpectrum("subentropy is singular: eigenvalue gap below 10^-" +
                                 std::to_string(digits / 2));
      w *= *kept[k] / diff;
    }
    q -= w * log2(*kept[k]);
  }
  return q;
}

// Large-coupling two-particle occupancies: lambda_k -> 2 sqrt(2) (3 - 2 sqrt(2))
// (17 - 12 sqrt(2))^k, each twofold degenerate (even/odd pairs), summing to 1.
inline Real asymptotic_occupancy(unsigned k, unsigned digits = 50) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  Real rt2 = sqrt(Real::of(2ul, bits));
  Real head = (rt2 + rt2) * (Real::of(3ul, bits) - (rt2 + rt2));
  Real ratio = Real::of(17ul, bits) - Real::of(12ul, bits) * rt2;
  return head * pow_si(ratio, static_cast<long>(k));
}

struct AsymptoticEntropies {
  Real S2;  // limit of the N=2 one-particle von Neumann entropy, bits
  Real L2;  // limit of the N=2 linear entropy
  Real S3;  // limit of the N=3 one-particle von Neumann entropy, bits
};

// Closed forms S2 = 3 log2(3 + 2 sqrt(2)) / (2 sqrt(2)) - 3/2 and
// L2 = 1 - sqrt(2)/3; the three-particle limit is known only as a printed
// 6-digit decimal, so it is parsed, not derived.
inline AsymptoticEntropies asymptotic_entropies(unsigned digits = 50) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  Real rt2 = sqrt(Real::of(2ul, bits));
  Real three = Real::of(3ul, bits);
  AsymptoticEntropies out{Real(bits), Real(bits), Real(bits)};
  out.S2 = three * log2(three + rt2 + rt2) / (rt2 + rt2) - Real::of(Rational(3, 2), bits);
  out.L2 = Real::of(1ul, bits) - rt2 / three;
  out.S3 = Real::parse("1.87494", bits);
  return out;
}

}  // namespace calogero
