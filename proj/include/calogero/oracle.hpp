#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/hermite.hpp"
#include "calogero/model.hpp"
#include "calogero/multiindex.hpp"
#include "calogero/real.hpp"
#include "calogero/tensor.hpp"

namespace calogero {

// Independent verification routes. Nothing here shares nontrivial code with
// the production pipeline: the quadrature route integrates the explicit
// position-space wavefunction, and the contraction route expands the
// Hermite-determinant power permutation by permutation. Production results
// are cross-checked against these in the test suite; keep the routes
// separate.

// Gauss-Hermite rule with the Gaussian absorbed into the weights:
// Integral g(x) dx ~ Sum_i w_i g(x_i) for g = polynomial * e^{-x^2}, exact
// through polynomial degree 2k-1. Nodes are the roots of psi_k, found by
// interlacing bisection order by order; weights are 1/(k psi_{k-1}(x_i)^2),
// a form with no overflow because the e^{x^2} growth stays implicit.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussHermiteRule gauss_hermite(unsigned k) {
  if (k == 0) throw Error(ExitCode::failure, "quadrature rule needs at least one node");
  std::vector<double> roots{};
  for (unsigned j = 1; j <= k; ++j) {
    std::vector<double> next(j);
    double bound = std::sqrt(2.0 * j + 1.0);
    auto value = [&](double x) { return oscillator_eigenfunctions<double>(j, x)[j]; };
    for (unsigned i = 0; i < j; ++i) {
      double lo = i == 0 ? -bound : roots[i - 1];
      double hi = i + 1 == j ? bound : roots[i];
      double flo = value(lo);
      for (unsigned it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::fabs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fmid = value(mid);
        if ((flo <= 0) == (fmid <= 0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      next[i] = 0.5 * (lo + hi);
    }
    roots = std::move(next);
  }
  GaussHermiteRule rule;
  rule.nodes = roots;
  rule.weights.resize(k);
  for (unsigned i = 0; i < k; ++i) {
    double pk1 = oscillator_eigenfunctions<double>(k - 1, roots[i])[k - 1];
    rule.weights[i] = 1.0 / (k * pk1 * pk1);
  }
  return rule;
}

struct GaussHermiteRuleReal {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// Double rule polished by Newton in extended precision; each step squares
// the number of correct digits, so a handful of iterations reaches `digits`.
inline GaussHermiteRuleReal gauss_hermite_real(unsigned k, unsigned digits) {
  GaussHermiteRule seed = gauss_hermite(k);
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  unsigned steps = 2;
  for (unsigned have = 15; have < digits; have *= 2) ++steps;
  GaussHermiteRuleReal rule;
  Real sqrt2k = sqrt(Real::of(static_cast<unsigned long>(2 * k), bits));
  for (unsigned i = 0; i < k; ++i) {
    Real x = Real::of(seed.nodes[i], bits);
    for (unsigned s = 0; s < steps; ++s) {
      std::vector<Real> psi = oscillator_eigenfunctions<Real>(k, x);
      x = x - psi[k] / (sqrt2k * psi[k - 1] - x * psi[k]);
    }
    std::vector<Real> psi = oscillator_eigenfunctions<Real>(k - 1, x);
    rule.weights.push_back(Real::of(1ul, bits) /
                           (Real::of(static_cast<unsigned long>(k), bits) * psi[k - 1] * psi[k - 1]));
    rule.nodes.push_back(std::move(x));
  }
  return rule;
}

// Literal tensor-product quadrature of the explicit ground state: builds the
// p-particle matrix as rho_{ij} = Integral dt h_i(t) h_j(t) with h_i(t) =
// Integral dx Phi_i(x) Psi(x, t), evaluating Psi = C Prod (y_a - y_b)^nu
// Prod e^{-y^2/2} coordinate by coordinate at every node tuple. O(k^N D^p)
// work in double precision; nodes default to M+1 per dimension, enough to
// integrate every entry exactly up to roundoff.
inline std::vector<double> quadrature_rdm(const ModelSpec& spec, unsigned p, unsigned nodes = 0) {
  spec.validate();
  if (p < 1 || p >= spec.N)
    throw Error(ExitCode::failure, "kept particle count p must satisfy 1 <= p < N");
  if (spec.N - p > 3)
    throw ResourceLimit("quadrature cross-check covers at most 3 traced particles");
  unsigned N = spec.N;
  unsigned D = spec.basis_size();
  unsigned k = nodes ? nodes : spec.jastrow_degree() + 1;
  std::size_t front = 1;
  for (unsigned v = 0; v < p; ++v) front *= D;
  double cost = std::pow(double(k), double(N)) * double(front);
  if (cost > 6e9)
    throw ResourceLimit("quadrature cross-check too large for " + spec.label() + " at p=" +
                        std::to_string(p));

  GaussHermiteRule rule = gauss_hermite(k);
  std::vector<std::vector<double>> psi(k);
  for (unsigned n = 0; n < k; ++n)
    psi[n] = oscillator_eigenfunctions<double>(D - 1, rule.nodes[n]);
  double c0 = std::sqrt(Real::of(normalization_constant_squared(spec), 128).to_double()) /
              std::pow(3.14159265358979323846, N / 4.0);

  std::size_t xtuples = 1, ttuples = 1;
  for (unsigned v = 0; v < p; ++v) xtuples *= k;
  for (unsigned v = p; v < N; ++v) ttuples *= k;

  std::vector<double> rho(front * front, 0.0);
  std::vector<double> h(front), phi(front), tmp(front);
  std::vector<double> y(N);
  std::vector<unsigned> idx(N);
  for (std::size_t tt = 0; tt < ttuples; ++tt) {
    std::size_t rest = tt;
    double wt = 1.0;
    for (unsigned v = p; v < N; ++v) {
      idx[v] = rest % k;
      rest /= k;
      y[v] = rule.nodes[idx[v]];
      wt *= rule.weights[idx[v]];
    }
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t xx = 0; xx < xtuples; ++xx) {
      rest = xx;
      double wx = 1.0;
      for (unsigned v = 0; v < p; ++v) {
        idx[v] = rest % k;
        rest /= k;
        y[v] = rule.nodes[idx[v]];
        wx *= rule.weights[idx[v]];
      }
      double value = c0;
      for (unsigned a = 0; a < N; ++a) {
        for (unsigned b = a + 1; b < N; ++b) {
          double diff = y[a] - y[b];
          for (unsigned e = 0; e < spec.nu; ++e) value *= diff;
        }
        value *= std::exp(-0.5 * y[a] * y[a]);
      }
      value *= wx;
      // p-fold outer product of single-variable eigenfunction columns
      std::size_t cur = D;
      std::copy(psi[idx[0]].begin(), psi[idx[0]].end(), phi.begin());
      for (unsigned v = 1; v < p; ++v) {
        for (std::size_t b = 0; b < D; ++b)
          for (std::size_t a = 0; a < cur; ++a) tmp[b * cur + a] = phi[a] * psi[idx[v]][b];
        cur *= D;
        std::swap(phi, tmp);
      }
      for (std::size_t i = 0; i < front; ++i) h[i] += value * phi[i];
    }
    for (std::size_t i = 0; i < front; ++i) {
      double whi = wt * h[i];
      for (std::size_t j = i; j < front; ++j) rho[i * front + j] += whi * h[j];
    }
  }
  for (std::size_t i = 0; i < front; ++i)
    for (std::size_t j = 0; j < i; ++j) rho[i * front + j] = rho[j * front + i];
  return rho;
}

// Closed-form Hermite product linearization: Prod_i H_{k_i} = Sum_q L_q H_q
// with L_q = Sum_{r} (-1)^{Sum r} Prod_i k_i!/(r_i! (k_i-2r_i)!) *
// s!/(q! ((s-q)/2)!), s = Sum_i (k_i - 2 r_i), terms with q > s or odd s-q
// dropped. Independent of the two-factor product rule used in production.
inline IntegerExpansion linearization_closed_form(const std::vector<unsigned>& degrees) {
  IntegerExpansion out;
  std::size_t m = degrees.size();
  std::vector<unsigned> r(m, 0);
  while (true) {
    Integer pre = 1;
    unsigned s = 0, rsum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      pre *= factorial(degrees[i]) / (factorial(r[i]) * factorial(degrees[i] - 2 * r[i]));
      s += degrees[i] - 2 * r[i];
      rsum += r[i];
    }
    if (rsum % 2) pre = -pre;
    for (unsigned q = s % 2; q <= s; q += 2) {
      Integer term = pre * (factorial(s) / (factorial(q) * factorial((s - q) / 2)));
      auto [it, inserted] = out.try_emplace(q, term);
      if (!inserted) it->second += term;
    }
    std::size_t i = 0;
    while (i < m && 2 * (r[i] + 1) > degrees[i]) r[i++] = 0;
    if (i == m) break;
    ++r[i];
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

// Second construction route for the expansion integers: Delta^nu =
// (-1)^M 2^{-M} det[H_{i-1}(x_j)]^nu, so B_q = (-1)^M Sum over nu-tuples of
// permutations of Prod sgn(sigma_l) Prod_k L^{(q_k)}(sigma_1(k)-1, ...,
// sigma_nu(k)-1). Exponential in nu and N; guarded by a tuple cap and used
// only to cross-check small cases.
inline TermMap epsilon_contraction_coefficients(const ModelSpec& spec,
                                                std::size_t tuple_cap = 1'000'000) {
  spec.validate();
  check_packing(spec);
  unsigned N = spec.N;
  std::vector<std::vector<unsigned>> perms;
  std::vector<int> signs;
  std::vector<unsigned> ident(N);
  std::iota(ident.begin(), ident.end(), 0u);
  std::vector<unsigned> perm = ident;
  do {
    unsigned inversions = 0;
    for (unsigned a = 0; a < N; ++a)
      for (unsigned b = a + 1; b < N; ++b)
        if (perm[a] > perm[b]) ++inversions;
    perms.push_back(perm);
    signs.push_back(inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double total = std::pow(double(perms.size()), double(spec.nu));
  if (total > double(tuple_cap))
    throw ResourceLimit("contraction cross-check needs " + std::to_string(total) +
                        " permutation tuples, over the cap of " + std::to_string(tuple_cap));

  std::map<std::vector<unsigned>, IntegerExpansion> cache;
  auto linearized = [&](std::vector<unsigned> degs) -> const IntegerExpansion& {
    std::sort(degs.begin(), degs.end());
    auto it = cache.find(degs);
    if (it == cache.end()) it = cache.emplace(degs, linearization_closed_form(degs)).first;
    return it->second;
  };

  TermMap out;
  std::vector<unsigned> tuple(spec.nu, 0);
  std::vector<const IntegerExpansion*> factor(N);
  std::vector<unsigned> degs(spec.nu);
  // accumulate sign * Prod_k L^{(q_k)} over all q combinations of one tuple
  auto expand = [&](auto&& self, unsigned k, MultiIndex key, const Integer& c) -> void {
    if (k == N) {
      auto [it, inserted] = out.try_emplace(key, c);
      if (!inserted) it->second += c;
      return;
    }
    for (const auto& [q, L] : *factor[k]) self(self, k + 1, key | (MultiIndex(q) << (8 * k)), c * L);
  };
  while (true) {
    int sign = 1;
    for (unsigned l = 0; l < spec.nu; ++l) sign *= signs[tuple[l]];
    for (unsigned k = 0; k < N; ++k) {
      for (unsigned l = 0; l < spec.nu; ++l) degs[l] = perms[tuple[l]][k];
      factor[k] = &linearized(degs);
    }
    expand(expand, 0, 0, Integer(sign));
    unsigned l = 0;
    while (l < spec.nu && tuple[l] + 1 == perms.size()) tuple[l++] = 0;
    if (l == spec.nu) break;
    ++tuple[l];
  }
  if (spec.jastrow_degree() % 2)
    for (auto& [key, v] : out) v = -v;
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

// Same exact object as expansion_coefficients, reached through the
// determinant route; normalization is verified before returning.
inline CoefficientTensor epsilon_contraction_tensor(const ModelSpec& spec,
                                                    std::size_t tuple_cap = 1'000'000) {
  TermMap map = epsilon_contraction_coefficients(spec, tuple_cap);
  CoefficientTensor tensor{spec, amplitude_scale(spec), detail::map_to_list(std::move(map))};
  std::sort(tensor.terms.begin(), tensor.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  verify_normalization(tensor);
  return tensor;
}

}  // namespace calogero
