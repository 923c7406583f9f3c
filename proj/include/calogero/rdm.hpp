#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/model.hpp"
#include "calogero/multiindex.hpp"
#include "calogero/radical.hpp"
#include "calogero/tensor.hpp"

namespace calogero {

// p-particle reduced density matrix in the orthonormal oscillator product
// basis, held exactly: rho_{ij} = S_{ij} * scale * sqrt(F_i F_j) with integer
// S and F. Row/column index is the 0-based flat index of the kept multi-index
// (first slot least significant); the public flat_index convention is 1-based.
struct ReducedDensityMatrix {
  ModelSpec spec;
  unsigned p = 1;
  unsigned dim = 0;        // basis_size^p
  Rational scale;          // 2^{-M} Prod_j nu!/(j nu)!
  std::vector<Integer> S;  // dim*dim, symmetric
  std::vector<Integer> F;  // F_i = Prod_k 2^{q_k} q_k! over the p kept slots

  const Integer& s_at(unsigned i, unsigned j) const { return S[std::size_t(i) * dim + j]; }
  Integer& s_at(unsigned i, unsigned j) { return S[std::size_t(i) * dim + j]; }

  Radical entry(unsigned i, unsigned j) const {
    if (s_at(i, j) == 0) return Radical{};
    Radical root = radical_from_sqrt(Rational(F[i] * F[j]));
    return make_radical(Rational(s_at(i, j)) * scale * root.coefficient, root.radicand);
  }

  Rational trace_exact() const {
    Integer sum = 0;
    for (unsigned i = 0; i < dim; ++i) sum += s_at(i, i) * F[i];
    Rational t = Rational(sum) * scale;
    t.canonicalize();
    return t;
  }

  Rational purity_exact() const {
    Integer sum = 0;
    Integer term;
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j) {
        const Integer& s = s_at(i, j);
        if (s == 0) continue;
        term = s * s * F[i] * F[j];
        sum += term;
      }
    Rational t = Rational(sum) * scale * scale;
    t.canonicalize();
    return t;
  }

  // Unit trace is the integer identity num(scale) * Sum_i S_ii F_i = den(scale).
  void verify_trace() const {
    Integer sum = 0;
    for (unsigned i = 0; i < dim; ++i) sum += s_at(i, i) * F[i];
    if (scale.get_num() * sum != scale.get_den())
      throw Error(ExitCode::failure, "reduced density matrix of " + spec.label() + " at p=" +
                                         std::to_string(p) + " does not have unit trace");
  }
};

namespace detail {

inline std::vector<Integer> slot_weights(unsigned basis) {
  std::vector<Integer> w(basis);
  for (unsigned d = 0; d < basis; ++d) w[d] = pow2(d) * factorial(d);
  return w;
}

inline Integer front_weight(MultiIndex front, unsigned p, const std::vector<Integer>& w) {
  Integer f = 1;
  for (unsigned k = 0; k < p; ++k) f *= w[slot(front, k)];
  return f;
}

}  // namespace detail

// Trace out the last N-p particles of |Psi><Psi| exactly. Because |Psi|^2 is
// permutation symmetric, which coordinates are kept does not matter. Terms
// sorted by packed index are contiguous in the trailing part, so the sum
// over traced indices is a single linear scan with one symmetric outer
// product per trailing group.
inline ReducedDensityMatrix assemble_rdm(const CoefficientTensor& tensor, unsigned p,
                                         const Limits& limits = {}) {
  const ModelSpec& spec = tensor.spec;
  spec.validate();
  if (p < 1 || p >= spec.N)
    throw Error(ExitCode::failure, "kept particle count p must satisfy 1 <= p < N");
  unsigned D = spec.basis_size();
  std::size_t dim = 1;
  for (unsigned k = 0; k < p; ++k) dim *= D;
  if (dim * dim > limits.max_matrix_entries)
    throw ResourceLimit("density matrix dimension " + std::to_string(dim) +
                        " exceeds the entry cap of " + std::to_string(limits.max_matrix_entries));

  ReducedDensityMatrix rdm;
  rdm.spec = spec;
  rdm.p = p;
  rdm.dim = static_cast<unsigned>(dim);
  rdm.scale = tensor.scale;
  rdm.S.assign(dim * dim, Integer(0));
  std::vector<Integer> w = detail::slot_weights(D);
  rdm.F.resize(dim);
  for (std::size_t i = 0; i < dim; ++i)
    rdm.F[i] = detail::front_weight(from_flat(i, D, p), p, w);

  std::vector<std::pair<unsigned, const Integer*>> group;  // (front flat, B)
  std::size_t n = tensor.terms.size();
  Integer tw, prod;
  for (std::size_t lo = 0; lo < n;) {
    MultiIndex t = trailing_part(tensor.terms[lo].first, p);
    std::size_t hi = lo;
    group.clear();
    while (hi < n && trailing_part(tensor.terms[hi].first, p) == t) {
      group.emplace_back(flat_front(tensor.terms[hi].first, p, D), &tensor.terms[hi].second);
      ++hi;
    }
    tw = 1;
    for (unsigned k = p; k < spec.N; ++k) tw *= w[slot(t, k - p)];
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a; b < group.size(); ++b) {
        prod = (*group[a].second) * (*group[b].second) * tw;
        rdm.s_at(group[a].first, group[b].first) += prod;
        if (a != b) rdm.s_at(group[b].first, group[a].first) += prod;
      }
    lo = hi;
  }
  rdm.verify_trace();
  return rdm;
}

// Trace the last k of the p kept particles out of an existing matrix:
// S'_{i'j'} = Sum_s S_{i'+ds, j'+ds} w(s) with d = D^{p-k}. Exactly equal,
// integer by integer, to assembling the (p-k)-particle matrix directly.
inline ReducedDensityMatrix partial_trace(const ReducedDensityMatrix& in, unsigned k) {
  if (k < 1 || k >= in.p)
    throw Error(ExitCode::failure, "partial trace needs 1 <= k < p");
  unsigned D = in.spec.basis_size();
  unsigned pk = in.p - k;
  std::size_t dim = 1;
  for (unsigned i = 0; i < pk; ++i) dim *= D;
  std::size_t traced = in.dim / dim;

  ReducedDensityMatrix out;
  out.spec = in.spec;
  out.p = pk;
  out.dim = static_cast<unsigned>(dim);
  out.scale = in.scale;
  out.S.assign(dim * dim, Integer(0));
  std::vector<Integer> w = detail::slot_weights(D);
  out.F.resize(dim);
  for (std::size_t i = 0; i < dim; ++i)
    out.F[i] = detail::front_weight(from_flat(i, D, pk), pk, w);

  std::vector<Integer> tracew(traced);
  for (std::size_t s = 0; s < traced; ++s)
    tracew[s] = detail::front_weight(from_flat(s, D, k), k, w);

  Integer term;
  for (std::size_t s = 0; s < traced; ++s) {
    std::size_t off = s * dim;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const Integer& v = in.s_at(static_cast<unsigned>(off + i), static_cast<unsigned>(off + j));
        if (v == 0) continue;
        term = v * tracew[s];
        out.S[i * dim + j] += term;
      }
  }
  out.verify_trace();
  return out;
}

// Indices split by the parity of the kept degree sum. rho is block diagonal
// across the two classes: S_{ij} != 0 forces equal front parity because every
// B_q lives at total degree parity M mod 2.
inline std::array<std::vector<unsigned>, 2> parity_blocks(const ReducedDensityMatrix& rdm) {
  std::array<std::vector<unsigned>, 2> blocks;
  unsigned D = rdm.spec.basis_size();
  for (unsigned i = 0; i < rdm.dim; ++i) {
    unsigned sum = 0, rest = i;
    for (unsigned k = 0; k < rdm.p; ++k) {
      sum += rest % D;
      rest /= D;
    }
    blocks[sum % 2].push_back(i);
  }
  return blocks;
}

}  // namespace calogero
