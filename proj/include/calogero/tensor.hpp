#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/hermite.hpp"
#include "calogero/model.hpp"
#include "calogero/multiindex.hpp"
#include "calogero/radical.hpp"

namespace calogero {

// Desk-scale guards. Exceeding a cap raises ResourceLimit before the engine
// starts thrashing; both are overridable from the CLI.
struct Limits {
  std::size_t max_tensor_entries = 20'000'000;
  std::size_t max_matrix_entries = 6'000'000;
};

using TermMap = std::unordered_map<MultiIndex, Integer>;
using TermList = std::vector<std::pair<MultiIndex, Integer>>;

// Exact Hermite-basis expansion of the ground state: the Jastrow power
// expands as 2^{-M} Sum_q B_q Prod_k H_{q_k}, and the amplitude of the
// orthonormal-product state |q> is a_q = B_q * sqrt(scale * Prod_k 2^{q_k} q_k!)
// with scale = 2^{-M} Prod_j nu!/(j nu)!. Terms are sorted by packed index,
// so equal tensors are bytewise equal regardless of how they were built.
struct CoefficientTensor {
  ModelSpec spec;
  Rational scale;
  TermList terms;

  const Integer* integer_part(MultiIndex m) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), m,
                               [](const auto& t, MultiIndex key) { return t.first < key; });
    if (it == terms.end() || it->first != m) return nullptr;
    return &it->second;
  }

  // Rational part R(q) under the square root of amplitude q.
  Rational radicand_of(MultiIndex m) const {
    Rational r = scale;
    for (unsigned k = 0; k < spec.N; ++k) {
      unsigned q = slot(m, k);
      r *= Rational(pow2(q) * factorial(q));
    }
    return r;
  }

  Radical amplitude(const std::vector<unsigned>& q) const {
    MultiIndex m = pack(q);
    const Integer* b = integer_part(m);
    if (b == nullptr) return Radical{};
    Radical root = radical_from_sqrt(radicand_of(m));
    return make_radical(Rational(*b) * root.coefficient, root.radicand);
  }
};

namespace detail {

inline void check_keyspace(const ModelSpec& spec, const Limits& limits) {
  check_packing(spec);
  long double keyspace = 1.0L;
  for (unsigned k = 0; k < spec.N; ++k) keyspace *= spec.basis_size();
  if (keyspace > static_cast<long double>(limits.max_tensor_entries))
    throw ResourceLimit("tensor key space " + spec.label() + " exceeds the cap of " +
                        std::to_string(limits.max_tensor_entries) + " entries");
}

inline TermList map_to_list(TermMap&& m) {
  TermList out;
  out.reserve(m.size());
  for (auto& [k, v] : m) out.emplace_back(k, std::move(v));
  return out;
}

// One exact accumulation pass: for each input term, expand via `emit` into a
// local map; chunks merge sequentially. Integer addition is associative and
// commutative, so the result is independent of the chunking.
template <class Emit>
TermMap accumulate_terms(const TermList& input, unsigned workers, const Limits& limits,
                         Emit emit) {
  workers = std::max(1u, workers);
  std::size_t n = input.size();
  if (workers == 1 || n < 1024) {
    TermMap out;
    out.reserve(n * 2);
    for (const auto& term : input) emit(term, out);
    if (out.size() > limits.max_tensor_entries)
      throw ResourceLimit("tensor construction exceeded the entry cap");
    return out;
  }
  std::vector<TermMap> partial(workers);
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = std::min(n, w * chunk), hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi, w] {
      TermMap& out = partial[w];
      out.reserve((hi - lo) * 2);
      for (std::size_t i = lo; i < hi; ++i) emit(input[i], out);
    });
  }
  for (auto& t : pool) t.join();
  TermMap out = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (auto& [k, v] : partial[w]) {
      auto [it, inserted] = out.try_emplace(k, std::move(v));
      if (!inserted) it->second += v;
    }
    partial[w].clear();
  }
  if (out.size() > limits.max_tensor_entries)
    throw ResourceLimit("tensor construction exceeded the entry cap");
  return out;
}

}  // namespace detail

// Expand Prod_{i<j} (x_i - x_j)^nu exactly in the monomial basis. Homogeneous
// of degree M; per-variable degree <= nu(N-1).
inline TermMap vandermonde_power_expand(const ModelSpec& spec, const Limits& limits = {},
                                        unsigned workers = 1) {
  spec.validate();
  detail::check_keyspace(spec, limits);
  // (x_i - x_j)^nu = Sum_t C(nu,t) (-1)^{nu-t} x_i^t x_j^{nu-t}
  std::vector<std::pair<unsigned, Integer>> factor;
  for (unsigned t = 0; t <= spec.nu; ++t) {
    Integer c = binomial(spec.nu, t);
    if ((spec.nu - t) % 2) c = -c;
    factor.emplace_back(t, c);
  }
  TermMap acc{{MultiIndex(0), Integer(1)}};
  for (unsigned i = 0; i < spec.N; ++i) {
    for (unsigned j = i + 1; j < spec.N; ++j) {
      TermList input = detail::map_to_list(std::move(acc));
      acc = detail::accumulate_terms(
          input, workers, limits, [&](const std::pair<MultiIndex, Integer>& term, TermMap& out) {
            for (const auto& [t, c] : factor) {
              MultiIndex key = term.first + (MultiIndex(t) << (8 * i)) +
                               (MultiIndex(spec.nu - t) << (8 * j));
              Integer v = term.second * c;
              auto [it, inserted] = out.try_emplace(key, std::move(v));
              if (!inserted) it->second += v;
            }
          });
      std::erase_if(acc, [](const auto& e) { return e.second == 0; });
    }
  }
  return acc;
}

// Exact normalization identity Sum_q a_q^2 = 1, checked in pure integer
// arithmetic: num(scale) * Sum_q B_q^2 Prod_k 2^{q_k} q_k! must equal
// den(scale). Catches any error in the expansion, the basis change, or the
// normalization constant.
inline void verify_normalization(const CoefficientTensor& tensor) {
  std::vector<Integer> weight(tensor.spec.basis_size());
  for (unsigned d = 0; d < weight.size(); ++d) weight[d] = pow2(d) * factorial(d);
  Integer sum = 0;
  Integer w;
  for (const auto& [key, b] : tensor.terms) {
    w = b * b;
    for (unsigned k = 0; k < tensor.spec.N; ++k) w *= weight[slot(key, k)];
    sum += w;
  }
  if (tensor.scale.get_num() * sum != tensor.scale.get_den())
    throw Error(ExitCode::failure,
                "normalization check failed for " + tensor.spec.label() +
                    ": sum of squared amplitudes differs from 1");
}

// Production construction route: expand the Jastrow power in monomials, then
// convert one variable at a time to the Hermite basis with the integer
// connection T(d,k) (the uniform 2^{-M} from x^d = 2^{-d} Sum T H is absorbed
// into `scale`, since the expansion is homogeneous of degree M).
inline CoefficientTensor expansion_coefficients(const ModelSpec& spec, const Limits& limits = {},
                                                unsigned workers = 1, bool verify = true) {
  TermMap acc = vandermonde_power_expand(spec, limits, workers);
  unsigned dmax = spec.basis_size() - 1;
  std::vector<std::vector<Integer>> connection(dmax + 1);
  for (unsigned d = 0; d <= dmax; ++d) {
    connection[d].resize(d + 1);
    for (unsigned k = d % 2; k <= d; k += 2) connection[d][k] = monomial_hermite_connection(d, k);
  }
  for (unsigned var = 0; var < spec.N; ++var) {
    TermList input = detail::map_to_list(std::move(acc));
    acc = detail::accumulate_terms(
        input, workers, limits, [&](const std::pair<MultiIndex, Integer>& term, TermMap& out) {
          unsigned d = slot(term.first, var);
          for (unsigned k = d % 2; k <= d; k += 2) {
            Integer v = term.second * connection[d][k];
            auto [it, inserted] = out.try_emplace(with_slot(term.first, var, k), std::move(v));
            if (!inserted) it->second += v;
          }
        });
  }
  CoefficientTensor tensor{spec, amplitude_scale(spec), detail::map_to_list(std::move(acc))};
  std::erase_if(tensor.terms, [](const auto& t) { return t.second == 0; });
  std::sort(tensor.terms.begin(), tensor.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (verify) verify_normalization(tensor);
  return tensor;
}

}  // namespace calogero
