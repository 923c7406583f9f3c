#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/model.hpp"

namespace calogero {

// Packed Hermite multi-index (q_1..q_N): slot k occupies bits [8k, 8k+8).
// Supports N <= 8 variables with degrees <= 255, which covers desk scale
// (per-variable degree is nu(N-1) <= 254 within the resource caps).
using MultiIndex = std::uint64_t;

constexpr unsigned max_variables = 8;

inline unsigned slot(MultiIndex m, unsigned k) { return (m >> (8 * k)) & 0xFFu; }

inline MultiIndex with_slot(MultiIndex m, unsigned k, unsigned v) {
  MultiIndex mask = MultiIndex(0xFF) << (8 * k);
  return (m & ~mask) | (MultiIndex(v) << (8 * k));
}

inline MultiIndex pack(const std::vector<unsigned>& q) {
  MultiIndex m = 0;
  for (std::size_t k = 0; k < q.size(); ++k) m |= MultiIndex(q[k] & 0xFFu) << (8 * k);
  return m;
}

inline std::vector<unsigned> unpack(MultiIndex m, unsigned n) {
  std::vector<unsigned> q(n);
  for (unsigned k = 0; k < n; ++k) q[k] = slot(m, k);
  return q;
}

inline unsigned degree_sum(MultiIndex m, unsigned n) {
  unsigned s = 0;
  for (unsigned k = 0; k < n; ++k) s += slot(m, k);
  return s;
}

inline void check_packing(const ModelSpec& spec) {
  if (spec.N > max_variables)
    throw ResourceLimit("multi-index packing supports at most 8 particles");
  if (spec.basis_size() > 256)
    throw ResourceLimit("multi-index packing supports per-variable degrees up to 255");
}

// 1-based flat index of a p-tuple: i = 1 + q_1 + D q_2 + ... + D^{p-1} q_p.
inline std::size_t flat_index(const std::vector<unsigned>& q, unsigned D) {
  std::size_t i = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] >= D) throw std::out_of_range("flat_index: index out of range");
    i += q[k] * stride;
    stride *= D;
  }
  return i + 1;
}

// 0-based flat index of the low p slots of a packed multi-index.
inline std::size_t flat_front(MultiIndex m, unsigned p, unsigned D) {
  std::size_t i = 0;
  std::size_t stride = 1;
  for (unsigned k = 0; k < p; ++k) {
    i += slot(m, k) * stride;
    stride *= D;
  }
  return i;
}

// The high N-p slots, repacked to start at slot 0.
inline MultiIndex trailing_part(MultiIndex m, unsigned p) { return m >> (8 * p); }

// Inverse of flat_front: repack a 0-based flat index into p slots.
inline MultiIndex from_flat(std::size_t flat, unsigned D, unsigned p) {
  MultiIndex m = 0;
  for (unsigned k = 0; k < p; ++k) {
    m |= MultiIndex(flat % D) << (8 * k);
    flat /= D;
  }
  return m;
}

}  // namespace calogero
