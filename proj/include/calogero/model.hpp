#pragma once

#include <string>

#include "calogero/errors.hpp"
#include "calogero/rational.hpp"

namespace calogero {

// N particles in a harmonic trap (omega = 1) with inverse-square pair
// interaction of strength nu(nu-1); the ground state is C * Jastrow^nu *
// Gaussian. Even nu is bosonic (symmetric), odd nu fermionic (antisymmetric).
struct ModelSpec {
  unsigned N = 2;
  unsigned nu = 1;

  void validate() const {
    if (N < 2) throw Error(ExitCode::failure, "ModelSpec: N must be >= 2");
    if (nu < 1) throw Error(ExitCode::failure, "ModelSpec: nu must be >= 1");
  }

  bool fermionic() const { return nu % 2 == 1; }

  // Single-particle basis size D: the Jastrow factor has per-variable degree
  // nu(N-1), so Hermite indices run 0..D-1.
  unsigned basis_size() const { return nu * (N - 1) + 1; }

  // Total degree M of the Jastrow factor, nu N(N-1)/2.
  unsigned jastrow_degree() const { return nu * N * (N - 1) / 2; }

  std::string label() const { return "N=" + std::to_string(N) + " nu=" + std::to_string(nu); }

  bool operator==(const ModelSpec&) const = default;
};

// E = ((N-1)nu + 1) N / 2 in oscillator units.
inline Rational ground_state_energy(const ModelSpec& spec) {
  spec.validate();
  return rational(Integer((spec.N - 1) * spec.nu + 1) * spec.N, Integer(2));
}

// C^2 pi^{N/2} = 2^M Prod_{j=1..N} nu!/(j nu)!. The pi power is kept
// multiplied in: it cancels exactly against the Hermite-function normalizers
// when amplitudes are assembled, so no stored value ever carries pi.
inline Rational normalization_constant_squared(const ModelSpec& spec) {
  spec.validate();
  Integer num = pow2(spec.jastrow_degree());
  Integer den = 1;
  Integer nu_fact = factorial(spec.nu);
  for (unsigned j = 1; j <= spec.N; ++j) {
    num *= nu_fact;
    den *= factorial(static_cast<unsigned long>(j) * spec.nu);
  }
  return rational(num, den);
}

// Global rational part of the squared amplitudes: every coefficient is
// B_q * sqrt(R(q)) with R(q) = amplitude_scale * Prod_k 2^{q_k} q_k!.
inline Rational amplitude_scale(const ModelSpec& spec) {
  Integer four_m = pow2(2 * spec.jastrow_degree());
  return normalization_constant_squared(spec) / Rational(four_m);
}

}  // namespace calogero
