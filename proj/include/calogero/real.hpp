#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/rational.hpp"

namespace calogero {

// Value-semantic arbitrary-precision binary float. Precision is explicit per
// value; binary operations round once, to the wider operand's precision.
// All rounding is to nearest.
class Real {
public:
  static mpfr_prec_t bits_for_digits(unsigned digits) {
    // log2(10) per digit plus guard bits for intermediate rounding.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 64;
  }

  explicit Real(mpfr_prec_t bits = 192) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  static Real of(long n, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }

  static Real of(unsigned long n, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_ui(r.v_, n, MPFR_RNDN);
    return r;
  }

  static Real of(double x, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

  static Real of(const Integer& z, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static Real of(const Rational& q, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  // Parse a decimal literal exactly as written, rounded once to `bits`.
  static Real parse(const std::string& s, mpfr_prec_t bits) {
    Real r(bits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw Error(ExitCode::failure, "Real::parse: bad literal '" + s + "'");
    return r;
  }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific decimal rendering with `digits` significant digits.
  std::string to_string(unsigned digits) const {
    if (digits == 0) digits = 1;
    std::vector<char> buf(digits + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits) - 1, v_);
    return std::string(buf.data());
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

  Real& operator+=(const Real& o) { return inplace(o, mpfr_add); }
  Real& operator-=(const Real& o) { return inplace(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return inplace(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return inplace(o, mpfr_div); }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
  friend Real exp(const Real& a) { return unary(a, mpfr_exp); }
  friend Real log(const Real& a) { return unary(a, mpfr_log); }
  friend Real log2(const Real& a) { return unary(a, mpfr_log2); }
  friend Real abs(const Real& a) { return unary(a, mpfr_abs); }

  friend Real pow_si(const Real& a, long e) {
    Real r(a.precision());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

private:
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static Real unary(const Real& a, UnaryFn fn) {
    Real r(a.precision());
    fn(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  static Real binary(const Real& a, const Real& b, BinaryFn fn) {
    Real r(std::max(a.precision(), b.precision()));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  Real& inplace(const Real& o, BinaryFn fn) {
    if (mpfr_get_prec(v_) < mpfr_get_prec(o.v_)) {
      Real tmp(mpfr_get_prec(o.v_));
      fn(tmp.v_, v_, o.v_, MPFR_RNDN);
      mpfr_swap(v_, tmp.v_);
    } else {
      fn(v_, v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  mpfr_t v_;
};

// Minimal trait set so quadrature and eigenfunction code can run both in
// double (fast oracle path) and Real (extended-precision path). The `like`
// argument carries precision for Real and is ignored for double.
template <class T>
struct Field;

template <>
struct Field<double> {
  static double from_ui(unsigned long n, const double&) { return static_cast<double>(n); }
  static double from_integer(const Integer& z, const double&) { return z.get_d(); }
  static double from_rational(const Rational& q, const double&) { return q.get_d(); }
  static double pi(const double&) { return 3.14159265358979323846; }
  static double sqrt_(const double& x) { return std::sqrt(x); }
  static double exp_(const double& x) { return std::exp(x); }
  static double abs_(const double& x) { return std::fabs(x); }
  static double to_double(const double& x) { return x; }
};

template <>
struct Field<Real> {
  static Real from_ui(unsigned long n, const Real& like) { return Real::of(n, like.precision()); }
  static Real from_integer(const Integer& z, const Real& like) {
    return Real::of(z, like.precision());
  }
  static Real from_rational(const Rational& q, const Real& like) {
    return Real::of(q, like.precision());
  }
  static Real pi(const Real& like) { return Real::pi(like.precision()); }
  static Real sqrt_(const Real& x) { return sqrt(x); }
  static Real exp_(const Real& x) { return exp(x); }
  static Real abs_(const Real& x) { return abs(x); }
  static double to_double(const Real& x) { return x.to_double(); }
};

}  // namespace calogero
