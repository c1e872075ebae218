#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "satcurve/rational.hpp"

namespace satcurve {

/// RAII wrapper for an MPFR float. Every value carries its own precision;
/// binary operations produce a result at the larger operand precision.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultBits = 256;

  explicit Real(mpfr_prec_t bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double d, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  Real(const Rat& q, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
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
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  /// Copy rounded (or widened) to the given precision.
  Real with_precision(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  template <class Op>
  static Real binary(const Real& a, const Real& b, Op op) {
    Real r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  template <class Op>
  static Real unary(const Real& a, Op op) {
    Real r(a.precision());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
  friend Real operator-(const Real& a) { return unary(a, mpfr_neg); }
  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
  friend Real abs(const Real& a) { return unary(a, mpfr_abs); }
  friend Real log(const Real& a) { return unary(a, mpfr_log); }
  friend Real exp(const Real& a) { return unary(a, mpfr_exp); }
  friend Real sin(const Real& a) { return unary(a, mpfr_sin); }
  friend Real cos(const Real& a) { return unary(a, mpfr_cos); }
  friend Real atan2(const Real& y, const Real& x) { return binary(y, x, mpfr_atan2); }
  friend Real hypot(const Real& a, const Real& b) { return binary(a, b, mpfr_hypot); }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e at the given precision.
  static Real pow2(long e, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  /// Round to the nearest integer.
  Int round_to_int() const {
    Int z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  /// Exact rational value of this binary float.
  Rat to_rat() const {
    if (is_zero()) return 0;
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat r(m);
    if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
  }

 private:
  mpfr_t v_;
};

/// Minimal complex arithmetic over `Real`.
struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t bits = Real::kDefaultBits) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(const Rat& r, mpfr_prec_t bits) : re(r, bits), im(bits) {}

  mpfr_prec_t precision() const { return re.precision(); }
  Complex with_precision(mpfr_prec_t bits) const { return {re.with_precision(bits), im.with_precision(bits)}; }

  static Complex polar(const Real& radius, const Real& angle) {
    return {radius * cos(angle), radius * sin(angle)};
  }
  /// exp(2*pi*i*turns).
  static Complex unit(const Rat& turns, mpfr_prec_t bits) {
    Real a = Real::pi(bits) * Real(Rat(2) * turns, bits);
    return {cos(a), sin(a)};
  }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  Complex conj() const { return {re, -im}; }
  Real norm() const { return hypot(re, im); }
  Real arg() const { return atan2(im, re); }

  Complex pow(unsigned long e) const {
    Complex out(Real(Rat(1), precision()), Real(precision())), b = *this;
    while (e) {
      if (e & 1ul) out = out * b;
      b = b * b;
      e >>= 1ul;
    }
    return out;
  }

  /// Principal n-th root.
  Complex root(unsigned long n) const {
    Real r = norm();
    if (r.is_zero()) return Complex(precision());
    Real rn = exp(log(r) / Real(Rat(static_cast<long>(n)), precision()));
    Real a = arg() / Real(Rat(static_cast<long>(n)), precision());
    return polar(rn, a);
  }
};

}  // namespace satcurve
