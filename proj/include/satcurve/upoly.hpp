#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "satcurve/rational.hpp"

namespace satcurve {

/// Dense univariate polynomial over an exact field `F`, coefficients stored
/// from the constant term upward with no trailing zeros. `F` must be
/// constructible from `int` and `Rat` and provide field arithmetic and `==`.
template <class F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static UPoly constant(const F& a) { return UPoly(std::vector<F>{a}); }
  static UPoly monomial(const F& a, std::size_t deg) {
    std::vector<F> v(deg + 1, F(0));
    v[deg] = a;
    return UPoly(std::move(v));
  }
  /// The polynomial X.
  static UPoly x() { return monomial(F(1), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }

  /// Coefficient of X^i (zero past the degree).
  F operator[](std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  const F& lc() const { return c_.back(); }

  /// Lowest exponent with a nonzero coefficient; -1 for the zero polynomial.
  int order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == F(0))) return static_cast<int>(i);
    return -1;
  }

  F eval(const F& at) const {
    F acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  /// Horner evaluation into another ring `R` (e.g. complex floats).
  template <class R, class Conv>
  R eval_as(const R& at, Conv&& conv) const {
    R acc = conv(F(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + conv(*it);
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * F(static_cast<int>(i));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    F inv = F(1) / lc();
    std::vector<F> d(c_);
    for (auto& a : d) a = a * inv;
    return UPoly(std::move(d));
  }

  UPoly scaled(const F& a) const {
    std::vector<F> d(c_);
    for (auto& v : d) v = v * a;
    return UPoly(std::move(d));
  }

  /// p(X) -> p(a*X).
  UPoly scale_variable(const F& a) const {
    std::vector<F> d(c_);
    F pw(1);
    for (auto& v : d) {
      v = v * pw;
      pw = pw * a;
    }
    return UPoly(std::move(d));
  }

  /// p(X) -> p(X + a).
  UPoly shift(const F& a) const {
    UPoly out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * UPoly{a, F(1)} + constant(*it);
    return out;
  }

  /// p(q(X)).
  UPoly compose(const UPoly& q) const {
    UPoly out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * q + constant(*it);
    return out;
  }

  UPoly pow(unsigned e) const {
    UPoly out = constant(F(1)), b = *this;
    while (e) {
      if (e & 1u) out = out * b;
      b = b * b;
      e >>= 1u;
    }
    return out;
  }

  /// Drops the monomials of degree >= n.
  UPoly truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return UPoly(std::vector<F>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a) {
    std::vector<F> r(a.c_);
    for (auto& v : r) v = F(0) - v;
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == F(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  /// Euclidean division; throws on division by zero.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<F> r(a.c_);
    std::vector<F> q(a.c_.size() - b.c_.size() + 1, F(0));
    F inv = F(1) / b.lc();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      F coef = r[static_cast<std::size_t>(k) + b.c_.size() - 1] * inv;
      q[static_cast<std::size_t>(k)] = coef;
      if (coef == F(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] = r[static_cast<std::size_t>(k) + j] - coef * b.c_[j];
    }
    r.resize(b.c_.size() - 1, F(0));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  bool divides(const UPoly& a) const { return (a % *this).is_zero(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
  }

  std::vector<F> c_;
};

/// Monic gcd (zero when both inputs are zero).
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<UPoly<F>, UPoly<F>, UPoly<F>> xgcd(const UPoly<F>& a, const UPoly<F>& b) {
  using P = UPoly<F>;
  P r0 = a, r1 = b, s0 = P::constant(F(1)), s1, t0, t1 = P::constant(F(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    P s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = F(1) / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Product of the distinct irreducible factors, made monic.
template <class F>
UPoly<F> squarefree_part(const UPoly<F>& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : UPoly<F>::constant(F(1));
  return (p / gcd(p, p.derivative())).monic();
}

/// Yun's algorithm: returns monic squarefree a_1, a_2, ... with p = lc * prod a_i^i.
template <class F>
std::vector<UPoly<F>> squarefree_decomposition(const UPoly<F>& p) {
  std::vector<UPoly<F>> out;
  if (p.degree() <= 0) return out;
  auto a = p.monic();
  auto da = a.derivative();
  auto g = gcd(a, da);
  auto b = a / g;
  auto c = da / g;
  auto d = c - b.derivative();
  while (b.degree() > 0) {
    auto h = gcd(b, d);
    out.push_back(h.monic());
    b = b / h;
    c = d / h;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Resultant of two polynomials over a field via the Euclidean remainder sequence.
template <class F>
F resultant(UPoly<F> a, UPoly<F> b) {
  if (a.is_zero() || b.is_zero()) return F(0);
  F res(1);
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      F lb = b.lc(), pw(1);
      for (int i = 0; i < da; ++i) pw = pw * lb;
      return res * pw;
    }
    if (da < db) {
      if ((da % 2 == 1) && (db % 2 == 1)) res = F(0) - res;
      std::swap(a, b);
      continue;
    }
    auto r = a % b;
    if (r.is_zero()) return F(0);
    // res(a,b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
    int dr = r.degree();
    F lb = b.lc(), pw(1);
    for (int i = 0; i < da - dr; ++i) pw = pw * lb;
    res = res * pw;
    if ((da * db) % 2 != 0) res = F(0) - res;
    a = std::move(b);
    b = std::move(r);
  }
}

using QPoly = UPoly<Rat>;

/// Multiplies by the lcm of denominators and divides by the content, giving a
/// primitive integer polynomial with positive leading coefficient.
inline QPoly primitive_integer(const QPoly& p) {
  if (p.is_zero()) return p;
  Int den = 1, g = 0;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Rat> v;
  for (const auto& c : p.coeffs()) {
    Rat s = c * Rat(den);
    v.push_back(s);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  if (p.lc() < 0) g = -g;
  for (auto& c : v) c /= Rat(g);
  return QPoly(std::move(v));
}

inline std::string to_string(const QPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool unit = (a == 1);
    if (!unit || i == 0) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace satcurve
