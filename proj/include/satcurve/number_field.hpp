#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "satcurve/bipoly_ops.hpp"
#include "satcurve/error.hpp"
#include "satcurve/factor.hpp"
#include "satcurve/real.hpp"
#include "satcurve/roots.hpp"
#include "satcurve/upoly.hpp"

namespace satcurve {

struct NumberField;
/// Null means the rationals.
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q(theta) for a chosen complex root theta of an irreducible monic
/// polynomial. A field may record the image of its parent's generator, which
/// makes the chain of extensions built during one expansion explicit.
struct NumberField {
  QPoly min_poly;
  Complex theta;  // kept at kFieldBits of precision
  FieldPtr parent;
  std::vector<Rat> parent_generator;  // parent's theta in this field's basis

  static constexpr mpfr_prec_t kFieldBits = 640;

  int degree() const { return min_poly.degree(); }
  int depth() const { return parent ? parent->depth() + 1 : 1; }
};

/// Element of a number field, stored as a polynomial in the generator of
/// degree below the field degree. Elements with a null field are rational.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(int v) : FieldElem(Rat(v)) {}  // NOLINT(google-explicit-constructor)
  FieldElem(const Rat& v) {                // NOLINT(google-explicit-constructor)
    if (v != 0) c_.push_back(v);
  }
  FieldElem(FieldPtr K, std::vector<Rat> c) : K_(std::move(K)), c_(std::move(c)) { reduce(); }

  static FieldElem generator(const FieldPtr& K) { return FieldElem(K, {Rat(0), Rat(1)}); }

  const FieldPtr& field() const { return K_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rat rational() const { return c_.empty() ? Rat(0) : c_[0]; }

  /// Image in an extension further down the same chain.
  FieldElem lift(const FieldPtr& L) const {
    if (is_rational() || K_ == L) return FieldElem(L, c_);
    if (!L) throw Error(ErrorKind::InvalidArgument, "cannot lift an irrational element to Q");
    FieldElem at_parent = lift(L->parent);
    FieldElem g(L, L->parent_generator);
    FieldElem acc(L, {});
    const auto& pc = at_parent.c_;
    for (auto it = pc.rbegin(); it != pc.rend(); ++it) acc = acc * g + FieldElem(L, {*it});
    return acc;
  }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    auto [x, y] = common(a, b);
    std::vector<Rat> r(std::max(x.c_.size(), y.c_.size()), Rat(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) r[i] += x.c_[i];
    for (std::size_t i = 0; i < y.c_.size(); ++i) r[i] += y.c_[i];
    return FieldElem(x.K_ ? x.K_ : y.K_, std::move(r));
  }
  friend FieldElem operator-(const FieldElem& a) {
    std::vector<Rat> r(a.c_);
    for (auto& v : r) v = -v;
    return FieldElem(a.K_, std::move(r));
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    auto [x, y] = common(a, b);
    std::vector<Rat> r(x.c_.size() + y.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
    return FieldElem(x.K_, std::move(r));
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    if (a.is_rational() || b.is_rational()) return false;
    auto [x, y] = common(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem scaled(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= s;
    return FieldElem(K_, std::move(r));
  }

  FieldElem inverse() const {
    if (is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero in number field");
    if (is_rational()) return FieldElem(K_, {Rat(1) / c_[0]});
    auto [g, s, t] = xgcd(QPoly(c_), K_->min_poly);
    (void)t;
    return FieldElem(K_, s.coeffs());
  }

  FieldElem pow(unsigned long e) const {
    FieldElem r(K_, {Rat(1)}), b = *this;
    while (e) {
      if (e & 1ul) r = r * b;
      b = b * b;
      e >>= 1ul;
    }
    return r;
  }

  /// Numeric value under the field's embedding.
  Complex numeric(mpfr_prec_t bits) const {
    Complex acc(bits);
    if (c_.empty()) return acc;
    if (!K_ || c_.size() == 1) return Complex(c_[0], bits);
    Complex th = K_->theta.with_precision(bits);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * th + Complex(*it, bits);
    return acc;
  }

  /// Minimal polynomial over Q, found as the first linear dependency among
  /// the powers of the element.
  QPoly minimal_polynomial() const {
    if (is_rational()) return QPoly{-rational(), Rat(1)};
    std::size_t d = static_cast<std::size_t>(K_->degree());
    // Row-reduce the power vectors; each basis row remembers its combination.
    std::vector<std::vector<Rat>> rows, combos;
    std::vector<std::size_t> pivots;
    FieldElem p(K_, {Rat(1)});
    for (std::size_t k = 0; k <= d; ++k) {
      std::vector<Rat> v(d, Rat(0));
      for (std::size_t i = 0; i < p.c_.size(); ++i) v[i] = p.c_[i];
      std::vector<Rat> comb(d + 1, Rat(0));
      comb[k] = 1;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        Rat f = v[pivots[r]];
        if (f == 0) continue;
        for (std::size_t i = 0; i < d; ++i) v[i] -= f * rows[r][i];
        for (std::size_t i = 0; i <= d; ++i) comb[i] -= f * combos[r][i];
      }
      std::size_t piv = d;
      for (std::size_t i = 0; i < d; ++i)
        if (v[i] != 0) {
          piv = i;
          break;
        }
      if (piv == d) {
        comb.resize(k + 1);
        return QPoly(std::move(comb)).monic();
      }
      Rat inv = Rat(1) / v[piv];
      for (auto& a : v) a *= inv;
      for (auto& a : comb) a *= inv;
      rows.push_back(std::move(v));
      combos.push_back(std::move(comb));
      pivots.push_back(piv);
      p = p * *this;
    }
    throw Error(ErrorKind::InvalidArgument, "minimal polynomial search failed");
  }

  /// True when `to` is `from` or an extension built on top of it.
  static bool descends(const FieldPtr& from, const FieldPtr& to) {
    for (const NumberField* k = to.get(); k; k = k->parent.get())
      if (k == from.get()) return true;
    return !from;
  }

  std::string to_string() const {
    if (is_rational()) return rational().get_str();
    return satcurve::to_string(QPoly(c_), "theta");
  }

 private:
  void reduce() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (K_ && static_cast<int>(c_.size()) > K_->degree()) c_ = (QPoly(c_) % K_->min_poly).coeffs();
  }

  static std::pair<FieldElem, FieldElem> common(const FieldElem& a, const FieldElem& b) {
    if (a.K_ == b.K_) return {a, b};
    if (a.is_rational()) return {FieldElem(b.K_, a.c_), b};
    if (b.is_rational()) return {a, FieldElem(a.K_, b.c_)};
    if (descends(a.K_, b.K_)) return {a.lift(b.K_), b};
    if (descends(b.K_, a.K_)) return {a, b.lift(a.K_)};
    throw Error(ErrorKind::InvalidArgument, "elements of unrelated number fields");
  }

  FieldPtr K_;
  std::vector<Rat> c_;
};

using KPoly = UPoly<FieldElem>;

/// The algebraic number represented by a field element: its minimal
/// polynomial over Q and a rational box isolating it among the roots.
struct AlgNum {
  QPoly min_poly;
  Rat re_lo, re_hi, im_lo, im_hi;

  friend bool operator==(const AlgNum& a, const AlgNum& b) {
    return a.min_poly == b.min_poly && a.re_lo == b.re_lo && a.re_hi == b.re_hi && a.im_lo == b.im_lo && a.im_hi == b.im_hi;
  }
};

namespace detail {

inline Rat rat_floor_bits(const Real& v, long bits) {
  // Round toward -inf on a 2^-bits grid.
  Real scaled = v * Real::pow2(bits, v.precision());
  Int z;
  mpfr_get_z(z.get_mpz_t(), scaled.get(), MPFR_RNDD);
  Rat r(z);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

/// Index of the isolated root whose disc contains `z`, or -1.
inline int locate_root(const std::vector<IsolatedRoot>& roots, const Complex& z) {
  int best = -1;
  Real bestd(z.precision());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Real d = (roots[i].center - z).norm();
    if (best < 0 || d < bestd) {
      best = static_cast<int>(i);
      bestd = d;
    }
  }
  if (best < 0) return -1;
  // Must be strictly closer to its root than half the distance to any other.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (static_cast<int>(i) == best) continue;
    Real sep = (roots[i].center - roots[static_cast<std::size_t>(best)].center).norm();
    if (!(bestd * Real(Rat(4), z.precision()) < sep)) return -1;
  }
  return best;
}

}  // namespace detail

/// Canonical AlgNum of an element; deterministic for a given value.
inline AlgNum to_algnum(const FieldElem& a) {
  AlgNum out;
  out.min_poly = a.minimal_polynomial();
  auto roots = isolate_roots(out.min_poly, 256);
  Complex z = a.numeric(256);
  int idx = detail::locate_root(roots, z);
  if (idx < 0) throw Error(ErrorKind::PrecisionOverflow, "could not locate algebraic number among roots");
  const auto& r = roots[static_cast<std::size_t>(idx)];
  // Box on a 2^-64 grid around the disc; wide enough to hold the root,
  // narrow enough to exclude the others at desk scale.
  Real pad = r.radius + Real::pow2(-64, 256);
  out.re_lo = detail::rat_floor_bits(r.center.re - pad, 64);
  out.re_hi = detail::rat_floor_bits(r.center.re + pad, 64) + Rat(Int(1), Int(1) << 64);
  out.im_lo = detail::rat_floor_bits(r.center.im - pad, 64);
  out.im_hi = detail::rat_floor_bits(r.center.im + pad, 64) + Rat(Int(1), Int(1) << 64);
  return out;
}

/// Exact test of a*exp(2 pi i ta) == b*exp(2 pi i tb) for field elements a, b
/// (possibly from unrelated fields) and rational turns ta, tb.
inline bool phased_equal(const FieldElem& a, const Rat& ta, const FieldElem& b, const Rat& tb) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  constexpr mpfr_prec_t bits = 256;
  Complex va = a.numeric(bits) * Complex::unit(ta, bits);
  Complex vb = b.numeric(bits) * Complex::unit(tb, bits);
  Real scale = va.norm() + vb.norm();
  // Clearly different numerically: no exact work needed.
  if ((va - vb).norm() > scale * Real::pow2(-100, bits)) return false;
  Rat t = tb - ta;
  t -= Rat(floor_rat(t));
  unsigned long N = t.get_den().get_ui();
  // a = b * w with w an N-th root of unity requires a^N == b^N.
  FieldElem an = a.pow(N), bn = b.pow(N);
  bool same_power;
  if (an.is_rational() || bn.is_rational() || FieldElem::descends(an.field(), bn.field()) ||
      FieldElem::descends(bn.field(), an.field()))
    same_power = (an == bn);
  else same_power = to_algnum(an) == to_algnum(bn);
  if (!same_power) return false;
  // The ratio is some N-th root of unity; identify it numerically (roots of
  // unity of order N are separated by 2 sin(pi/N), far above the error).
  Complex r = a.numeric(bits) / b.numeric(bits);
  Real turns = r.arg() / (Real::pi(bits) * Real(Rat(2), bits));
  Real k = turns * Real(Rat(static_cast<long>(N)), bits);
  Int ki = k.round_to_int();
  Rat w = make_rat(ki, Int(static_cast<long>(N)));
  w -= Rat(floor_rat(w));
  return w == t;
}

// ------------------------------------------------ factoring over a field ---

namespace detail {

/// p(Z) with coefficients in K as a BiPoly in (Z, z) where z stands for the
/// generator of K.
inline BiPoly to_bipoly(const KPoly& p) {
  BiPoly::Terms t;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& c = p.coeffs()[k].coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) t[{static_cast<unsigned>(k), static_cast<unsigned>(i)}] = c[i];
  }
  return BiPoly(std::move(t));
}

inline BiPoly min_poly_in_z(const QPoly& m) {
  BiPoly::Terms t;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.coeffs()[i] != 0) t[{0u, static_cast<unsigned>(i)}] = m.coeffs()[i];
  return BiPoly(std::move(t));
}

inline KPoly to_kpoly(const QPoly& p, const FieldPtr& K) {
  std::vector<FieldElem> c;
  for (const auto& a : p.coeffs()) c.emplace_back(K, std::vector<Rat>{a});
  return KPoly(std::move(c));
}

/// p(Z + a).
inline KPoly shift(const KPoly& p, const FieldElem& a) { return p.shift(a); }

inline std::vector<Complex> numeric_coeffs(const KPoly& p, mpfr_prec_t bits) {
  std::vector<Complex> c;
  for (const auto& a : p.coeffs()) c.push_back(a.numeric(bits));
  return c;
}

inline long shear_value(int k) { return (k % 2 == 1) ? (k + 1) / 2 : -(k / 2); }

}  // namespace detail

/// Result of factoring a squarefree polynomial over K by norms: the
/// K-irreducible factors, and the shift s such that the norm of p(Z - s*theta)
/// is squarefree (needed to build primitive elements later).
struct FieldFactorization {
  std::vector<KPoly> factors;  // monic
  std::vector<QPoly> norms;    // norm of factors[i](Z - s*theta), irreducible over Q
  long shift = 0;
};

inline FieldFactorization factor_over_field(const KPoly& p, const FieldPtr& K) {
  FieldFactorization out;
  if (p.degree() <= 0) return out;
  if (!K) {
    QPoly q;
    {
      std::vector<Rat> c;
      for (const auto& a : p.coeffs()) c.push_back(a.rational());
      q = QPoly(std::move(c));
    }
    for (const auto& f : factor_over_q(q)) {
      out.factors.push_back(detail::to_kpoly(f.factor, K));
      out.norms.push_back(f.factor);
    }
    return out;
  }
  FieldElem theta = FieldElem::generator(K);
  BiPoly mz = detail::min_poly_in_z(K->min_poly);
  for (int k = 0; k < 64; ++k) {
    long s = detail::shear_value(k);
    KPoly b = p.shift(theta.scaled(Rat(-s)));
    QPoly norm = resultant(mz, detail::to_bipoly(b), 1);
    if (norm.degree() != p.degree() * K->degree()) continue;
    if (gcd(norm, norm.derivative()).degree() > 0) continue;
    out.shift = s;
    for (const auto& g : factor_over_q(norm)) {
      KPoly gk = gcd(b, detail::to_kpoly(g.factor, K));
      if (gk.degree() <= 0) continue;
      out.factors.push_back(gk.shift(theta.scaled(Rat(s))).monic());
      out.norms.push_back(g.factor);
    }
    return out;
  }
  throw Error(ErrorKind::PrecisionOverflow, "no squarefree norm found");
}

/// A root of a K-irreducible factor, as an element of a field containing K.
struct AdjoinedRoot {
  FieldPtr field;
  FieldElem value;
};

/// Adjoins the root of `factors[i]` closest to `approx` to K, returning the
/// extension (or K itself for a linear factor) and the root in it.
inline AdjoinedRoot adjoin_root(const FieldFactorization& fz, std::size_t i, const FieldPtr& K, const Complex& approx) {
  const KPoly& g = fz.factors[i];
  if (g.degree() == 1) return {K, -g.coeffs()[0] / g.coeffs()[1]};
  constexpr mpfr_prec_t bits = NumberField::kFieldBits;
  auto L = std::make_shared<NumberField>();
  L->min_poly = fz.norms[i].monic();
  if (!K) {
    auto roots = isolate_roots(L->min_poly, bits);
    int idx = detail::locate_root(roots, approx.with_precision(bits));
    if (idx < 0) throw Error(ErrorKind::PrecisionOverflow, "root not isolated");
    L->theta = refine_root(detail::to_complex(L->min_poly, bits), roots[static_cast<std::size_t>(idx)].center, bits);
    FieldPtr Lp = L;
    return {Lp, FieldElem::generator(Lp)};
  }
  // gamma = u + s*theta is primitive for K(u).
  Complex gamma = approx.with_precision(bits) + K->theta.with_precision(bits) * Real(Rat(fz.shift), bits);
  auto roots = isolate_roots(L->min_poly, bits);
  int idx = detail::locate_root(roots, gamma);
  if (idx < 0) throw Error(ErrorKind::PrecisionOverflow, "primitive element not isolated");
  L->theta = refine_root(detail::to_complex(L->min_poly, bits), roots[static_cast<std::size_t>(idx)].center, bits);
  L->parent = K;
  FieldPtr Lp = L;
  // theta_K is the common root of M_K(z) and g(gamma - s z) over L.
  FieldElem gam = FieldElem::generator(Lp);
  KPoly lhs;
  {
    std::vector<FieldElem> c;
    for (const auto& a : K->min_poly.coeffs()) c.emplace_back(Lp, std::vector<Rat>{a});
    lhs = KPoly(std::move(c));
  }
  // g(gamma - s z): coefficients of g are polynomials in theta_K = z.
  KPoly z = KPoly{FieldElem(Lp, {}), FieldElem(Lp, {Rat(1)})};
  KPoly arg = KPoly::constant(gam) - z.scaled(FieldElem(Rat(fz.shift)));
  KPoly rhs;
  for (std::size_t k = g.size(); k-- > 0;) {
    const auto& gc = g.coeffs()[k].coeffs();  // in theta_K
    KPoly coef;
    for (std::size_t j = gc.size(); j-- > 0;) coef = coef * z + KPoly::constant(FieldElem(Lp, {gc[j]}));
    rhs = rhs * arg + coef;
  }
  KPoly lin = gcd(lhs, rhs);
  if (lin.degree() != 1) throw Error(ErrorKind::PrecisionOverflow, "primitive element construction failed");
  FieldElem th = -lin.coeffs()[0];
  L->parent_generator = th.coeffs();
  FieldElem u = gam - th.scaled(Rat(fz.shift));
  return {Lp, u};
}

}  // namespace satcurve
