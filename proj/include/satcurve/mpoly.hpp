#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "satcurve/rational.hpp"
#include "satcurve/upoly.hpp"

namespace satcurve {

/// Sparse polynomial over Q in N variables. Terms map exponent vectors to
/// nonzero coefficients; the zero polynomial has no terms.
template <std::size_t N>
class MPoly {
 public:
  using Exponent = std::array<unsigned, N>;
  using Terms = std::map<Exponent, Rat>;

  MPoly() = default;
  explicit MPoly(Terms t) : terms_(std::move(t)) { prune(); }
  MPoly(const Rat& c) {  // NOLINT(google-explicit-constructor): constants promote naturally
    if (c != 0) terms_[Exponent{}] = c;
  }
  MPoly(long c) : MPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly variable(std::size_t i) {
    Exponent e{};
    e[i] = 1;
    return monomial(e, Rat(1));
  }
  static MPoly monomial(const Exponent& e, const Rat& c) {
    MPoly p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Rat coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{}); }
  Rat constant_term() const { return coeff(Exponent{}); }

  /// Degree in variable i (-1 for zero).
  int degree(std::size_t i) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(sum(e)));
    return d;
  }

  /// Lowest total degree of a term (-1 for zero): the multiplicity at the origin.
  int order() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = static_cast<int>(sum(e));
      if (d < 0 || s < d) d = s;
    }
    return d;
  }

  /// Lowest-degree homogeneous form.
  MPoly initial_form() const {
    int o = order();
    Terms t;
    for (const auto& [e, c] : terms_)
      if (static_cast<int>(sum(e)) == o) t[e] = c;
    return MPoly(std::move(t));
  }

  MPoly derivative(std::size_t i) const {
    Terms t;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      f[i] -= 1;
      t[f] += c * Rat(e[i]);
    }
    return MPoly(std::move(t));
  }

  /// Replaces variable i by the constant `v`.
  MPoly specialize(std::size_t i, const Rat& v) const {
    Terms t;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[i] = 0;
      t[f] += c * pow_rat(v, e[i]);
    }
    return MPoly(std::move(t));
  }

  /// Full evaluation at a rational point.
  Rat eval(const std::array<Rat, N>& at) const {
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
      Rat m = c;
      for (std::size_t i = 0; i < N; ++i) m *= pow_rat(at[i], e[i]);
      acc += m;
    }
    return acc;
  }

  /// Substitutes every variable by a polynomial (same arity).
  MPoly substitute(const std::array<MPoly, N>& images) const {
    MPoly out;
    for (const auto& [e, c] : terms_) {
      MPoly m(c);
      for (std::size_t i = 0; i < N; ++i) m = m * images[i].pow(e[i]);
      out = out + m;
    }
    return out;
  }

  MPoly pow(unsigned k) const {
    MPoly out(Rat(1)), b = *this;
    while (k) {
      if (k & 1u) out = out * b;
      b = b * b;
      k >>= 1u;
    }
    return out;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    Terms t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] += c;
    return MPoly(std::move(t));
  }
  friend MPoly operator-(const MPoly& a) {
    Terms t = a.terms_;
    for (auto& [e, c] : t) c = -c;
    return MPoly(std::move(t));
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    Terms t;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        t[e] += ca * cb;
      }
    return MPoly(std::move(t));
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const Rat& a) const {
    if (a == 0) return {};
    Terms t = terms_;
    for (auto& [e, c] : t) c *= a;
    return MPoly(std::move(t));
  }

  /// Canonical text in the parser grammar: graded by total degree, highest first.
  std::string to_string(const std::array<std::string, N>& names) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponent, Rat>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      auto sa = sum(a.first), sb = sum(b.first);
      if (sa != sb) return sa > sb;
      return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ordered) {
      Rat a = abs(c);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      bool has_var = sum(e) > 0;
      bool wrote = false;
      if (a != 1 || !has_var) {
        os << a.get_str();
        wrote = true;
      }
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << names[i];
        if (e[i] > 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

  static unsigned sum(const Exponent& e) {
    unsigned s = 0;
    for (auto v : e) s += v;
    return s;
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0) it = terms_.erase(it);
      else ++it;
    }
  }

  Terms terms_;
};

/// f(x, y): variable 0 is x, variable 1 is y.
using BiPoly = MPoly<2>;
/// F(x, y, t) for one-parameter families.
using TriPoly = MPoly<3>;

inline const std::array<std::string, 2>& xy_names() {
  static const std::array<std::string, 2> n{"x", "y"};
  return n;
}
inline const std::array<std::string, 3>& xyt_names() {
  static const std::array<std::string, 3> n{"x", "y", "t"};
  return n;
}

inline BiPoly X() { return BiPoly::variable(0); }
inline BiPoly Y() { return BiPoly::variable(1); }

}  // namespace satcurve
