#pragma once

#include <vector>

#include "satcurve/mpoly.hpp"
#include "satcurve/upoly.hpp"

namespace satcurve {

/// Two-variable algorithms (gcd, exact division, squarefree part, resultants)
/// on the recursive view Q[u][v], where v is the chosen main variable and u
/// the other one.
namespace bivariate {

using Rec = std::vector<QPoly>;

inline Rec to_rec(const BiPoly& f, std::size_t main) {
  std::size_t other = 1 - main;
  int d = f.degree(main);
  if (d < 0) return {};
  std::vector<std::vector<Rat>> raw(static_cast<std::size_t>(d) + 1);
  for (const auto& [e, c] : f.terms()) {
    auto& slot = raw[e[main]];
    if (slot.size() <= e[other]) slot.resize(e[other] + 1, Rat(0));
    slot[e[other]] = c;
  }
  Rec out;
  out.reserve(raw.size());
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

inline BiPoly from_rec(const Rec& r, std::size_t main) {
  std::size_t other = 1 - main;
  BiPoly::Terms t;
  for (std::size_t j = 0; j < r.size(); ++j)
    for (std::size_t i = 0; i < r[j].size(); ++i) {
      const Rat& c = r[j].coeffs()[i];
      if (c == 0) continue;
      BiPoly::Exponent e{};
      e[main] = static_cast<unsigned>(j);
      e[other] = static_cast<unsigned>(i);
      t[e] = c;
    }
  return BiPoly(std::move(t));
}

inline void trim(Rec& r) {
  while (!r.empty() && r.back().is_zero()) r.pop_back();
}

inline int deg(const Rec& r) { return static_cast<int>(r.size()) - 1; }

inline QPoly content(const Rec& r) {
  QPoly g;
  for (const auto& c : r) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

inline Rec divide_coeffs(const Rec& r, const QPoly& d) {
  Rec out;
  out.reserve(r.size());
  for (const auto& c : r) {
    auto [q, rem] = divmod(c, d);
    if (!rem.is_zero()) throw Error(ErrorKind::InvalidArgument, "inexact coefficient division");
    out.push_back(std::move(q));
  }
  return out;
}

inline Rec primitive_part(const Rec& r) {
  if (r.empty()) return r;
  return divide_coeffs(r, content(r));
}

/// Pseudo-remainder of a by b in the main variable.
inline Rec prem(Rec a, const Rec& b) {
  int db = deg(b);
  const QPoly& lb = b.back();
  while (deg(a) >= db && !a.empty()) {
    int da = deg(a);
    QPoly la = a.back();
    for (auto& c : a) c = c * lb;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(da - db + j)] -= la * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  return a;
}

/// Normalizes so that the leading coefficient is monic in the other variable.
inline Rec normalize(Rec r) {
  trim(r);
  if (r.empty()) return r;
  Rat inv = Rat(1) / r.back().lc();
  for (auto& c : r) c = c.scaled(inv);
  return r;
}

inline Rec gcd_rec(Rec a, Rec b) {
  trim(a);
  trim(b);
  if (a.empty()) return normalize(b);
  if (b.empty()) return normalize(a);
  QPoly gc = gcd(content(a), content(b));
  a = primitive_part(a);
  b = primitive_part(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    if (deg(b) == 0) {
      a = Rec{QPoly::constant(Rat(1))};
      break;
    }
    Rec r = prem(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive_part(r);
  }
  for (auto& c : a) c = c * gc;
  return normalize(a);
}

/// Exact quotient a / b; throws if b does not divide a.
inline Rec exact_div(Rec a, const Rec& b) {
  trim(a);
  if (b.empty()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  int db = deg(b);
  if (a.empty()) return {};
  if (deg(a) < db) throw Error(ErrorKind::InvalidArgument, "inexact bivariate division");
  Rec q(static_cast<std::size_t>(deg(a) - db + 1));
  while (!a.empty() && deg(a) >= db) {
    int k = deg(a) - db;
    auto [c, rem] = divmod(a.back(), b.back());
    if (!rem.is_zero()) throw Error(ErrorKind::InvalidArgument, "inexact bivariate division");
    q[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(k + j)] -= c * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  if (!a.empty()) throw Error(ErrorKind::InvalidArgument, "inexact bivariate division");
  return q;
}

inline Rec derivative_main(const Rec& r) {
  Rec d;
  for (std::size_t j = 1; j < r.size(); ++j) d.push_back(r[j].scaled(Rat(static_cast<long>(j))));
  trim(d);
  return d;
}

}  // namespace bivariate

/// Monic-normalized gcd of two bivariate polynomials.
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  using namespace bivariate;
  return from_rec(gcd_rec(to_rec(a, 1), to_rec(b, 1)), 1);
}

/// a / b when b divides a exactly; throws otherwise.
inline BiPoly exact_quotient(const BiPoly& a, const BiPoly& b) {
  using namespace bivariate;
  return from_rec(exact_div(to_rec(a, 1), to_rec(b, 1)), 1);
}

inline bool divides(const BiPoly& b, const BiPoly& a) {
  try {
    (void)exact_quotient(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Product of the distinct irreducible factors of f, normalized so the
/// leading coefficient (in `main`, then in the other variable) is 1.
inline BiPoly squarefree_part(const BiPoly& f, std::size_t main = 1) {
  using namespace bivariate;
  if (f.is_zero()) return f;
  Rec r = to_rec(f, main);
  QPoly c = content(r);
  QPoly c_sqf = squarefree_part(c);
  Rec pp = primitive_part(r);
  Rec out;
  if (deg(pp) <= 0) {
    out = Rec{QPoly::constant(Rat(1))};
  } else {
    Rec g = gcd_rec(pp, derivative_main(pp));
    out = exact_div(pp, g);
  }
  for (auto& co : out) co = co * c_sqf;
  return from_rec(normalize(out), main);
}

namespace detail {

/// Determinant over Q by Gaussian elimination.
inline Rat determinant(std::vector<std::vector<Rat>> m) {
  std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = Rat(1) / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

/// Sylvester resultant of two univariate polynomials with formal degrees
/// (leading coefficients may vanish).
inline Rat sylvester_resultant(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::size_t da = a.size() - 1, db = b.size() - 1;
  std::size_t n = da + db;
  if (n == 0) return 1;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t j = 0; j <= da; ++j) m[r][r + j] = a[da - j];
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t j = 0; j <= db; ++j) m[db + r][r + j] = b[db - j];
  return determinant(std::move(m));
}

/// Newton interpolation through (xs[i], ys[i]).
inline QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  std::size_t n = xs.size();
  std::vector<Rat> dd(ys);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  QPoly out;
  for (std::size_t k = n; k-- > 0;) out = out * QPoly{-xs[k], Rat(1)} + QPoly::constant(dd[k]);
  return out;
}

}  // namespace detail

/// Resultant of f and g eliminating variable `elim`, as a polynomial in the
/// other variable. Uses the formal degrees in `elim`, so it vanishes at a
/// point exactly when the specializations share a root or both leading
/// coefficients vanish there.
inline QPoly resultant(const BiPoly& f, const BiPoly& g, std::size_t elim = 1) {
  std::size_t other = 1 - elim;
  int df = f.degree(elim), dg = g.degree(elim);
  if (f.is_zero() || g.is_zero()) return {};
  int ef = std::max(0, f.degree(other)), eg = std::max(0, g.degree(other));
  std::size_t bound = static_cast<std::size_t>(ef * dg + eg * df);
  auto rf = bivariate::to_rec(f, elim), rg = bivariate::to_rec(g, elim);
  std::vector<Rat> xs, ys;
  for (std::size_t k = 0; k <= bound; ++k) {
    Rat at(static_cast<long>(k));
    std::vector<Rat> a, b;
    for (const auto& c : rf) a.push_back(c.eval(at));
    for (const auto& c : rg) b.push_back(c.eval(at));
    xs.push_back(at);
    ys.push_back(detail::sylvester_resultant(a, b));
  }
  return detail::interpolate(xs, ys);
}

/// Res_y(f, g) for f, g in Q[x, y].
inline QPoly resultant_y(const BiPoly& f, const BiPoly& g) { return resultant(f, g, 1); }

/// Res_y of two trivariate polynomials, as a polynomial in (x, t) stored in
/// a BiPoly whose variable 0 is x and variable 1 is t.
inline BiPoly resultant_y(const TriPoly& f, const TriPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  int df = f.degree(1), dg = g.degree(1);
  int tf = std::max(0, f.degree(2)), tg = std::max(0, g.degree(2));
  std::size_t bound = static_cast<std::size_t>(tf * dg + tg * df);
  auto slice = [](const TriPoly& p, const Rat& t) {
    BiPoly::Terms terms;
    for (const auto& [e, c] : p.terms()) terms[{e[0], e[1]}] += c * pow_rat(t, e[2]);
    return BiPoly(std::move(terms));
  };
  std::vector<Rat> ts;
  std::vector<QPoly> vals;
  std::size_t xdeg = 0;
  for (std::size_t k = 0; k <= bound; ++k) {
    Rat t(static_cast<long>(k));
    // Keep formal y-degrees: pad with an explicit zero leading term when the
    // slice loses its top coefficient.
    auto fs = slice(f, t), gs = slice(g, t);
    auto rf = bivariate::to_rec(fs, 1), rg = bivariate::to_rec(gs, 1);
    rf.resize(static_cast<std::size_t>(df) + 1);
    rg.resize(static_cast<std::size_t>(dg) + 1);
    int ex = std::max(0, fs.degree(0)), gx = std::max(0, gs.degree(0));
    std::size_t xb = static_cast<std::size_t>(ex * dg + gx * df);
    std::vector<Rat> xs, ys;
    for (std::size_t j = 0; j <= xb; ++j) {
      Rat at(static_cast<long>(j));
      std::vector<Rat> a, b;
      for (const auto& c : rf) a.push_back(c.eval(at));
      for (const auto& c : rg) b.push_back(c.eval(at));
      xs.push_back(at);
      ys.push_back(detail::sylvester_resultant(a, b));
    }
    auto r = detail::interpolate(xs, ys);
    xdeg = std::max(xdeg, r.size());
    ts.push_back(t);
    vals.push_back(std::move(r));
  }
  BiPoly::Terms terms;
  for (std::size_t i = 0; i < xdeg; ++i) {
    std::vector<Rat> ys;
    for (const auto& v : vals) ys.push_back(v[i]);
    auto ct = detail::interpolate(ts, ys);
    for (std::size_t j = 0; j < ct.size(); ++j)
      if (ct.coeffs()[j] != 0) terms[{static_cast<unsigned>(i), static_cast<unsigned>(j)}] = ct.coeffs()[j];
  }
  return BiPoly(std::move(terms));
}

/// Discriminant-style resultant Res_y(f, df/dy).
inline QPoly y_discriminant(const BiPoly& f) { return resultant_y(f, f.derivative(1)); }

}  // namespace satcurve
