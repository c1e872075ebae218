#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "satcurve/rational.hpp"
#include "satcurve/upoly.hpp"

namespace satcurve {

/// Factorization of univariate polynomials over Q by the Zassenhaus method:
/// modular factorization (distinct-degree + Cantor-Zassenhaus), quadratic
/// Hensel lifting along a factor tree, and exhaustive subset recombination.
namespace factoring {

using ZPoly = std::vector<Int>;  // low to high, trimmed
using ModPoly = std::vector<std::int64_t>;

// ---------------------------------------------------------------- mod p ---

struct ModP {
  std::int64_t p;

  std::int64_t norm(std::int64_t a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p); }
  std::int64_t pow(std::int64_t a, std::uint64_t e) const {
    std::int64_t r = 1;
    a = norm(a);
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return r;
  }
  std::int64_t inv(std::int64_t a) const { return pow(a, static_cast<std::uint64_t>(p - 2)); }

  static void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  ModPoly add(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = norm(r[i] + b[i]);
    trim(r);
    return r;
  }
  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = norm(r[i] - b[i]);
    trim(r);
    return r;
  }
  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = norm(r[i + j] + mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }
  std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b) const {
    if (a.size() < b.size()) return {{}, a};
    ModPoly q(a.size() - b.size() + 1, 0);
    std::int64_t inv_lc = inv(b.back());
    for (std::size_t k = a.size() - b.size() + 1; k-- > 0;) {
      std::int64_t c = mul(a[k + b.size() - 1], inv_lc);
      q[k] = c;
      if (!c) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = norm(a[k + j] - mul(c, b[j]));
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
  }
  ModPoly rem(const ModPoly& a, const ModPoly& b) const { return divmod(a, b).second; }
  ModPoly monic(ModPoly a) const {
    if (a.empty()) return a;
    std::int64_t i = inv(a.back());
    for (auto& c : a) c = mul(c, i);
    return a;
  }
  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      auto r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  /// (g, s, t) with s*a + t*b = g monic.
  std::tuple<ModPoly, ModPoly, ModPoly> xgcd(ModPoly a, ModPoly b) const {
    ModPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
      auto [q, r] = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
      auto s2 = sub(s0, mul(q, s1));
      auto t2 = sub(t0, mul(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::int64_t i = inv(a.back());
    for (auto* v : {&a, &s0, &t0})
      for (auto& c : *v) c = mul(c, i);
    return {a, s0, t0};
  }
  ModPoly powmod(ModPoly base, Int e, const ModPoly& m) const {
    ModPoly r{1};
    base = rem(base, m);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base), m);
      base = rem(mul(base, base), m);
      e >>= 1;
    }
    return r;
  }
  ModPoly derivative(const ModPoly& a) const {
    ModPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], static_cast<std::int64_t>(i) % p));
    trim(d);
    return d;
  }
};

inline ModPoly reduce(const ZPoly& f, const ModP& F) {
  ModPoly r;
  for (const auto& c : f) {
    Int m = c % Int(F.p);
    if (m < 0) m += F.p;
    r.push_back(m.get_si());
  }
  ModP::trim(r);
  return r;
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial mod p (p odd).
inline std::vector<ModPoly> factor_mod_p(const ModPoly& f, const ModP& F, std::mt19937_64& rng) {
  std::vector<std::pair<ModPoly, std::size_t>> dd;  // product of factors of degree d
  ModPoly rest = f;
  ModPoly xp{0, 1};
  ModPoly h = xp;
  for (std::size_t d = 1; 2 * d <= rest.size() - 1; ++d) {
    h = F.powmod(h, Int(F.p), rest);
    ModPoly g = F.gcd(rest, F.sub(h, xp));
    if (g.size() > 1) {
      dd.emplace_back(g, d);
      rest = F.divmod(rest, g).first;
      h = F.rem(h, rest);
    }
  }
  if (rest.size() > 1) dd.emplace_back(rest, rest.size() - 1);

  std::vector<ModPoly> out;
  for (auto& [g, d] : dd) {
    std::vector<ModPoly> work{g};
    while (!work.empty()) {
      ModPoly u = work.back();
      work.pop_back();
      if (u.size() - 1 == d) {
        out.push_back(F.monic(u));
        continue;
      }
      Int e;
      mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), d);
      e = (e - 1) / 2;
      while (true) {
        ModPoly a;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) a.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(F.p)));
        ModP::trim(a);
        if (a.size() <= 1) continue;
        ModPoly b = F.sub(F.powmod(a, e, u), ModPoly{1});
        ModPoly s = F.gcd(u, b);
        if (s.size() > 1 && s.size() < u.size()) {
          work.push_back(s);
          work.push_back(F.divmod(u, s).first);
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------- mod M (lifting) ---

inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline void trimz(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zreduce(ZPoly a, const Int& m) {
  for (auto& c : a) c = mod_nonneg(c, m);
  trimz(a);
  return a;
}
inline ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trimz(r);
  return r;
}
inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trimz(r);
  return r;
}
inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trimz(r);
  return r;
}
/// Division by a monic polynomial modulo m.
inline std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Int& m) {
  a = zreduce(a, m);
  if (a.size() < b.size()) return {{}, a};
  ZPoly q(a.size() - b.size() + 1, Int(0));
  for (std::size_t k = a.size() - b.size() + 1; k-- > 0;) {
    Int c = mod_nonneg(a[k + b.size() - 1], m);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = mod_nonneg(a[k + j] - c * b[j], m);
  }
  a.resize(b.size() - 1);
  trimz(a);
  trimz(q);
  return {q, a};
}

inline ZPoly from_mod(const ModPoly& a) {
  ZPoly r;
  for (auto c : a) r.emplace_back(static_cast<long>(c));
  trimz(r);
  return r;
}

/// One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, h monic.
/// Returns the same data modulo m^2.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m) {
  Int m2 = m * m;
  ZPoly e = zreduce(zsub(f, zmul(g, h)), m2);
  auto [q, r] = zdivmod_monic(zmul(s, e), h, m2);
  ZPoly g2 = zreduce(zadd(g, zadd(zmul(t, e), zmul(q, g))), m2);
  ZPoly h2 = zreduce(zadd(h, r), m2);
  ZPoly b = zreduce(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{Int(1)}), m2);
  auto [c, d] = zdivmod_monic(zmul(s, b), h2, m2);
  ZPoly s2 = zreduce(zsub(s, d), m2);
  ZPoly t2 = zreduce(zsub(t, zadd(zmul(t, b), zmul(c, g2))), m2);
  g = std::move(g2);
  h = std::move(h2);
  s = std::move(s2);
  t = std::move(t2);
}

/// Lifts f = lc(f) * prod(factors) mod p to modulus p^(2^steps).
inline std::vector<ZPoly> multifactor_lift(const ZPoly& f, const std::vector<ModPoly>& factors, const ModP& F, int steps) {
  if (factors.size() == 1) {
    Int M = F.p;
    for (int i = 0; i < steps; ++i) M *= M;
    // f / lc(f) mod M
    Int inv;
    mpz_invert(inv.get_mpz_t(), Int(f.back()).get_mpz_t(), M.get_mpz_t());
    ZPoly r;
    for (const auto& c : f) r.push_back(mod_nonneg(c * inv, M));
    trimz(r);
    return {r};
  }
  std::size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<ModPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  ModPoly gl{F.norm(Int(f.back() % Int(F.p)).get_si())};
  for (const auto& a : left) gl = F.mul(gl, a);
  ModPoly hr{1};
  for (const auto& a : right) hr = F.mul(hr, a);
  auto [one, s0, t0] = F.xgcd(gl, hr);
  ZPoly g = from_mod(gl), h = from_mod(hr), s = from_mod(s0), t = from_mod(t0);
  Int m = F.p;
  for (int i = 0; i < steps; ++i) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  auto lf = multifactor_lift(g, left, F, steps);
  auto rf = multifactor_lift(h, right, F, steps);
  lf.insert(lf.end(), rf.begin(), rf.end());
  return lf;
}

inline ZPoly symmetric(ZPoly a, const Int& m) {
  Int half = m / 2;
  for (auto& c : a) {
    c = mod_nonneg(c, m);
    if (c > half) c -= m;
  }
  trimz(a);
  return a;
}

inline ZPoly zprimitive(ZPoly a) {
  Int g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

/// Exact division over Z; returns false if b does not divide a.
inline bool zdivide(const ZPoly& a, const ZPoly& b, ZPoly& quot) {
  ZPoly r = a;
  if (r.size() < b.size()) return false;
  ZPoly q(r.size() - b.size() + 1, Int(0));
  for (std::size_t k = r.size() - b.size() + 1; k-- > 0;) {
    const Int& top = r[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
    Int c = top / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  trimz(r);
  if (!r.empty()) return false;
  trimz(q);
  quot = q;
  return true;
}

inline bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree with positive leading coefficient.
inline std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  std::size_t n = f.size() - 1;
  if (n <= 1) return {f};
  std::mt19937_64 rng(0x5eed5eedULL);

  // Choose, among a few admissible primes, one with the fewest modular factors.
  std::int64_t best_p = 0;
  std::vector<ModPoly> best;
  int tried = 0;
  for (std::int64_t p = 3; tried < 6 && p < 100000; p += 2) {
    if (!is_prime_small(p)) continue;
    ModP F{p};
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    ModPoly fp = F.monic(reduce(f, F));
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    auto facs = factor_mod_p(fp, F, rng);
    ++tried;
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {f};
  ModP F{best_p};

  // Mignotte-style bound on coefficients of lc(f) * (any factor).
  Int maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, Int(abs(c)));
  Int bound = Int(abs(f.back())) * maxc * Int(static_cast<long>(n + 1));
  bound <<= static_cast<mp_bitcnt_t>(n + 1);
  int steps = 0;
  Int M = best_p;
  while (M <= bound) {
    M *= M;
    ++steps;
  }
  auto lifted = multifactor_lift(f, best, F, steps);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<ZPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly cand{Int(rest.back())};
      for (auto i : idx) cand = zreduce(zmul(cand, pool[i]), M);
      cand = zprimitive(symmetric(cand, M));
      ZPoly q;
      if (cand.size() > 1 && zdivide(rest, cand, q)) {
        result.push_back(cand);
        rest = q;
        std::vector<ZPoly> next;
        for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
          if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
          }
          next.push_back(pool[i]);
        }
        pool = std::move(next);
        found = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.size() > 1) result.push_back(zprimitive(rest));
  return result;
}

inline ZPoly to_zpoly(const QPoly& p) {
  QPoly q = primitive_integer(p);
  ZPoly r;
  for (const auto& c : q.coeffs()) r.push_back(c.get_num());
  return r;
}

inline QPoly to_qpoly(const ZPoly& z) {
  std::vector<Rat> v;
  for (const auto& c : z) v.emplace_back(c);
  return QPoly(std::move(v));
}

}  // namespace factoring

/// One irreducible factor with its multiplicity.
struct QFactor {
  QPoly factor;  // monic, irreducible over Q
  int multiplicity;
};

/// Complete factorization over Q into monic irreducible factors, sorted by
/// (degree, coefficients) for reproducibility. Constants give an empty list.
inline std::vector<QFactor> factor_over_q(const QPoly& p) {
  std::vector<QFactor> out;
  if (p.degree() <= 0) return out;
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    QPoly part = parts[i];
    if (part.degree() <= 0) continue;
    int mult = static_cast<int>(i) + 1;
    // Split off the factor X first.
    if (part[0] == 0) {
      out.push_back({QPoly::x(), mult});
      part = part / QPoly::x();
      if (part.degree() <= 0) continue;
    }
    for (const auto& z : factoring::factor_squarefree(factoring::to_zpoly(part)))
      out.push_back({factoring::to_qpoly(z).monic(), mult});
  }
  std::sort(out.begin(), out.end(), [](const QFactor& a, const QFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    const auto& ca = a.factor.coeffs();
    const auto& cb = b.factor.coeffs();
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (ca[i] != cb[i]) return ca[i] < cb[i];
    return false;
  });
  return out;
}

inline bool is_irreducible_over_q(const QPoly& p) {
  auto f = factor_over_q(p);
  return f.size() == 1 && f[0].multiplicity == 1;
}

}  // namespace satcurve
