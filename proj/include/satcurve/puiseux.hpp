#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "satcurve/bipoly_ops.hpp"
#include "satcurve/error.hpp"
#include "satcurve/newton_polygon.hpp"
#include "satcurve/number_field.hpp"
#include "satcurve/real.hpp"
#include "satcurve/regularize.hpp"
#include "satcurve/roots.hpp"

namespace satcurve {

/// One irreducible branch y = sum c_e x^e of a y-regular curve at the
/// origin. Exponents lie on the 1/ramification_index grid; every coefficient
/// lives in `field` (null for Q). The series is correct modulo
/// x^truncation_order, or exactly when `exact` is set.
struct PuiseuxBranch {
  unsigned branch_id = 0;
  unsigned ramification_index = 1;
  std::map<Rat, FieldElem> terms;
  Rat truncation_order;
  bool exact = false;
  FieldPtr field;
  BiPoly curve;                 // monic y-regular equation the branch solves
  double validity_radius = 1.0;  // bound on |x| for numeric evaluation
};

struct CharacteristicData {
  unsigned multiplicity = 1;
  std::vector<Rat> char_exponents;
  std::vector<std::pair<unsigned, unsigned>> ladder;  // (m_i, n_i)
};

/// Coefficient times a root of unity exp(2 pi i turns).
struct PhasedCoeff {
  FieldElem value;
  Rat turns;

  Complex numeric(mpfr_prec_t bits) const { return value.numeric(bits) * Complex::unit(turns, bits); }
};

/// Series in fractional powers of x, possibly with negative exponents.
struct FractionSeries {
  std::map<Rat, PhasedCoeff> terms;
  Rat truncation_order;
  bool identically_zero_up_to_truncation = false;

  /// Lowest exponent present, or nullopt when no term is below the truncation.
  std::optional<Rat> order() const {
    if (terms.empty()) return std::nullopt;
    return terms.begin()->first;
  }
};

// ------------------------------------------------------ truncated series ---

using KSeries = std::vector<FieldElem>;  // index = exponent of s

namespace series {

inline KSeries mul(const KSeries& a, const KSeries& b, std::size_t n) {
  KSeries r(std::min(n, a.size() + b.size()), FieldElem());
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

inline KSeries add(const KSeries& a, const KSeries& b) {
  KSeries r(std::max(a.size(), b.size()), FieldElem());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline KSeries sub(const KSeries& a, const KSeries& b) {
  KSeries r(std::max(a.size(), b.size()), FieldElem());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

inline KSeries truncate(KSeries a, std::size_t n) {
  if (a.size() > n) a.resize(n);
  return a;
}

/// 1/a modulo s^n; requires a[0] != 0.
inline KSeries inverse(const KSeries& a, std::size_t n) {
  KSeries b(n, FieldElem());
  if (n == 0) return b;
  FieldElem inv0 = a.at(0).inverse();
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    FieldElem acc;
    for (std::size_t i = 1; i <= k && i < a.size(); ++i)
      if (!a[i].is_zero() && !b[k - i].is_zero()) acc += a[i] * b[k - i];
    b[k] = -(acc * inv0);
  }
  return b;
}

/// Index of the first nonzero coefficient, or nullopt.
inline std::optional<std::size_t> order(const KSeries& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) return i;
  return std::nullopt;
}

}  // namespace series

namespace puiseux_detail {

using KSupport = std::map<LatticePoint, FieldElem>;

/// State of one path of the expansion: x = s^Q, y = P(s) + s^E * y_cur with
/// f_cur(s, y_cur) = 0.
struct Path {
  FieldPtr K;
  unsigned Q = 1;
  unsigned E = 0;
  std::map<unsigned, FieldElem> P;
  KSupport f;
};

struct RawBranch {
  FieldPtr K;
  unsigned Q = 1;
  std::map<unsigned, FieldElem> terms;  // s-exponent -> coefficient
  unsigned trunc_s = 0;                  // series correct modulo s^trunc_s
  bool exact = false;
};

inline Path lift(const Path& st, const FieldPtr& L) {
  if (st.K == L) return st;
  Path out;
  out.K = L;
  out.Q = st.Q;
  out.E = st.E;
  for (const auto& [k, c] : st.P) out.P[k] = c.lift(L);
  for (const auto& [k, c] : st.f) out.f[k] = c.lift(L);
  return out;
}

inline Rat binomial(unsigned n, unsigned k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

/// s^(-w0) f(s^q, s^p (c + y)).
inline KSupport transform(const KSupport& f, unsigned p, unsigned q, const FieldElem& c, unsigned w0) {
  unsigned maxj = 0;
  for (const auto& [pt, a] : f) maxj = std::max(maxj, pt.second);
  std::vector<FieldElem> cpow(maxj + 1, FieldElem(1));
  for (unsigned j = 1; j <= maxj; ++j) cpow[j] = cpow[j - 1] * c;
  KSupport out;
  for (const auto& [pt, a] : f) {
    auto [i, j] = pt;
    unsigned base = q * i + p * j - w0;
    for (unsigned k = 0; k <= j; ++k) {
      FieldElem term = a * cpow[j - k] * FieldElem(binomial(j, k));
      if (term.is_zero()) continue;
      out[{base, k}] += term;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

/// The coefficients A_j(s) of f = sum_j A_j(s) y^j, truncated mod s^n.
inline std::vector<KSeries> by_y_power(const KSupport& f, std::size_t n) {
  unsigned maxj = 0;
  for (const auto& [pt, a] : f) maxj = std::max(maxj, pt.second);
  std::vector<KSeries> A(maxj + 1, KSeries(n, FieldElem()));
  for (const auto& [pt, a] : f)
    if (pt.first < n) A[pt.second][pt.first] += a;
  return A;
}

inline std::pair<KSeries, KSeries> eval_with_dy(const std::vector<KSeries>& A, const KSeries& Y, std::size_t n) {
  KSeries F(n, FieldElem()), D(n, FieldElem());
  for (std::size_t j = A.size(); j-- > 0;) {
    D = series::add(series::mul(D, Y, n), F);
    F = series::add(series::mul(F, Y, n), series::truncate(A[j], n));
  }
  return {series::truncate(F, n), series::truncate(D, n)};
}

/// Simple root Y(s) = sum_{k>=1} b_k s^k of f(s, Y) = 0, modulo s^(N+1).
inline KSeries solve_regular(const KSupport& f, std::size_t N) {
  std::size_t full = N + 1;
  auto A = by_y_power(f, full);
  KSeries Y(1, FieldElem());
  std::size_t prec = 1;
  while (prec < full) {
    prec = std::min(2 * prec, full);
    Y.resize(prec, FieldElem());
    auto [F, D] = eval_with_dy(A, Y, prec);
    KSeries step = series::mul(F, series::inverse(D, prec), prec);
    Y = series::sub(Y, step);
  }
  auto [F, D] = eval_with_dy(A, Y, full);
  (void)D;
  if (series::order(F)) throw Error(ErrorKind::PrecisionOverflow, "power series Newton iteration did not converge");
  return Y;
}

/// Exact check that the polynomial Y solves f(s, Y) = 0.
inline bool solves_exactly(const KSupport& f, const KSeries& Y) {
  std::size_t ydeg = 0;
  for (std::size_t i = 0; i < Y.size(); ++i)
    if (!Y[i].is_zero()) ydeg = i;
  unsigned maxi = 0, maxj = 0;
  for (const auto& [pt, a] : f) {
    maxi = std::max(maxi, pt.first);
    maxj = std::max(maxj, pt.second);
  }
  std::size_t n = maxi + maxj * ydeg + 1;
  auto A = by_y_power(f, n);
  auto [F, D] = eval_with_dy(A, Y, n);
  (void)D;
  return !series::order(F).has_value();
}

struct RootChoice {
  Complex approx;
  std::size_t factor;
  unsigned multiplicity;
  const FieldFactorization* fz;
};

inline std::vector<Complex> sorted_roots(const KPoly& p) {
  std::vector<Complex> out;
  for (auto& r : isolate_roots(detail::numeric_coeffs(p, 256), 256)) out.push_back(r.center);
  std::sort(out.begin(), out.end(), canonical_before);
  return out;
}

/// One q-th root of u, preferring a root in the current field.
inline AdjoinedRoot qth_root(const FieldElem& u, unsigned q, const FieldPtr& K) {
  if (q == 1) return {K, u};
  std::vector<FieldElem> c(q + 1, FieldElem(K, {}));
  c[0] = -u;
  c[q] = FieldElem(K, {Rat(1)});
  KPoly zq(std::move(c));
  FieldFactorization fz = factor_over_field(zq, K);
  std::size_t best = 0;
  std::optional<Complex> best_root;
  for (std::size_t i = 0; i < fz.factors.size(); ++i) {
    auto roots = sorted_roots(fz.factors[i]);
    if (!best_root || fz.factors[i].degree() < fz.factors[best].degree() ||
        (fz.factors[i].degree() == fz.factors[best].degree() && canonical_before(roots.front(), *best_root))) {
      best = i;
      best_root = roots.front();
    }
  }
  return adjoin_root(fz, best, K, *best_root);
}

class Expander {
 public:
  Expander(const Rat& order, const Rat& cap) : order_(order), cap_(cap) {}

  std::vector<RawBranch> run(const BiPoly& f) {
    Path root;
    for (const auto& [e, c] : f.terms()) root.f[{e[0], e[1]}] = FieldElem(c);
    node(root);
    return std::move(out_);
  }

 private:
  unsigned j_min(const KSupport& f) const {
    unsigned j = ~0u;
    for (const auto& [pt, a] : f) j = std::min(j, pt.second);
    return j;
  }

  void emit_exact(const Path& st) {
    RawBranch b;
    b.K = st.K;
    b.Q = st.Q;
    b.terms = st.P;
    b.exact = true;
    unsigned last = st.P.empty() ? 0 : st.P.rbegin()->first;
    unsigned goal = static_cast<unsigned>(to_long(floor_rat(order_ * Rat(st.Q))));
    b.trunc_s = std::max(goal, last) + 1;
    out_.push_back(std::move(b));
  }

  void node(const Path& st) {
    unsigned jm = j_min(st.f);
    if (jm >= 2) throw Error(ErrorKind::NotReduced, "repeated exact root: the curve is not reduced");
    if (jm == 1) emit_exact(st);
    auto poly = newton_polygon(st.f);
    for (const auto& edge : poly.edges) {
      unsigned p = static_cast<unsigned>(edge.slope.get_num().get_ui());
      unsigned q = static_cast<unsigned>(edge.slope.get_den().get_ui());
      unsigned w0 = q * edge.from.first + p * edge.from.second;
      // psi(u) with phi(Z) = psi(Z^q).
      std::vector<FieldElem> pc;
      for (std::size_t k = 0; k < edge.edge_poly.size(); k += q) pc.push_back(edge.edge_poly[k]);
      KPoly psi(std::move(pc));
      auto parts = squarefree_decomposition(psi);
      std::vector<FieldFactorization> fzs;
      fzs.reserve(parts.size());
      std::vector<RootChoice> choices;
      for (std::size_t r = 0; r < parts.size(); ++r) {
        if (parts[r].degree() <= 0) continue;
        fzs.push_back(factor_over_field(parts[r], st.K));
      }
      std::size_t fi = 0;
      for (std::size_t r = 0; r < parts.size(); ++r) {
        if (parts[r].degree() <= 0) continue;
        const auto& fz = fzs[fi++];
        for (std::size_t i = 0; i < fz.factors.size(); ++i)
          for (auto& z : sorted_roots(fz.factors[i])) choices.push_back({z, i, static_cast<unsigned>(r + 1), &fz});
      }
      std::stable_sort(choices.begin(), choices.end(),
                       [](const RootChoice& a, const RootChoice& b) { return canonical_before(a.approx, b.approx); });
      for (const auto& ch : choices) {
        AdjoinedRoot u = adjoin_root(*ch.fz, ch.factor, st.K, ch.approx);
        AdjoinedRoot c = qth_root(u.value, q, u.field);
        Path nx = lift(st, c.field);
        std::map<unsigned, FieldElem> P;
        for (const auto& [k, v] : nx.P) P[k * q] = v;
        nx.Q = st.Q * q;
        nx.E = st.E * q + p;
        P[nx.E] = c.value;
        nx.P = std::move(P);
        nx.f = transform(nx.f, p, q, c.value, w0);
        if (make_rat(static_cast<long>(nx.E), static_cast<long>(nx.Q)) > cap_) throw Error(ErrorKind::PrecisionOverflow, "singular expansion exceeded the discriminant cap");
        if (ch.multiplicity == 1) regular(nx);
        else node(nx);
      }
    }
  }

  void regular(const Path& st) {
    if (j_min(st.f) >= 1) {
      emit_exact(st);
      return;
    }
    long goal = to_long(floor_rat(order_ * Rat(st.Q)));
    std::size_t N = goal > static_cast<long>(st.E) ? static_cast<std::size_t>(goal - static_cast<long>(st.E)) : 0;
    KSeries Y = N > 0 ? solve_regular(st.f, N) : KSeries(1, FieldElem());
    RawBranch b;
    b.K = st.K;
    b.Q = st.Q;
    b.terms = st.P;
    for (std::size_t k = 1; k < Y.size(); ++k)
      if (!Y[k].is_zero()) b.terms[st.E + static_cast<unsigned>(k)] = Y[k];
    b.trunc_s = st.E + static_cast<unsigned>(N) + 1;
    // A short polynomial solution is checked for exactness.
    auto ord_last = std::size_t(0);
    for (std::size_t k = 0; k < Y.size(); ++k)
      if (!Y[k].is_zero()) ord_last = k;
    if (N >= 2 && 2 * ord_last <= N && solves_exactly(st.f, Y)) b.exact = true;
    out_.push_back(std::move(b));
  }

  Rat order_, cap_;
  std::vector<RawBranch> out_;
};

inline double validity_radius(const QPoly& disc) {
  if (disc.is_zero()) return 1.0;
  int k = disc.order();
  QPoly rest = disc / QPoly::monomial(Rat(1), static_cast<std::size_t>(k));
  rest = squarefree_part(rest);
  if (rest.degree() <= 0) return 1.0;
  double best = 2.0;
  for (const auto& r : isolate_roots(rest, 128)) best = std::min(best, r.center.norm().to_double());
  return std::min(1.0, 0.5 * best);
}

}  // namespace puiseux_detail

/// x-order of Res_y(f, df/dy): bounds every contact exponent of a monic f.
inline int discriminant_order(const BiPoly& f) {
  QPoly d = y_discriminant(f);
  if (d.is_zero()) throw Error(ErrorKind::NotReduced, "the discriminant vanishes identically");
  return d.order();
}

inline void require_y_regular_reduced(const BiPoly& f) {
  if (f.is_zero() || f.constant_term() != 0) throw Error(ErrorKind::NotAGerm, "f(0,0) != 0");
  if (!is_y_regular(f)) throw Error(ErrorKind::NotYRegular, "x = 0 is tangent or the y-leading coefficient is not constant");
  if (gcd(f, f.derivative(1)).degree(1) > 0) throw Error(ErrorKind::NotReduced, "f has a repeated factor");
}

/// All branches of a y-regular reduced germ at the origin, each correct
/// modulo x^t with t > order (or exact).
inline std::vector<PuiseuxBranch> puiseux_expand(const BiPoly& f_in, const Rat& order) {
  require_y_regular_reduced(f_in);
  int d = f_in.degree(1);
  BiPoly f = f_in.scaled(Rat(1) / f_in.coeff({0u, static_cast<unsigned>(d)}));
  QPoly disc = y_discriminant(f);
  if (disc.is_zero()) throw Error(ErrorKind::NotReduced, "the discriminant vanishes identically");
  Rat cap = Rat(disc.order() + 2);
  puiseux_detail::Expander ex(order, cap);
  auto raw = ex.run(f);
  double radius = puiseux_detail::validity_radius(disc);
  std::vector<PuiseuxBranch> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& r = raw[i];
    unsigned g = r.Q;
    for (const auto& [k, c] : r.terms) g = static_cast<unsigned>(std::gcd(g, k));
    if (!r.exact) g = static_cast<unsigned>(std::gcd(g, r.trunc_s));
    PuiseuxBranch b;
    b.branch_id = static_cast<unsigned>(i);
    b.ramification_index = r.Q / g;
    b.field = r.K;
    for (const auto& [k, c] : r.terms) b.terms[make_rat(static_cast<long>(k), static_cast<long>(r.Q))] = c.lift(r.K);
    b.truncation_order = make_rat(static_cast<long>(r.trunc_s), static_cast<long>(r.Q));
    b.exact = r.exact;
    b.curve = f;
    b.validity_radius = radius;
    out.push_back(std::move(b));
  }
  return out;
}

/// Numerator of e on the 1/n grid.
inline unsigned grid_index(const Rat& e, unsigned n) {
  Rat v = e * Rat(n);
  return static_cast<unsigned>(v.get_num().get_ui());
}

inline unsigned branch_multiplicity(const PuiseuxBranch& b) { return b.ramification_index; }

/// Slope dy/dx of the tangent line: the coefficient at exponent 1.
inline FieldElem tangent_slope(const PuiseuxBranch& b) {
  auto it = b.terms.find(Rat(1));
  return it == b.terms.end() ? FieldElem() : it->second;
}

inline CharacteristicData characteristic_exponents(const PuiseuxBranch& b) {
  CharacteristicData cd;
  unsigned n = b.ramification_index;
  cd.multiplicity = n;
  unsigned g = n, prod = 1;
  for (const auto& [e, c] : b.terms) {
    if (g == 1) break;
    Rat scaled = e * Rat(n);
    unsigned j = static_cast<unsigned>(scaled.get_num().get_ui());
    if (j % g == 0) continue;
    unsigned g2 = static_cast<unsigned>(std::gcd(g, j));
    unsigned ni = g / g2;
    prod *= ni;
    cd.char_exponents.push_back(e);
    Rat m = e * Rat(prod);
    cd.ladder.emplace_back(static_cast<unsigned>(m.get_num().get_ui()), ni);
    g = g2;
  }
  if (g != 1) throw Error(ErrorKind::InsufficientTruncation, "characteristic sequence not closed below the truncation order");
  return cd;
}

/// Coefficients of the branch as a series in s = x^(1/n), modulo s^N with
/// N = n * truncation_order.
inline KSeries branch_series(const PuiseuxBranch& b) {
  Rat nt = b.truncation_order * Rat(b.ramification_index);
  std::size_t N = static_cast<std::size_t>(to_long(ceil_rat(nt)));
  KSeries Y(N, FieldElem());
  for (const auto& [e, c] : b.terms) {
    std::size_t k = grid_index(e, b.ramification_index);
    if (k < N) Y[k] = c;
  }
  return Y;
}

/// g(s^n, Y(s)) modulo s^N.
inline KSeries restrict_polynomial(const BiPoly& g, const PuiseuxBranch& b) {
  KSeries Y = branch_series(b);
  std::size_t N = Y.size();
  unsigned n = b.ramification_index;
  int dy = std::max(0, g.degree(1));
  std::vector<KSeries> A(static_cast<std::size_t>(dy) + 1, KSeries(N, FieldElem()));
  for (const auto& [e, c] : g.terms()) {
    std::size_t k = static_cast<std::size_t>(e[0]) * n;
    if (k < N) A[e[1]][k] += FieldElem(c);
  }
  KSeries F(N, FieldElem());
  for (std::size_t j = A.size(); j-- > 0;) F = series::add(series::mul(F, Y, N), A[j]);
  return series::truncate(F, N);
}

/// Numeric point (x, y) of a branch at parameter s under determination k.
inline std::pair<Complex, Complex> evaluate_branch(const PuiseuxBranch& b, unsigned determination, const Complex& s,
                                                   mpfr_prec_t bits) {
  unsigned n = b.ramification_index;
  Complex sp = s.with_precision(bits);
  Complex x = sp.pow(n);
  if (x.norm().to_double() > b.validity_radius * (1.0 + 1e-12))
    throw Error(ErrorKind::RadiusTooLarge, "|x| exceeds the branch validity radius");
  Complex t = sp * Complex::unit(make_rat(static_cast<long>(determination % n), static_cast<long>(n)), bits);
  Complex y(bits);
  for (const auto& [e, c] : b.terms) {
    unsigned k = grid_index(e, n);
    y += c.numeric(bits) * t.pow(k);
  }
  return {x, y};
}

}  // namespace satcurve
