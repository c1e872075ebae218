#pragma once

#include <optional>

#include "satcurve/bipoly_ops.hpp"
#include "satcurve/puiseux.hpp"

namespace satcurve {

/// Certified data about g restricted to the branches of a monic curve f,
/// obtained from resultants before any expansion.
///
/// If g and f are coprime, ord_x g|_b <= ord_x Res_y(f, g) for every branch
/// b (all roots of a monic f have nonnegative order). Otherwise, with
/// c = gcd(f, g) and f = c * f2, g vanishes exactly on the branches of c, and
/// a branch of f2 has ord_x c|_b <= ord_x Res_y(f2, c).
struct RestrictionBound {
  bool zero_polynomial = false;
  BiPoly common = BiPoly(1);  // gcd(f, g), monic in y
  int common_test_order = -1;
  int order_bound = 0;        // valid on branches where g does not vanish

  int required_order() const { return std::max(common_test_order, order_bound); }
};

inline RestrictionBound restriction_bound(const BiPoly& g, const BiPoly& f) {
  RestrictionBound rb;
  if (g.is_zero()) {
    rb.zero_polynomial = true;
    return rb;
  }
  BiPoly c = gcd(f, g);
  if (c.degree(1) <= 0) {
    QPoly r = resultant_y(f, g);
    rb.order_bound = r.order();
    return rb;
  }
  Rat lc = c.coeff({0u, static_cast<unsigned>(c.degree(1))});
  c = c.scaled(Rat(1) / lc);
  BiPoly f2 = exact_quotient(f, c);
  rb.common = c;
  rb.common_test_order = f2.degree(1) > 0 ? resultant_y(f2, c).order() : 0;
  rb.order_bound = f2.degree(1) > 0 ? resultant_y(f2, g).order() : 0;
  return rb;
}

/// x-order of a polynomial restricted to a branch, or nullopt if it is zero
/// below the branch truncation.
inline std::optional<Rat> restricted_order(const BiPoly& g, const PuiseuxBranch& b) {
  auto o = series::order(restrict_polynomial(g, b));
  if (!o) return std::nullopt;
  return make_rat(static_cast<long>(*o), static_cast<long>(b.ramification_index));
}

/// Decides whether g vanishes identically on the branch. The branch must be
/// expanded beyond `rb.required_order()`.
inline bool vanishes_on(const RestrictionBound& rb, const PuiseuxBranch& b) {
  if (rb.zero_polynomial) return true;
  if (rb.common.degree(1) <= 0) return false;
  if (!b.exact && b.truncation_order <= Rat(rb.common_test_order))
    throw Error(ErrorKind::InsufficientTruncation, "branch not expanded past the vanishing certificate");
  auto o = restricted_order(rb.common, b);
  return !(o && *o <= Rat(rb.common_test_order));
}

/// Same branch, re-expanded so that its truncation exceeds `order`. An exact
/// branch only needs its nominal truncation raised.
inline PuiseuxBranch reexpand(const PuiseuxBranch& b, const Rat& order) {
  if (b.truncation_order > order) return b;
  if (b.exact) {
    PuiseuxBranch out = b;
    out.truncation_order = Rat(floor_rat(order) + 1);
    return out;
  }
  auto all = puiseux_expand(b.curve, order);
  return all.at(b.branch_id);
}

/// Turns of the root of unity multiplying the coefficient at exponent e
/// under determination k: exp(2 pi i k e).
inline Rat determination_turns(unsigned k, const Rat& e) {
  Rat t = Rat(k) * e;
  t -= Rat(floor_rat(t));
  return t;
}

/// Series of p/q along the branch, determination k. The output truncation
/// is the input truncation minus ord q, lowered further by |ord h| when h
/// has a pole.
inline FractionSeries restrict_fraction(const BiPoly& p, const BiPoly& q, const PuiseuxBranch& b_in, unsigned determination) {
  PuiseuxBranch b = b_in;
  KSeries Qs = restrict_polynomial(q, b);
  auto oq = series::order(Qs);
  if (!oq) {
    RestrictionBound rb = restriction_bound(q, b.curve);
    b = reexpand(b, Rat(rb.required_order() + 1));
    if (vanishes_on(rb, b)) throw Error(ErrorKind::DenominatorVanishesOnBranch, "q vanishes on branch " + std::to_string(b.branch_id));
    Qs = restrict_polynomial(q, b);
    oq = series::order(Qs);
    if (!oq) throw Error(ErrorKind::InsufficientTruncation, "denominator order exceeds its certified bound");
  }
  KSeries Ps = restrict_polynomial(p, b);
  std::size_t N = Qs.size(), w = *oq;
  auto op = series::order(Ps);
  std::size_t ordP = op ? *op : N;
  std::size_t M = std::min(N, N - w + ordP);  // P/Qn known modulo s^M
  KSeries Qn(Qs.begin() + static_cast<std::ptrdiff_t>(w), Qs.end());
  KSeries H = series::mul(Ps, series::inverse(Qn, M), M);
  unsigned n = b.ramification_index;
  FractionSeries out;
  for (std::size_t i = 0; i < H.size() && i < M; ++i) {
    if (H[i].is_zero()) continue;
    Rat e = make_rat(static_cast<long>(i) - static_cast<long>(w), static_cast<long>(n));
    out.terms[e] = PhasedCoeff{H[i], determination_turns(determination, e)};
  }
  out.truncation_order = make_rat(static_cast<long>(M) - static_cast<long>(w), static_cast<long>(n));
  out.identically_zero_up_to_truncation = out.terms.empty();
  return out;
}

/// The series of a branch under determination k, as phased coefficients.
inline FractionSeries branch_as_series(const PuiseuxBranch& b, unsigned determination) {
  FractionSeries s;
  for (const auto& [e, c] : b.terms) s.terms[e] = PhasedCoeff{c, determination_turns(determination, e)};
  s.truncation_order = b.truncation_order;
  return s;
}

/// Lowest exponent below `limit` where the two series differ, or nullopt.
inline std::optional<Rat> first_difference(const FractionSeries& a, const FractionSeries& b, const Rat& limit) {
  auto ia = a.terms.begin(), ib = b.terms.begin();
  static const PhasedCoeff zero{FieldElem(), Rat(0)};
  while (ia != a.terms.end() || ib != b.terms.end()) {
    Rat e;
    const PhasedCoeff* ca = &zero;
    const PhasedCoeff* cb = &zero;
    if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
      e = ia->first;
      ca = &ia->second;
      ++ia;
    } else if (ia == a.terms.end() || ib->first < ia->first) {
      e = ib->first;
      cb = &ib->second;
      ++ib;
    } else {
      e = ia->first;
      ca = &ia->second;
      cb = &ib->second;
      ++ia;
      ++ib;
    }
    if (e >= limit) return std::nullopt;
    if (!phased_equal(ca->value, ca->turns, cb->value, cb->turns)) return e;
  }
  return std::nullopt;
}

}  // namespace satcurve
