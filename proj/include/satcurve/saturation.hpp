#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <iomanip>
#include <string>
#include <vector>

#include "satcurve/puiseux.hpp"
#include "satcurve/regularize.hpp"
#include "satcurve/restriction.hpp"

namespace satcurve {

/// A class of pairs of determinations (0 on branch a, k on branch b) with
/// the order of their difference, measured on the 1/m grid.
struct ContactType {
  unsigned alpha = 0, alpha_prime = 0;
  unsigned class_rep = 0;
  unsigned m = 1;
  unsigned mu = 0;
  Rat exponent;
  bool self_contact = false;
};

struct SaturationProfile {
  std::string curve_hash;
  std::vector<ContactType> types;
  std::vector<Rat> distinct_exponents;
  std::map<std::pair<unsigned, unsigned>, unsigned> per_pair_class_count;
  std::vector<PuiseuxBranch> branches;
  int discriminant_order = 0;
};

enum class Verdict { Lipschitz, BoundedNotLipschitz, Unbounded, Undefined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Lipschitz: return "Lipschitz";
    case Verdict::BoundedNotLipschitz: return "BoundedNotLipschitz";
    case Verdict::Unbounded: return "Unbounded";
    case Verdict::Undefined: return "Undefined";
  }
  return "?";
}

/// nu is nullopt when the difference vanishes identically.
struct TypeCheck {
  ContactType type;
  std::optional<Rat> nu;
  bool pass = true;
};

struct LipschitzReport {
  BiPoly p, q;
  Verdict verdict = Verdict::Lipschitz;
  std::vector<TypeCheck> per_type;
  std::vector<std::optional<Rat>> boundedness;  // nullopt: h vanishes on the branch
  std::optional<unsigned> undefined_branch;
  std::optional<Rat> difference_bound;           // nullopt: h takes one value on the curve
  std::vector<PuiseuxBranch> branches;
};

struct BoundednessReport {
  std::vector<std::optional<Rat>> orders;
  bool bounded = true;
};

struct IdealMembership {
  bool member = true;
  std::vector<std::optional<Rat>> ord_h;
  std::vector<Rat> min_generator_order;
  std::vector<std::optional<Rat>> margin;  // nullopt when h vanishes on the branch
};

struct Prop45 {
  unsigned type_count = 0;
  unsigned degree = 0;
  friend bool operator==(const Prop45& a, const Prop45& b) {
    return a.type_count == b.type_count && a.degree == b.degree;
  }
};

/// 64-bit FNV-1a of the canonical monic form of f, as hex.
inline std::string curve_hash(const BiPoly& f) {
  std::string s = f.to_string(xy_names());
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// Offsets k of the classes (0, k); joint monodromy shifts both
/// determinations by one, so the offset is defined modulo gcd(n_a, n_b).
inline std::vector<unsigned> determination_classes(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  std::vector<unsigned> out;
  if (a.branch_id == b.branch_id) {
    for (unsigned k = 1; k < a.ramification_index; ++k) out.push_back(k);
    return out;
  }
  unsigned g = static_cast<unsigned>(std::gcd(a.ramification_index, b.ramification_index));
  for (unsigned k = 0; k < g; ++k) out.push_back(k);
  return out;
}

namespace saturation_detail {

inline ContactType make_type(const PuiseuxBranch& a, const PuiseuxBranch& b, unsigned k, const Rat& e) {
  ContactType t;
  t.alpha = std::min(a.branch_id, b.branch_id);
  t.alpha_prime = std::max(a.branch_id, b.branch_id);
  t.class_rep = k;
  t.m = static_cast<unsigned>(std::lcm(a.ramification_index, b.ramification_index));
  t.exponent = e;
  t.mu = grid_index(e, t.m);
  t.self_contact = a.branch_id == b.branch_id;
  return t;
}

inline Rat common_truncation(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  if (a.exact && b.exact) return Rat(1L << 30);
  if (a.exact) return b.truncation_order;
  if (b.exact) return a.truncation_order;
  return std::min(a.truncation_order, b.truncation_order);
}

inline BiPoly monic_in_y(const BiPoly& f) {
  return f.scaled(Rat(1) / f.coeff({0u, static_cast<unsigned>(f.degree(1))}));
}

}  // namespace saturation_detail

/// One contact type per determination class; branches must be expanded past
/// the discriminant order.
inline std::vector<ContactType> contact_exponents(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  std::vector<ContactType> out;
  Rat limit = saturation_detail::common_truncation(a, b);
  FractionSeries sa = branch_as_series(a, 0);
  for (unsigned k : determination_classes(a, b)) {
    auto e = first_difference(sa, branch_as_series(b, k), limit);
    if (!e) throw Error(ErrorKind::InsufficientTruncation, "branch difference not separated below the truncation order");
    out.push_back(saturation_detail::make_type(a, b, k, *e));
  }
  return out;
}

/// Every self-contact and cross-branch type of a reduced y-regular germ.
inline SaturationProfile saturation_profile(const BiPoly& f) {
  require_y_regular_reduced(f);
  BiPoly fm = saturation_detail::monic_in_y(f);
  SaturationProfile prof;
  prof.curve_hash = curve_hash(fm);
  prof.discriminant_order = discriminant_order(fm);
  prof.branches = puiseux_expand(fm, Rat(prof.discriminant_order + 1));
  const auto& br = prof.branches;
  for (std::size_t i = 0; i < br.size(); ++i)
    for (std::size_t j = i; j < br.size(); ++j) {
      auto types = contact_exponents(br[i], br[j]);
      prof.per_pair_class_count[{br[i].branch_id, br[j].branch_id}] = static_cast<unsigned>(types.size());
      for (auto& t : types) prof.types.push_back(t);
    }
  std::set<Rat> distinct;
  for (const auto& t : prof.types) distinct.insert(t.exponent);
  prof.distinct_exponents.assign(distinct.begin(), distinct.end());
  return prof;
}

namespace saturation_detail {

/// Expanded branches with h restricted to each, all certified against the
/// resultant bounds of p and q.
struct FractionData {
  BiPoly fm;
  std::vector<PuiseuxBranch> branches;
  std::vector<FractionSeries> h;                 // determination 0
  std::vector<std::optional<Rat>> ord_h;         // nullopt: h vanishes on the branch
  std::vector<std::size_t> ord_q_s;              // ord of q on the s grid
  std::optional<unsigned> undefined_branch;
  RestrictionBound rq;
};

inline FractionData analyze(const BiPoly& p, const BiPoly& q, const BiPoly& f, const Rat& min_order) {
  require_y_regular_reduced(f);
  FractionData fd;
  fd.fm = monic_in_y(f);
  fd.rq = restriction_bound(q, fd.fm);
  RestrictionBound rp = restriction_bound(p, fd.fm);
  int d0 = discriminant_order(fd.fm);
  Rat T = std::max(Rat(std::max({d0, fd.rq.required_order(), rp.required_order()}) + 1), min_order);
  fd.branches = puiseux_expand(fd.fm, T);
  for (auto& b : fd.branches) b = reexpand(b, T);
  for (const auto& b : fd.branches)
    if (vanishes_on(fd.rq, b)) {
      fd.undefined_branch = b.branch_id;
      return fd;
    }
  for (const auto& b : fd.branches) {
    FractionSeries hs = restrict_fraction(p, q, b, 0);
    std::optional<Rat> o = hs.order();
    if (!o && !vanishes_on(rp, b))
      throw Error(ErrorKind::InsufficientTruncation, "numerator order exceeds its certified bound");
    if (!o) hs.truncation_order = Rat(1L << 30);  // h vanishes exactly
    fd.ord_h.push_back(o);
    fd.ord_q_s.push_back(*series::order(restrict_polynomial(q, b)));
    fd.h.push_back(std::move(hs));
  }
  return fd;
}

/// Upper bound on every finite order of h(beta) - h(beta') over pairs of
/// branch determinations, or nullopt when h takes a single value.
///
/// G(x, z) = Res_y(f_eff, q z - p) has the values of h as roots. With G~ its
/// primitive squarefree part in z, of degree d and leading coefficient l,
/// the roots l*h_i are integral, so every ord(h_i - h_j) >= -ord l, and
/// ord Disc(G~) = (2d - 2) ord l + sum over ordered pairs of ord(h_i - h_j).
inline std::optional<Rat> difference_bound(const BiPoly& p, const BiPoly& q, const BiPoly& f_eff) {
  auto lift3 = [](const BiPoly& g) {
    TriPoly::Terms t;
    for (const auto& [e, c] : g.terms()) t[{e[0], e[1], 0u}] = c;
    return TriPoly(t);
  };
  TriPoly Z = TriPoly::variable(2);
  BiPoly G = resultant_y(lift3(f_eff), lift3(q) * Z - lift3(p));
  if (G.is_zero()) throw Error(ErrorKind::DenominatorVanishesOnBranch, "p and q share a component with the curve");
  using namespace bivariate;
  Rec pp = primitive_part(to_rec(G, 1));
  if (deg(pp) <= 1) return std::nullopt;
  BiPoly Gt = squarefree_part(from_rec(pp, 1), 1);
  Rec rt = to_rec(Gt, 1);
  int d = deg(rt);
  if (d <= 1) return std::nullopt;
  int ord_l = rt.back().order();
  QPoly R = resultant(Gt, Gt.derivative(1), 1);
  int D = R.order() - ord_l;
  long others = static_cast<long>(d) * (d - 1) - 2 - (2L * d - 2);
  return make_rat(D, 2) + Rat(others * ord_l) / Rat(2);
}

}  // namespace saturation_detail

/// Valuative boundedness test: h = p/q is bounded near the origin on the
/// curve iff its order on every branch is nonnegative.
inline BoundednessReport is_bounded_fraction(const BiPoly& p, const BiPoly& q, const BiPoly& f) {
  if (q.is_zero()) throw Error(ErrorKind::DenominatorVanishesOnBranch, "q is the zero polynomial");
  auto fd = saturation_detail::analyze(p, q, f, Rat(0));
  if (fd.undefined_branch)
    throw Error(ErrorKind::DenominatorVanishesOnBranch, "q vanishes on branch " + std::to_string(*fd.undefined_branch));
  BoundednessReport r;
  r.orders = fd.ord_h;
  for (const auto& o : r.orders)
    if (o && *o < 0) r.bounded = false;
  return r;
}

/// Lipschitz test: h must be bounded and, on every contact type, the
/// difference of h across the two determinations must have order at least
/// the contact exponent.
inline LipschitzReport is_lipschitz_fraction(const BiPoly& p, const BiPoly& q, const BiPoly& f) {
  LipschitzReport rep;
  rep.p = p;
  rep.q = q;
  if (q.is_zero()) {
    rep.verdict = Verdict::Undefined;
    return rep;
  }
  auto fd = saturation_detail::analyze(p, q, f, Rat(0));
  rep.branches = fd.branches;
  if (fd.undefined_branch) {
    rep.verdict = Verdict::Undefined;
    rep.undefined_branch = fd.undefined_branch;
    return rep;
  }
  BiPoly f_eff = fd.rq.common.degree(1) > 0 ? exact_quotient(fd.fm, fd.rq.common) : fd.fm;
  rep.difference_bound = saturation_detail::difference_bound(p, q, f_eff);
  if (rep.difference_bound) {
    // Each h series must reach past the bound.
    Rat need(0);
    bool short_series = false;
    for (std::size_t i = 0; i < fd.branches.size(); ++i) {
      if (!fd.ord_h[i]) continue;
      const auto& b = fd.branches[i];
      Rat w = make_rat(static_cast<long>(fd.ord_q_s[i]), static_cast<long>(b.ramification_index));
      Rat req = *rep.difference_bound + w - std::min(Rat(0), *fd.ord_h[i]);
      need = std::max(need, req);
      if (fd.h[i].truncation_order <= *rep.difference_bound) short_series = true;
    }
    if (short_series) {
      fd = saturation_detail::analyze(p, q, f, need);
      rep.branches = fd.branches;
    }
  }
  rep.boundedness = fd.ord_h;
  bool bounded = true;
  for (const auto& o : fd.ord_h)
    if (o && *o < 0) bounded = false;
  bool all_pass = true;
  const auto& br = fd.branches;
  for (std::size_t i = 0; i < br.size(); ++i)
    for (std::size_t j = i; j < br.size(); ++j) {
      for (const auto& t : contact_exponents(br[i], br[j])) {
        TypeCheck tc;
        tc.type = t;
        FractionSeries hb = fd.h[j];
        for (auto& [e, c] : hb.terms) c.turns = determination_turns(t.class_rep, e);
        Rat limit = std::min(fd.h[i].truncation_order, hb.truncation_order);
        tc.nu = first_difference(fd.h[i], hb, limit);
        if (!tc.nu && rep.difference_bound && limit <= *rep.difference_bound)
          throw Error(ErrorKind::InsufficientTruncation, "difference series not certified");
        tc.pass = !tc.nu || *tc.nu >= t.exponent;
        all_pass = all_pass && tc.pass;
        rep.per_type.push_back(tc);
      }
    }
  if (!bounded) rep.verdict = Verdict::Unbounded;
  else rep.verdict = all_pass ? Verdict::Lipschitz : Verdict::BoundedNotLipschitz;
  return rep;
}

/// Valuative test for h = p/q in the integral closure of the ideal
/// generated by `generators`: ord h >= min_i ord g_i on every branch.
inline IdealMembership integral_closure_member(const BiPoly& p, const BiPoly& q, const std::vector<BiPoly>& generators,
                                               const BiPoly& f) {
  bool any = false;
  for (const auto& g : generators) any = any || !g.is_zero();
  if (!any) throw Error(ErrorKind::EmptyIdeal, "no nonzero generators");
  if (q.is_zero()) throw Error(ErrorKind::DenominatorVanishesOnBranch, "q is the zero polynomial");
  BiPoly fm = saturation_detail::monic_in_y(f);
  std::vector<RestrictionBound> rg;
  int need = 0;
  for (const auto& g : generators) {
    rg.push_back(restriction_bound(g, fm));
    need = std::max(need, rg.back().required_order());
  }
  auto fd = saturation_detail::analyze(p, q, f, Rat(need + 1));
  if (fd.undefined_branch)
    throw Error(ErrorKind::DenominatorVanishesOnBranch, "q vanishes on branch " + std::to_string(*fd.undefined_branch));
  IdealMembership out;
  out.ord_h = fd.ord_h;
  for (std::size_t i = 0; i < fd.branches.size(); ++i) {
    const auto& b = fd.branches[i];
    std::optional<Rat> best;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      if (vanishes_on(rg[k], b)) continue;
      auto o = restricted_order(generators[k], b);
      if (!o) throw Error(ErrorKind::InsufficientTruncation, "generator order exceeds its certified bound");
      if (!best || *o < *best) best = o;
    }
    if (!best) throw Error(ErrorKind::EmptyIdeal, "all generators vanish on branch " + std::to_string(b.branch_id));
    out.min_generator_order.push_back(*best);
    if (fd.ord_h[i]) {
      out.margin.push_back(*fd.ord_h[i] - *best);
      if (*fd.ord_h[i] < *best) out.member = false;
    } else {
      out.margin.push_back(std::nullopt);
    }
  }
  return out;
}

/// (number of types, classes per type) for a pair of distinct branches:
/// a shared tangent gives gcd(n_a, n_b) types of one class each, distinct
/// tangents a single type carrying all gcd(n_a, n_b) classes.
inline Prop45 prop_4_5_expected(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  unsigned g = static_cast<unsigned>(std::gcd(a.ramification_index, b.ramification_index));
  bool same = phased_equal(tangent_slope(a), Rat(0), tangent_slope(b), Rat(0));
  return same ? Prop45{g, 1} : Prop45{1, g};
}

/// The same count read off computed contact types of one pair: classes of
/// exponent 1 merge into a single type; classes above 1 stay separate.
/// Returns {0, 0} for a mixture, which cannot occur for a valid expansion.
inline Prop45 prop_4_5_observed(const std::vector<ContactType>& classes) {
  std::size_t ones = 0;
  for (const auto& t : classes) ones += t.exponent == 1 ? 1 : 0;
  auto n = static_cast<unsigned>(classes.size());
  if (ones == classes.size()) return {1, n};
  if (ones == 0) return {n, 1};
  return {0, 0};
}

struct ShearTrial {
  Rat lambda;
  std::vector<Rat> distinct_exponents;
  std::vector<Rat> exponents;  // full multiset, sorted
};

struct ShearStability {
  bool stable = true;
  std::vector<Rat> base_distinct;
  std::vector<Rat> base_exponents;
  std::vector<ShearTrial> trials;
};

/// Recomputes the profile after random shears (x, y) -> (x + lambda y, y) and
/// compares exponents with the unsheared profile. Shears along a tangent or
/// that break y-regularity are skipped.
inline ShearStability profile_shear_stability(const BiPoly& f, unsigned trials, std::uint64_t seed) {
  auto exps = [](const SaturationProfile& p) {
    std::vector<Rat> v;
    for (const auto& t : p.types) v.push_back(t.exponent);
    std::sort(v.begin(), v.end());
    return v;
  };
  ShearStability out;
  auto base = saturation_profile(make_y_regular(f).g);
  out.base_distinct = base.distinct_exponents;
  out.base_exponents = exps(base);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  BiPoly cone = tangent_cone(f);
  unsigned attempts = 0;
  while (out.trials.size() < trials && attempts++ < 64u * (trials + 1)) {
    long nu = num(rng);
    if (nu == 0) continue;
    Rat lambda = make_rat(nu, den(rng));
    if (form_at(cone, lambda) == 0) continue;
    BiPoly g = apply_shear(f, lambda);
    if (!is_y_regular(g)) continue;
    auto prof = saturation_profile(g);
    ShearTrial t{lambda, prof.distinct_exponents, exps(prof)};
    if (t.distinct_exponents != out.base_distinct || t.exponents != out.base_exponents) out.stable = false;
    out.trials.push_back(std::move(t));
  }
  return out;
}

}  // namespace satcurve
