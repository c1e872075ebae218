#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "satcurve/factor.hpp"
#include "satcurve/regularize.hpp"
#include "satcurve/saturation.hpp"

namespace satcurve {

/// One-parameter family F(x, y; t), monic in y, with the sampled t values.
struct FamilyCurve {
  TriPoly poly;
  std::vector<Rat> t_range;
};

enum class EquisatVerdict { Equisaturated, NotEquisaturated, Inconclusive };

inline std::string to_string(EquisatVerdict v) {
  switch (v) {
    case EquisatVerdict::Equisaturated: return "Equisaturated";
    case EquisatVerdict::NotEquisaturated: return "NotEquisaturated";
    case EquisatVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct FiberReport {
  Rat t;
  Rat shear;                       // applied to reach a y-regular fiber
  SaturationProfile profile;
  std::vector<Rat> exponents;      // full multiset of contact exponents, sorted
  std::vector<unsigned> root_pattern;  // multiplicities of reduced-discriminant roots near x = 0
};

struct EquisatReport {
  BiPoly discriminant;          // D(x, t), variable 1 is t
  BiPoly reduced_discriminant;  // squarefree part
  unsigned section_order = 0;   // a in D_red = x^a R(x, t)
  BiPoly residual;              // R(x, t)
  std::vector<FiberReport> per_t;
  EquisatVerdict verdict = EquisatVerdict::Inconclusive;
  std::optional<Rat> witness_t;           // special fiber
  std::optional<Rat> contrast_t;          // sampled fiber whose profile differs from it
  std::optional<FiberReport> witness_fiber;  // when the witness was not sampled
  std::string reason;
};

namespace family_detail {

inline BiPoly fiber(const TriPoly& F, const Rat& t) {
  BiPoly::Terms terms;
  for (const auto& [e, c] : F.terms()) terms[{e[0], e[1]}] += c * pow_rat(t, e[2]);
  return BiPoly(std::move(terms));
}

/// Restriction of a (x, t) polynomial to a fixed t, as a polynomial in x.
inline QPoly at_t(const BiPoly& D, const Rat& t) {
  std::vector<Rat> c(static_cast<std::size_t>(std::max(0, D.degree(0))) + 1, Rat(0));
  for (const auto& [e, v] : D.terms()) c[e[0]] += v * pow_rat(t, e[1]);
  return QPoly(std::move(c));
}

/// Restriction to x = 0, as a polynomial in t.
inline QPoly at_x0(const BiPoly& D) {
  std::vector<Rat> c(static_cast<std::size_t>(std::max(0, D.degree(1))) + 1, Rat(0));
  for (const auto& [e, v] : D.terms())
    if (e[0] == 0) c[e[1]] += v;
  return QPoly(std::move(c));
}

inline int sign_at(const QPoly& p, const Rat& a) {
  Rat v = p.eval(a);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Number of distinct real roots of p in the open interval (a, b), by Sturm.
inline int real_roots_between(const QPoly& p, const Rat& a, const Rat& b) {
  QPoly s = squarefree_part(p);
  if (s.degree() <= 0) return 0;
  std::vector<QPoly> seq{s, s.derivative()};
  while (seq.back().degree() > 0) {
    QPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto variations = [&](const Rat& x) {
    int v = 0, last = 0;
    for (const auto& q : seq) {
      int sg = sign_at(q, x);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  };
  int n = variations(a) - variations(b);
  if (sign_at(s, b) == 0) --n;
  return n;
}

/// Multiplicities of the roots of D(., t) in |x| < radius, or nullopt when an
/// isolating disc straddles the boundary.
inline std::optional<std::vector<unsigned>> root_pattern(const QPoly& Dt, double radius) {
  std::vector<unsigned> out;
  auto parts = squarefree_decomposition(Dt);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() <= 0) continue;
    for (const auto& r : isolate_roots(parts[i], 128)) {
      double c = r.center.norm().to_double(), w = r.radius.to_double();
      if (c + w < radius) out.push_back(static_cast<unsigned>(i + 1));
      else if (c - w < radius) return std::nullopt;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Rat> sorted_exponents(const SaturationProfile& p) {
  std::vector<Rat> v;
  for (const auto& t : p.types) v.push_back(t.exponent);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace family_detail

/// Res_y(F, dF/dy) as a polynomial in (x, t); F must have a nonzero
/// constant leading coefficient in y.
inline BiPoly family_discriminant_raw(const FamilyCurve& F) {
  int d = F.poly.degree(1);
  if (d <= 0) throw Error(ErrorKind::InvalidArgument, "the family does not involve y");
  for (const auto& [e, c] : F.poly.terms())
    if (static_cast<int>(e[1]) == d && (e[0] != 0 || e[2] != 0))
      throw Error(ErrorKind::InvalidArgument, "the family must be monic in y");
  return resultant_y(F.poly, F.poly.derivative(1));
}

/// Squarefree part of the discriminant, normalized monic in x.
inline BiPoly family_discriminant(const FamilyCurve& F) {
  BiPoly D = family_discriminant_raw(F);
  if (D.is_zero()) throw Error(ErrorKind::FiberNotReduced, "the generic fiber is not reduced");
  return squarefree_part(D, 0);
}

/// Equisaturation along t: fiber profiles must agree, and the reduced
/// discriminant must be x^a * R(x, t) with R(0, t) nonzero for every t in
/// the sampled range, so that no discriminant root meets the section x = 0.
inline EquisatReport equisaturation_check(const FamilyCurve& F) {
  using namespace family_detail;
  if (std::find(F.t_range.begin(), F.t_range.end(), Rat(0)) == F.t_range.end())
    throw Error(ErrorKind::InvalidArgument, "the sampled t values must include 0");
  EquisatReport rep;
  rep.discriminant = family_discriminant_raw(F);
  if (rep.discriminant.is_zero()) throw Error(ErrorKind::FiberNotReduced, "the generic fiber is not reduced");
  rep.reduced_discriminant = squarefree_part(rep.discriminant, 0);

  // D_red = x^a R with x not dividing R.
  BiPoly R = rep.reduced_discriminant;
  unsigned a = 0;
  while (!R.is_zero() && at_x0(R).is_zero()) {
    BiPoly::Terms shifted;
    for (const auto& [e, c] : R.terms()) shifted[{e[0] - 1, e[1]}] = c;
    R = BiPoly(std::move(shifted));
    ++a;
  }
  rep.section_order = a;
  rep.residual = R;

  std::vector<Rat> ts = F.t_range;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  // Nonzero roots of D_red(., 0) bound the disc where the pattern is read.
  double radius = 1.0;
  for (const auto& part : squarefree_decomposition(at_t(rep.reduced_discriminant, Rat(0))))
    if (part.degree() > 0)
      for (const auto& r : isolate_roots(part, 128)) {
        double c = r.center.norm().to_double(), w = r.radius.to_double();
        if (c > w) radius = std::min(radius, 0.5 * (c - w));
      }

  bool pattern_doubt = false;
  for (const auto& t : ts) {
    BiPoly ft = fiber(F.poly, t);
    if (ft.is_zero() || ft.constant_term() != 0)
      throw Error(ErrorKind::InvalidArgument, "fiber at t = " + to_string(t) + " does not pass through the origin");
    if (gcd(ft, ft.derivative(1)).degree(1) > 0)
      throw Error(ErrorKind::FiberNotReduced, "fiber at t = " + to_string(t) + " has a repeated factor");
    FiberReport fr;
    fr.t = t;
    auto reg = make_y_regular(ft);
    fr.shear = reg.shear;
    fr.profile = saturation_profile(reg.g);
    fr.exponents = sorted_exponents(fr.profile);
    auto pat = root_pattern(at_t(rep.reduced_discriminant, t), radius);
    if (pat) fr.root_pattern = *pat;
    else pattern_doubt = true;
    rep.per_t.push_back(std::move(fr));
  }

  const FiberReport* base = nullptr;
  for (const auto& fr : rep.per_t)
    if (fr.t == 0) base = &fr;

  // Where a discriminant root other than x = 0 meets the section.
  QPoly rho = at_x0(R);
  const Rat &lo = ts.front(), &hi = ts.back();
  std::optional<Rat> collision;
  bool irrational_collision = false;
  if (rho.eval(Rat(0)) == 0) {
    collision = Rat(0);
  } else if (sign_at(rho, lo) == 0 || sign_at(rho, hi) == 0 || real_roots_between(rho, lo, hi) > 0) {
    irrational_collision = true;
    for (const auto& fac : factor_over_q(rho)) {
      if (fac.factor.degree() != 1) continue;
      Rat root = -fac.factor[0] / fac.factor[1];
      if (root >= lo && root <= hi && (!collision || abs(root) < abs(*collision))) collision = root;
    }
    if (collision) irrational_collision = false;
  }

  if (collision) {
    rep.verdict = EquisatVerdict::NotEquisaturated;
    rep.witness_t = *collision;
    const FiberReport* wf = nullptr;
    for (const auto& fr : rep.per_t)
      if (fr.t == *collision) wf = &fr;
    if (!wf) {
      BiPoly ft = fiber(F.poly, *collision);
      if (gcd(ft, ft.derivative(1)).degree(1) <= 0) {
        FiberReport fr;
        fr.t = *collision;
        auto reg = make_y_regular(ft);
        fr.shear = reg.shear;
        fr.profile = saturation_profile(reg.g);
        fr.exponents = sorted_exponents(fr.profile);
        rep.witness_fiber = fr;
        wf = &*rep.witness_fiber;
      }
    }
    if (wf)
      for (const auto& fr : rep.per_t)
        if (fr.exponents != wf->exponents) {
          rep.contrast_t = fr.t;
          break;
        }
    rep.reason = "a discriminant root other than x = 0 meets the section at t = " + to_string(*collision);
    return rep;
  }
  for (const auto& fr : rep.per_t)
    if (fr.exponents != base->exponents) {
      rep.verdict = EquisatVerdict::NotEquisaturated;
      rep.witness_t = Rat(0);
      rep.contrast_t = fr.t;
      rep.reason = "fiber profiles at t = 0 and t = " + to_string(fr.t) + " differ";
      return rep;
    }
  if (irrational_collision) {
    rep.verdict = EquisatVerdict::Inconclusive;
    rep.reason = "a discriminant root meets x = 0 at an irrational t inside the sampled range";
    return rep;
  }
  for (const auto& fr : rep.per_t)
    if (fr.root_pattern != base->root_pattern) pattern_doubt = true;
  if (pattern_doubt) {
    rep.verdict = EquisatVerdict::Inconclusive;
    rep.reason = "discriminant root pattern near x = 0 could not be separated";
    return rep;
  }
  rep.verdict = EquisatVerdict::Equisaturated;
  rep.reason = "profiles agree and the ramification locus is x = 0 over the sampled range";
  return rep;
}

}  // namespace satcurve
