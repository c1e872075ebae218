#pragma once

#include "satcurve/bipoly_ops.hpp"
#include "satcurve/error.hpp"
#include "satcurve/mpoly.hpp"

namespace satcurve {

/// Multiplicity of the germ at the origin (order of the lowest form).
inline int multiplicity(const BiPoly& f) { return f.order(); }

/// Lowest-degree homogeneous form; its linear factors are the tangent lines.
inline BiPoly tangent_cone(const BiPoly& f) { return f.initial_form(); }

/// f(x + lambda*y, y).
inline BiPoly apply_shear(const BiPoly& f, const Rat& lambda) {
  if (lambda == 0) return f;
  return f.substitute({X() + BiPoly(lambda) * Y(), Y()});
}

/// Value of a binary form at (lambda, 1).
inline Rat form_at(const BiPoly& form, const Rat& lambda) { return form.eval({lambda, Rat(1)}); }

/// True when x = 0 is not a tangent line and the leading y-coefficient is a
/// nonzero constant.
inline bool is_y_regular(const BiPoly& f) {
  if (f.is_zero() || f.constant_term() != 0) return false;
  int d = f.degree(1);
  if (d <= 0) return false;
  BiPoly lead;
  for (const auto& [e, c] : f.terms())
    if (static_cast<int>(e[1]) == d) lead += BiPoly::monomial(e, c);
  if (lead.degree(0) != 0) return false;
  return f.initial_form().coeff({0u, static_cast<unsigned>(f.order())}) != 0;
}

/// Position k of the deterministic shear sequence 0, 1, -1, 2, -2, ...
inline Rat shear_candidate(unsigned long k) {
  if (k == 0) return 0;
  long v = static_cast<long>((k + 1) / 2);
  return Rat(k % 2 == 1 ? v : -v);
}

struct YRegularForm {
  BiPoly g;    // monic in y
  Rat shear;   // lambda with g proportional to f(x + lambda*y, y)
};

/// Brings a germ into y-regular, monic form by the first admissible shear.
/// lambda = 0 is used whenever f already qualifies; otherwise the sequence is
/// scanned starting at position seed + 1.
inline YRegularForm make_y_regular(const BiPoly& f, unsigned long seed = 0) {
  if (f.is_zero()) throw Error(ErrorKind::NotAGerm, "the zero polynomial does not define a curve germ");
  if (f.constant_term() != 0) throw Error(ErrorKind::NotAGerm, "f(0,0) != 0");
  auto normalize = [](const BiPoly& g, const Rat& lambda) {
    int d = g.degree(1);
    Rat lc = g.coeff({0u, static_cast<unsigned>(d)});
    return YRegularForm{g.scaled(Rat(1) / lc), lambda};
  };
  if (is_y_regular(f)) return normalize(f, 0);
  for (unsigned long k = seed + 1; k < seed + 4096; ++k) {
    Rat lambda = shear_candidate(k);
    if (lambda == 0) continue;
    BiPoly g = apply_shear(f, lambda);
    if (is_y_regular(g)) return normalize(g, lambda);
  }
  throw Error(ErrorKind::NotYRegular, "no admissible shear found");
}

}  // namespace satcurve
