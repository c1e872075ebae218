#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "satcurve/puiseux.hpp"
#include "satcurve/real.hpp"
#include "satcurve/saturation.hpp"

namespace satcurve {

struct SamplePlan {
  std::vector<double> radii;  // strictly decreasing
  unsigned pairs_per_radius = 4;
  std::uint64_t seed = 1;
  mpfr_prec_t float_precision = 128;
  double slope_tolerance = 0.15;
  double exponent_tolerance = 0.1;

  /// `count` radii from r0 down to r_min, equally spaced in log scale.
  static SamplePlan geometric(double r0, double r_min, unsigned count) {
    SamplePlan p;
    for (unsigned j = 0; j < count; ++j)
      p.radii.push_back(r0 * std::pow(r_min / r0, count == 1 ? 0.0 : static_cast<double>(j) / (count - 1)));
    return p;
  }
  static SamplePlan standard() { return geometric(1e-1, 1e-4, 10); }

  void validate() const {
    if (radii.size() < 2) throw Error(ErrorKind::InvalidArgument, "a sample plan needs at least two radii");
    if (pairs_per_radius < 1) throw Error(ErrorKind::InvalidArgument, "pairs_per_radius must be positive");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > 0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
      if (i > 0 && !(radii[i] < radii[i - 1])) throw Error(ErrorKind::InvalidArgument, "radii must decrease strictly");
    }
  }
};

struct RadiusSample {
  double radius = 0;
  double value = 0;  // 0 when every sample was numerically zero
};

struct SlopeMeasurement {
  double slope = 0;
  bool degenerate = false;
  std::vector<RadiusSample> data;
};

struct ConsistencyReport {
  double measured_slope = 0;
  std::optional<Rat> predicted_slope;  // nullopt: every difference vanishes
  Verdict verdict = Verdict::Lipschitz;
  bool degenerate = false;
  bool agree = false;
  double tolerance = 0;
  std::vector<RadiusSample> residuals;
};

struct ContactMeasurement {
  double measured = 0;
  Rat expected;
  bool agree = false;
  std::vector<RadiusSample> data;
};

struct ResidualCheck {
  bool bounded = true;
  double slope = 0;
  double max_normalized = 0;
  std::vector<RadiusSample> data;
};

namespace numeric_detail {

/// Value, and scale (sum of term magnitudes) for judging cancellation.
inline std::pair<Complex, Real> eval_with_scale(const BiPoly& g, const Complex& x, const Complex& y) {
  mpfr_prec_t bits = x.precision();
  Complex v(bits);
  Real scale(bits);
  for (const auto& [e, c] : g.terms()) {
    Complex t = x.pow(e[0]) * y.pow(e[1]) * Real(c, bits);
    v += t;
    scale = scale + t.norm();
  }
  return {v, scale};
}

inline Complex eval(const BiPoly& g, const Complex& x, const Complex& y) { return eval_with_scale(g, x, y).first; }

/// Numeric copy of a branch with coefficients converted once.
class BranchEvaluator {
 public:
  BranchEvaluator(const PuiseuxBranch& b, mpfr_prec_t bits) : b_(b), bits_(bits) {
    for (const auto& [e, c] : b.terms) coeffs_.emplace_back(grid_index(e, b.ramification_index), c.numeric(bits));
    dfdy_ = b.curve.derivative(1);
    d0_ = std::max(1, discriminant_order(b.curve));
  }

  /// y on determination k over x = r exp(i theta), series value only.
  Complex series_value(double r, const Real& theta, unsigned k) const {
    check_radius(r);
    unsigned n = b_.ramification_index;
    Real rr(r, bits_);
    Real rn = exp(log(rr) / Real(Rat(static_cast<long>(n)), bits_));
    Real ang = (theta + Real::pi(bits_) * Real(Rat(2 * static_cast<long>(k % n)), bits_)) /
               Real(Rat(static_cast<long>(n)), bits_);
    Complex s = Complex::polar(rn, ang);
    Complex y(bits_);
    for (const auto& [idx, c] : coeffs_) y += c * s.pow(idx);
    return y;
  }

  /// Series value refined by Newton's method on the curve; the refinement is
  /// kept only if it stays well inside the separation r^d0 between roots.
  Complex value(double r, const Real& theta, unsigned k) const {
    Complex y0 = series_value(r, theta, k);
    if (b_.exact) return y0;
    Complex x = Complex::polar(Real(r, bits_), theta);
    Complex y = y0;
    for (int it = 0; it < 20; ++it) {
      Complex fy = eval(dfdy_, x, y);
      if (fy.norm().is_zero()) break;
      Complex step = eval(b_.curve, x, y) / fy;
      y -= step;
      if (step.norm().to_double() <= std::ldexp(y.norm().to_double() + r, -static_cast<int>(bits_) + 8)) break;
    }
    double moved = (y - y0).norm().to_double();
    return moved < 0.25 * std::pow(r, d0_) ? y : y0;
  }

  Complex x_at(double r, const Real& theta) const { return Complex::polar(Real(r, bits_), theta); }
  const PuiseuxBranch& branch() const { return b_; }

 private:
  void check_radius(double r) const {
    if (r > b_.validity_radius * (1.0 + 1e-12)) throw Error(ErrorKind::RadiusTooLarge, "radius exceeds branch validity radius");
  }

  PuiseuxBranch b_;
  mpfr_prec_t bits_;
  std::vector<std::pair<unsigned, Complex>> coeffs_;
  BiPoly dfdy_;
  int d0_ = 1;
};

/// Least-squares slope of log(value) against log(radius) over the smallest
/// half of the radii with nonzero values.
inline std::optional<double> loglog_slope(std::vector<RadiusSample> data) {
  std::sort(data.begin(), data.end(), [](const auto& a, const auto& b) { return a.radius < b.radius; });
  std::vector<RadiusSample> use;
  std::size_t half = (data.size() + 1) / 2;
  for (std::size_t i = 0; i < data.size() && use.size() < std::max<std::size_t>(half, 2); ++i)
    if (data[i].value > 0) use.push_back(data[i]);
  if (use.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(use.size());
  for (const auto& d : use) {
    double lx = std::log(d.radius), ly = std::log(d.value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> usable_radii(const SamplePlan& plan, double validity) {
  plan.validate();
  std::vector<double> out;
  for (double r : plan.radii)
    if (r <= validity) out.push_back(r);
  if (out.size() < 2) throw Error(ErrorKind::RadiusTooLarge, "fewer than two radii inside the validity radius");
  return out;
}

inline std::vector<Real> angles(std::mt19937_64& rng, unsigned count, mpfr_prec_t bits) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Real> out;
  for (unsigned i = 0; i < count; ++i) out.push_back(Real::pi(bits) * Real(u(rng), bits));
  return out;
}

inline bool negligible(const Real& diff, const Real& scale, mpfr_prec_t bits) {
  return diff.is_zero() || diff.to_double() <= std::ldexp(scale.to_double(), -static_cast<int>(bits) + 20);
}

}  // namespace numeric_detail

/// For each radius, the largest |h(P) - h(P')| / |P - P'| over same-fiber
/// pairs P, P' (all determinations of all branches over random x with
/// |x| = r), and the log-log slope of these maxima. A germ with every
/// difference zero is reported as degenerate.
inline SlopeMeasurement empirical_lipschitz_slope(const BiPoly& p, const BiPoly& q, const BiPoly& f, const SamplePlan& plan) {
  using namespace numeric_detail;
  require_y_regular_reduced(f);
  BiPoly fm = f.scaled(Rat(1) / f.coeff({0u, static_cast<unsigned>(f.degree(1))}));
  int d0 = discriminant_order(fm);
  auto branches = puiseux_expand(fm, Rat(d0 + 2));
  mpfr_prec_t bits = plan.float_precision;
  std::vector<BranchEvaluator> ev;
  double validity = 1.0;
  for (const auto& b : branches) {
    ev.emplace_back(b, bits);
    validity = std::min(validity, b.validity_radius);
  }
  auto radii = usable_radii(plan, validity);
  std::mt19937_64 rng(plan.seed);
  SlopeMeasurement out;
  bool any = false;
  for (double r : radii) {
    double best = 0;
    for (const auto& th : angles(rng, plan.pairs_per_radius, bits)) {
      Complex x = ev.front().x_at(r, th);
      std::vector<Complex> ys, hs;
      std::vector<Real> hscale;
      for (const auto& e : ev)
        for (unsigned k = 0; k < e.branch().ramification_index; ++k) {
          Complex y = e.value(r, th, k);
          auto [pv, ps] = eval_with_scale(p, x, y);
          auto [qv, qs] = eval_with_scale(q, x, y);
          if (negligible(qv.norm(), qs, bits))
            throw Error(ErrorKind::DenominatorVanishesOnBranch, "q vanishes numerically at a sample point");
          ys.push_back(y);
          hs.push_back(pv / qv);
          hscale.push_back(ps / qv.norm() + (pv / qv).norm());
        }
      for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = i + 1; j < ys.size(); ++j) {
          Real dh = (hs[i] - hs[j]).norm();
          if (negligible(dh, hscale[i] + hscale[j], bits)) continue;
          double ratio = (dh / (ys[i] - ys[j]).norm()).to_double();
          best = std::max(best, ratio);
        }
    }
    any = any || best > 0;
    out.data.push_back({r, best});
  }
  auto s = loglog_slope(out.data);
  out.degenerate = !any || !s;
  out.slope = s ? *s : 0.0;
  return out;
}

/// Compares the measured slope with min over contact types of nu - mu/m.
inline ConsistencyReport crosscheck(const BiPoly& p, const BiPoly& q, const BiPoly& f, const SamplePlan& plan) {
  auto lip = is_lipschitz_fraction(p, q, f);
  if (lip.verdict == Verdict::Undefined)
    throw Error(ErrorKind::DenominatorVanishesOnBranch, "q vanishes on a branch");
  ConsistencyReport rep;
  rep.verdict = lip.verdict;
  rep.tolerance = plan.slope_tolerance;
  for (const auto& t : lip.per_type) {
    if (!t.nu) continue;
    Rat v = *t.nu - t.type.exponent;
    if (!rep.predicted_slope || v < *rep.predicted_slope) rep.predicted_slope = v;
  }
  auto m = empirical_lipschitz_slope(p, q, f, plan);
  rep.measured_slope = m.slope;
  rep.degenerate = m.degenerate;
  rep.residuals = m.data;
  if (!rep.predicted_slope) rep.agree = m.degenerate;
  else rep.agree = !m.degenerate && std::abs(m.slope - rep.predicted_slope->get_d()) <= plan.slope_tolerance;
  return rep;
}

/// Log-log slope of |y_a(x) - y_b(x)| (determinations 0 and k) against |x|.
inline ContactMeasurement verify_contact_exponent(const PuiseuxBranch& a, const PuiseuxBranch& b, unsigned k,
                                                  const SamplePlan& plan) {
  using namespace numeric_detail;
  ContactMeasurement out;
  bool found = false;
  for (const auto& t : contact_exponents(a, b))
    if (t.class_rep == k) {
      out.expected = t.exponent;
      found = true;
    }
  if (!found) throw Error(ErrorKind::InvalidArgument, "no determination class with offset " + std::to_string(k));
  mpfr_prec_t bits = plan.float_precision;
  BranchEvaluator ea(a, bits), eb(b, bits);
  auto radii = usable_radii(plan, std::min(a.validity_radius, b.validity_radius));
  std::mt19937_64 rng(plan.seed);
  for (double r : radii) {
    double best = 0;
    for (const auto& th : angles(rng, plan.pairs_per_radius, bits))
      best = std::max(best, (ea.value(r, th, 0) - eb.value(r, th, k)).norm().to_double());
    out.data.push_back({r, best});
  }
  auto s = loglog_slope(out.data);
  out.measured = s ? *s : 0.0;
  out.agree = s && std::abs(*s - out.expected.get_d()) <= plan.exponent_tolerance;
  return out;
}

/// max |f(x, y_b(x))| / |x|^truncation_order per radius, using the series
/// value only. Bounded when the normalized residual does not grow as r -> 0.
inline ResidualCheck branch_residual_check(const PuiseuxBranch& b, const BiPoly& f, const SamplePlan& plan) {
  using namespace numeric_detail;
  mpfr_prec_t bits = plan.float_precision;
  BranchEvaluator ev(b, bits);
  auto radii = usable_radii(plan, b.validity_radius);
  std::mt19937_64 rng(plan.seed);
  ResidualCheck out;
  double tau = b.truncation_order.get_d();
  for (double r : radii) {
    double best = 0;
    for (const auto& th : angles(rng, plan.pairs_per_radius, bits))
      for (unsigned k = 0; k < b.ramification_index; ++k) {
        auto [v, scale] = eval_with_scale(f, ev.x_at(r, th), ev.series_value(r, th, k));
        if (negligible(v.norm(), scale, bits)) continue;
        best = std::max(best, v.norm().to_double() / std::pow(r, tau));
      }
    out.data.push_back({r, best});
    out.max_normalized = std::max(out.max_normalized, best);
  }
  auto s = loglog_slope(out.data);
  out.slope = s ? *s : 0.0;
  out.bounded = !s || *s >= -plan.slope_tolerance;
  return out;
}

}  // namespace satcurve
