#pragma once

#include <algorithm>
#include <vector>

#include "satcurve/real.hpp"
#include "satcurve/upoly.hpp"

namespace satcurve {

/// A root approximation together with an inclusion radius: the closed disc
/// of that radius around `center` contains exactly one root.
struct IsolatedRoot {
  Complex center;
  Real radius;
};

namespace detail {

inline std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& c, const Complex& z) {
  mpfr_prec_t bits = z.precision();
  Complex p(bits), dp(bits);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

inline std::vector<Complex> to_complex(const QPoly& p, mpfr_prec_t bits) {
  std::vector<Complex> c;
  for (const auto& a : p.coeffs()) c.emplace_back(a, bits);
  return c;
}

/// Aberth-Ehrlich iteration from the current approximations.
inline void aberth(const std::vector<Complex>& c, std::vector<Complex>& z, mpfr_prec_t bits, int max_iter) {
  std::size_t n = z.size();
  Real tol = Real::pow2(-static_cast<long>(bits) + 8, bits);
  for (int it = 0; it < max_iter; ++it) {
    Real worst(bits);
    for (std::size_t k = 0; k < n; ++k) {
      auto [p, dp] = eval_with_derivative(c, z[k]);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      Complex w = p / dp;
      Complex s(bits);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex d = z[k] - z[j];
        if (d.re.is_zero() && d.im.is_zero()) continue;
        s += Complex(Real(Rat(1), bits), Real(bits)) / d;
      }
      Complex corr = w / (Complex(Real(Rat(1), bits), Real(bits)) - w * s);
      z[k] -= corr;
      Real scale = z[k].norm();
      if (scale < Real(Rat(1), bits)) scale = Real(Rat(1), bits);
      Real rel = corr.norm() / scale;
      if (rel > worst) worst = rel;
    }
    if (worst < tol) return;
  }
}

}  // namespace detail

/// All complex roots of a squarefree polynomial with complex coefficients,
/// each with a certified isolating disc. Retries at doubled precision when
/// the discs are not pairwise disjoint.
inline std::vector<IsolatedRoot> isolate_roots(const std::vector<Complex>& coeffs_in, mpfr_prec_t bits = Real::kDefaultBits) {
  std::vector<IsolatedRoot> out;
  std::size_t n = coeffs_in.size() - 1;
  if (coeffs_in.size() <= 1) return out;
  for (mpfr_prec_t prec = bits; prec <= 8 * bits; prec *= 2) {
    std::vector<Complex> c;
    for (const auto& a : coeffs_in) c.push_back(a.with_precision(prec));
    // Cauchy bound for the initial circle.
    Real lead = c.back().norm(), bound(Rat(0), prec);
    for (std::size_t i = 0; i < n; ++i) {
      Real r = c[i].norm() / lead;
      if (r > bound) bound = r;
    }
    bound += Real(Rat(1), prec);
    std::vector<Complex> z;
    Real two_pi = Real::pi(prec) * Real(Rat(2), prec);
    for (std::size_t k = 0; k < n; ++k) {
      Real ang = two_pi * Real(make_rat(static_cast<long>(k), static_cast<long>(n)), prec) + Real(make_rat(2, 5), prec);
      z.push_back(Complex::polar(bound * Real(make_rat(1, 2), prec), ang));
    }
    detail::aberth(c, z, prec, 400 + 20 * static_cast<int>(n));
    std::vector<IsolatedRoot> cand;
    bool ok = true;
    for (auto& zk : z) {
      auto [p, dp] = detail::eval_with_derivative(c, zk);
      if (dp.norm().is_zero()) {
        ok = false;
        break;
      }
      Real rad = (p / dp).norm() * Real(Rat(static_cast<long>(n)), prec);
      // Floor the radius at the working-precision noise level.
      Real noise = Real::pow2(-static_cast<long>(prec) + 16, prec) * (zk.norm() + Real(Rat(1), prec));
      if (rad < noise) rad = noise;
      cand.push_back({zk, rad});
    }
    for (std::size_t i = 0; ok && i < cand.size(); ++i)
      for (std::size_t j = i + 1; ok && j < cand.size(); ++j)
        if ((cand[i].center - cand[j].center).norm() <= cand[i].radius + cand[j].radius) ok = false;
    if (ok) return cand;
  }
  throw Error(ErrorKind::PrecisionOverflow, "root isolation failed to separate roots");
}

inline std::vector<IsolatedRoot> isolate_roots(const QPoly& p, mpfr_prec_t bits = Real::kDefaultBits) {
  return isolate_roots(detail::to_complex(p, bits), bits);
}

/// Newton refinement of an isolated simple root to `bits` of precision.
inline Complex refine_root(const std::vector<Complex>& coeffs, Complex z, mpfr_prec_t bits) {
  std::vector<Complex> c;
  for (const auto& a : coeffs) c.push_back(a.with_precision(bits));
  z = z.with_precision(bits);
  for (int i = 0; i < 200; ++i) {
    auto [p, dp] = detail::eval_with_derivative(c, z);
    if (p.norm().is_zero()) break;
    Complex step = p / dp;
    z -= step;
    if (step.norm() < Real::pow2(-static_cast<long>(bits) + 4, bits) * (z.norm() + Real(Rat(1), bits))) break;
  }
  return z;
}

/// Deterministic total order on root approximations: real part descending,
/// then imaginary part descending. Distinct isolated roots never tie.
inline bool canonical_before(const Complex& a, const Complex& b) {
  Real tol = Real::pow2(-static_cast<long>(std::min(a.precision(), b.precision())) / 2, a.precision());
  Real dr = a.re - b.re;
  if (abs(dr) > tol) return dr.sign() > 0;
  return (a.im - b.im).sign() > 0;
}

}  // namespace satcurve
