#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>

#include "satcurve/error.hpp"

namespace satcurve {

using Int = mpz_class;
/// Exact rational; gmpxx keeps every result canonical (lowest terms, den > 0).
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline long to_long(const Int& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::PrecisionOverflow, "integer exceeds machine range");
  return z.get_si();
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Accepts "p" or "p/q" with optional sign.
inline Rat parse_rat(const std::string& text) {
  Rat r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorKind::InvalidArgument, "not a rational literal: '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

/// Rational power with a nonnegative integer exponent.
inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;
}

}  // namespace satcurve
