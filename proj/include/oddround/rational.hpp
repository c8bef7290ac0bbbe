// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <string>

namespace oddround {

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator. GMP maintains both invariants for us.
using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt pow2z(long e) {
  assert(e >= 0);
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

/// 2^e as an exact rational, e of either sign.
inline Rational pow2q(long e) {
  if (e >= 0) return Rational(pow2z(e));
  return Rational(1, pow2z(-e));
}

inline Rational rational_abs(const Rational& x) {
  Rational r;
  mpq_abs(r.get_mpq_t(), x.get_mpq_t());
  return r;
}

/// floor(x) as a big integer (rounds toward -infinity).
inline BigInt rational_floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline BigInt rational_ceil(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Largest e with 2^e <= x. Requires x > 0.
inline long floor_log2(const Rational& x) {
  assert(sgn(x) > 0);
  long nb = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
  long db = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  long e = nb - db;  // 2^(e-1) < x < 2^(e+1), so the answer is e or e-1
  if (x >= pow2q(e)) return e;
  return e - 1;
}

/// x * 2^e, exact.
inline Rational scale2(const Rational& x, long e) {
  Rational r = x;
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  return r;
}

/// True iff x = m / 2^k for integers m, k (binary-representable).
inline bool is_dyadic(const Rational& x) {
  BigInt den = x.get_den();
  return mpz_scan1(den.get_mpz_t(), 0) == mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
}

/// Directed rounding of x onto the grid of rationals with ~prec significant
/// bits (dyadic). `up` selects the ceiling, otherwise the floor.
inline Rational round_to_precision(const Rational& x, long prec, bool up) {
  if (sgn(x) == 0) return Rational(0);
  long e = floor_log2(rational_abs(x));
  long shift = prec - 1 - e;  // keep ~prec bits of mantissa
  Rational scaled = scale2(x, shift);
  BigInt m = up ? rational_ceil(scaled) : rational_floor(scaled);
  return scale2(Rational(m), -shift);
}

inline std::string rational_to_string(const Rational& x) {
  return x.get_str();  // "num/den" or plain integer
}

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace oddround
