// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <mutex>
#include <stdexcept>

#include "oddround/functions.hpp"
#include "oddround/interval.hpp"

namespace oddround {
namespace series {

/// atanh(z) for an exact rational |z| <= 2/5, by the odd power series.
/// Positive terms: the truncation error is one-sided.
inline Ival atanh_series(const Rational& z, const IvalOps& ops) {
  Rational a = rational_abs(z);
  if (a >= Rational(1, 2)) throw std::logic_error("atanh argument too large");
  if (sgn(a) == 0) return Ival::point(0);
  Rational a2(a * a);
  Ival sum = Ival::point(0);
  Ival term = Ival::point(a);
  Rational stop = scale2(Rational(1), -(ops.precision() + 6));
  long k = 0;
  for (;;) {
    sum = ops.add(sum, ops.div_point(term, Rational(2 * k + 1)));
    term = ops.mul_point(term, a2);
    ++k;
    if (term.max_abs() <= stop) break;
    if (k > 100000) throw std::logic_error("atanh series failed to converge");
  }
  // tail: sum_{j>=k} a^(2j+1)/(2j+1) <= a^(2k+1) / ((2k+1)(1-a^2))
  Rational tail = ops.up(Rational(term.max_abs() / (Rational(2 * k + 1) * (1 - a2))));
  Ival r(sum.lo, Rational(sum.hi + tail));
  return sgn(z) < 0 ? IvalOps::neg(r) : r;
}

/// atan(z) for exact rational 0 < z < 1/2 (Machin-style arguments).
inline Ival atan_series(const Rational& z, const IvalOps& ops) {
  Rational z2(z * z);
  Ival sum = Ival::point(0);
  Ival term = Ival::point(z);
  Rational stop = scale2(Rational(1), -(ops.precision() + 6));
  long k = 0;
  for (;;) {
    Ival contrib = ops.div_point(term, Rational(2 * k + 1));
    sum = (k % 2 == 0) ? ops.add(sum, contrib) : ops.sub(sum, contrib);
    term = ops.mul_point(term, z2);
    ++k;
    if (term.max_abs() <= stop) break;
  }
  // alternating with decreasing terms: error bounded by the next term
  Rational tail = ops.up(Rational(term.max_abs() / Rational(2 * k + 1)));
  return ops.pad(sum, tail);
}

/// exp on an interval R within [-3/4, 3/4].
inline Ival exp_core(const Ival& r, const IvalOps& ops) {
  if (r.max_abs() > Rational(3, 4)) throw std::logic_error("exp_core range");
  Ival sum = Ival::point(1);
  Ival term = Ival::point(1);
  Rational stop = scale2(Rational(1), -(ops.precision() + 6));
  long k = 1;
  for (;;) {
    term = ops.div_point(ops.mul(term, r), Rational(k));
    sum = ops.add(sum, term);
    ++k;
    if (term.max_abs() <= stop) break;
    if (k > 100000) throw std::logic_error("exp series failed to converge");
  }
  // tail <= |term| * (3/4)/k / (1 - 3/4/(k+1)) <= |term| for k >= 2
  return ops.pad(sum, term.max_abs());
}

/// sin on an interval T within [0, 1.6] (alternating series).
inline Ival sin_core(const Ival& t, const IvalOps& ops) {
  if (t.max_abs() > Rational(8, 5)) throw std::logic_error("sin_core range");
  Ival t2 = ops.mul(t, t);
  Ival sum = t;
  Ival term = t;
  Rational stop = scale2(Rational(1), -(ops.precision() + 6));
  long k = 1;
  for (;;) {
    term = ops.div_point(ops.mul(term, t2), Rational((2 * k) * (2 * k + 1)));
    sum = (k % 2 == 1) ? ops.sub(sum, term) : ops.add(sum, term);
    ++k;
    if (term.max_abs() <= stop) break;
  }
  Ival next = ops.div_point(ops.mul(term, t2), Rational((2 * k) * (2 * k + 1)));
  return ops.pad(sum, next.max_abs());
}

namespace detail {
inline Ival cached_constant(int which, long prec) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, Ival> cache;
  long bucket = ((prec + 63) / 64) * 64;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({which, bucket});
    if (it != cache.end()) return it->second;
  }
  IvalOps ops(bucket + 16);
  Ival v;
  switch (which) {
    case 0:  // ln 2 = 2 atanh(1/3)
      v = IvalOps::scale(atanh_series(Rational(1, 3), ops), 1);
      break;
    case 1: {  // ln 10 = 2 atanh(1/9) + 3 ln 2
      Ival ln54 = IvalOps::scale(atanh_series(Rational(1, 9), ops), 1);
      v = ops.add(ln54, ops.mul_point(cached_constant(0, bucket + 16), Rational(3)));
      break;
    }
    case 2: {  // pi = 16 atan(1/5) - 4 atan(1/239)
      Ival a = ops.mul_point(atan_series(Rational(1, 5), ops), Rational(16));
      Ival b = ops.mul_point(atan_series(Rational(1, 239), ops), Rational(4));
      v = ops.sub(a, b);
      break;
    }
    default:
      throw std::logic_error("unknown constant");
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(which, bucket), v);
  return v;
}
}  // namespace detail

inline Ival ln2_enclosure(long prec) { return detail::cached_constant(0, prec); }
inline Ival ln10_enclosure(long prec) { return detail::cached_constant(1, prec); }
inline Ival pi_enclosure(long prec) { return detail::cached_constant(2, prec); }

/// ln(x) for exact rational x > 0: scale into [3/4, 3/2) so inputs near 1
/// stay on the cancellation-free e = 0 branch, then the atanh form.
inline Ival ln_point(const Rational& x, const IvalOps& ops) {
  if (sgn(x) <= 0) throw std::domain_error("ln of a non-positive value");
  long e = floor_log2(Rational(x * Rational(4, 3)));
  Rational t = scale2(x, -e);
  Rational z((t - 1) / (t + 1));  // |z| <= 1/5
  Ival r = IvalOps::scale(atanh_series(z, ops), 1);
  if (e != 0) r = ops.add(r, ops.mul_point(ln2_enclosure(ops.precision()), Rational(e)));
  return r;
}

/// exp on an arbitrary interval: halve into the core range, then square back.
inline Ival exp_interval(const Ival& x, long prec) {
  Rational m = x.max_abs();
  long j = 0;
  if (m > Rational(3, 4)) j = floor_log2(Rational(m * Rational(4, 3))) + 1;
  if (j > 64) throw std::domain_error("exp argument magnitude out of supported range");
  IvalOps ops(prec + 2 * j + 16);
  Ival e = exp_core(IvalOps::scale(x, -j), ops);
  for (long i = 0; i < j; ++i) e = ops.mul(e, e);
  return e;
}

/// sin(pi x) after exact reduction mod 2 and quarter-wave folding.
inline Ival sinpi_point(const Rational& x, const IvalOps& ops) {
  Rational r(x - 2 * Rational(rational_floor(Rational(x / 2))));  // in [0,2)
  int sign = 1;
  if (r > 1) {
    sign = -1;
    r -= 1;
  }
  if (r > Rational(1, 2)) r = 1 - r;
  if (sgn(r) == 0) return Ival::point(0);
  if (r == Rational(1, 2)) return Ival::point(sign);
  Ival t = ops.mul_point(pi_enclosure(ops.precision()), r);
  Ival s = sin_core(t, ops);
  return sign < 0 ? IvalOps::neg(s) : s;
}

}  // namespace series
}  // namespace oddround
