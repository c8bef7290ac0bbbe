// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "oddround/rounding.hpp"

namespace oddround {

/// Arithmetic in the evaluation format H, simulated exactly: compute in
/// rationals, round to nearest-even in H. Non-finite operands propagate
/// with the usual IEEE outcomes.

inline FpBits h_round(FpFormat h, const Rational& v) {
  return round_value(h, RoundingMode::rn, v);
}

inline FpBits h_from_long(FpFormat h, long v) { return h_round(h, Rational(v)); }

namespace detail {
inline bool h_special(FpFormat h, const FpBits& a, const FpBits& b, bool add, FpBits& out) {
  if (a.is_nan() || b.is_nan()) {
    out = make_quiet_nan(h);
    return true;
  }
  bool ai = a.is_infinity(), bi = b.is_infinity();
  if (!ai && !bi) return false;
  if (add) {
    if (ai && bi && a.sign_bit() != b.sign_bit())
      out = make_quiet_nan(h);
    else
      out = make_infinity(h, ai ? a.sign_bit() : b.sign_bit());
  } else {
    const FpBits& fin = ai ? b : a;
    if (fin.is_finite() && fin.is_zero())
      out = make_quiet_nan(h);
    else
      out = make_infinity(h, a.sign_bit() != b.sign_bit());
  }
  return true;
}
}  // namespace detail

inline FpBits h_add(FpFormat h, const FpBits& a, const FpBits& b) {
  FpBits out;
  if (detail::h_special(h, a, b, true, out)) return out;
  return h_round(h, Rational(a.value() + b.value()));
}

inline FpBits h_mul(FpFormat h, const FpBits& a, const FpBits& b) {
  FpBits out;
  if (detail::h_special(h, a, b, false, out)) return out;
  return h_round(h, Rational(a.value() * b.value()));
}

/// p * 2^m under H semantics (exact while the result stays normal).
inline FpBits h_scale_pow2(FpFormat h, const FpBits& p, long m) {
  if (!p.is_finite()) return p;
  return h_round(h, scale2(p.value(), m));
}

/// Dense Horner evaluation, every intermediate rounded to H:
/// ((c_d * x + c_{d-1}) * x + ...) * x + c_0.
inline FpBits horner_h(FpFormat h, std::span<const FpBits> coeffs_ascending, const FpBits& x) {
  if (coeffs_ascending.empty()) return make_zero(h);
  FpBits acc = coeffs_ascending.back();
  for (size_t i = coeffs_ascending.size() - 1; i-- > 0;)
    acc = h_add(h, h_mul(h, acc, x), coeffs_ascending[i]);
  return acc;
}

/// Exact embedding of a value from a narrower domain format into H.
inline FpBits to_h(FpFormat h, const FpBits& b) {
  if (b.is_nan()) return make_quiet_nan(h);
  if (b.is_infinity()) return make_infinity(h, b.sign_bit());
  FpBits r = round_value(h, RoundingMode::rz, b.value());
  if (r.value() != b.value()) throw std::logic_error("value not exactly representable in H");
  if (b.is_zero() && b.sign_bit()) r = make_zero(h, true);
  return r;
}

}  // namespace oddround
