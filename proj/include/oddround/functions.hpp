// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "oddround/format.hpp"
#include "oddround/rational.hpp"

namespace oddround {

enum class Func { ln, log2, log10, exp, exp2, exp10, sinh, cosh, sinpi, cospi };

constexpr std::array<Func, 10> kAllFuncs = {Func::ln,   Func::log2,  Func::log10, Func::exp,
                                            Func::exp2, Func::exp10, Func::sinh,  Func::cosh,
                                            Func::sinpi, Func::cospi};

inline const char* func_name(Func f) {
  switch (f) {
    case Func::ln: return "ln";
    case Func::log2: return "log2";
    case Func::log10: return "log10";
    case Func::exp: return "exp";
    case Func::exp2: return "exp2";
    case Func::exp10: return "exp10";
    case Func::sinh: return "sinh";
    case Func::cosh: return "cosh";
    case Func::sinpi: return "sinpi";
    case Func::cospi: return "cospi";
  }
  return "?";
}

inline Func func_from_name(const std::string& s) {
  for (Func f : kAllFuncs)
    if (s == func_name(f)) return f;
  throw std::invalid_argument("unknown function: " + s);
}

inline bool is_log_family(Func f) {
  return f == Func::ln || f == Func::log2 || f == Func::log10;
}
inline bool is_exp_family(Func f) {
  return f == Func::exp || f == Func::exp2 || f == Func::exp10;
}

/// True iff x lies in the open real domain of f.
inline bool in_domain(Func f, const Rational& x) {
  if (is_log_family(f)) return sgn(x) > 0;
  return true;
}

/// Result of a special input (NaN, infinities, zeros, out of domain).
struct SpecialOutcome {
  enum class Kind { nan, pos_inf, neg_inf, finite } kind = Kind::nan;
  Rational value;      // for Kind::finite
  bool negative_zero = false;  // for finite 0: emit the -0 pattern

  static SpecialOutcome make_nan() { return {}; }
  static SpecialOutcome inf(bool negative) {
    SpecialOutcome o;
    o.kind = negative ? Kind::neg_inf : Kind::pos_inf;
    return o;
  }
  static SpecialOutcome finite(Rational v, bool neg_zero = false) {
    SpecialOutcome o;
    o.kind = Kind::finite;
    o.value = std::move(v);
    o.negative_zero = neg_zero;
    return o;
  }
};

inline SpecialOutcome special_for_nan(Func) { return SpecialOutcome::make_nan(); }

inline SpecialOutcome special_for_infinity(Func f, bool negative) {
  switch (f) {
    case Func::ln:
    case Func::log2:
    case Func::log10:
      return negative ? SpecialOutcome::make_nan() : SpecialOutcome::inf(false);
    case Func::exp:
    case Func::exp2:
    case Func::exp10:
      return negative ? SpecialOutcome::finite(0) : SpecialOutcome::inf(false);
    case Func::sinh:
      return SpecialOutcome::inf(negative);
    case Func::cosh:
      return SpecialOutcome::inf(false);
    case Func::sinpi:
    case Func::cospi:
      return SpecialOutcome::make_nan();
  }
  return SpecialOutcome::make_nan();
}

inline SpecialOutcome special_for_zero(Func f, bool negative) {
  switch (f) {
    case Func::ln:
    case Func::log2:
    case Func::log10:
      return SpecialOutcome::inf(true);
    case Func::exp:
    case Func::exp2:
    case Func::exp10:
    case Func::cosh:
    case Func::cospi:
      return SpecialOutcome::finite(1);
    case Func::sinh:
    case Func::sinpi:
      return SpecialOutcome::finite(0, negative);  // odd functions keep the zero's sign
  }
  return SpecialOutcome::make_nan();
}

/// Outcome for a finite, nonzero input outside the open domain
/// (negative arguments of the log family).
inline SpecialOutcome special_for_out_of_domain(Func) { return SpecialOutcome::make_nan(); }

}  // namespace oddround
