// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "oddround/enclosure.hpp"
#include "oddround/functions.hpp"
#include "oddround/rounding.hpp"

namespace oddround {

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The certified rational-output cases. Some(r) means f(x) = r exactly and
/// the case analysis proves it; None means f(x) is irrational.
///
/// ln, exp, sinh, cosh: only the trivial point (Lindemann-Weierstrass).
/// exp2/exp10: integer arguments. log2/log10: exact powers of the base.
/// sinpi/cospi: the Niven points (half-integer grid, plus the sixths that
/// binary inputs can never hit).
inline std::optional<Rational> exact_result(Func f, const Rational& x) {
  switch (f) {
    case Func::ln:
      if (x == 1) return Rational(0);
      return std::nullopt;
    case Func::exp:
      if (sgn(x) == 0) return Rational(1);
      return std::nullopt;
    case Func::sinh:
      if (sgn(x) == 0) return Rational(0);
      return std::nullopt;
    case Func::cosh:
      if (sgn(x) == 0) return Rational(1);
      return std::nullopt;
    case Func::exp2: {
      if (x.get_den() != 1) return std::nullopt;
      if (rational_abs(x) > Rational(1 << 16))
        return std::nullopt;  // far outside any admissible format; saturation covers it
      return pow2q(x.get_num().get_si());
    }
    case Func::exp10: {
      if (x.get_den() != 1) return std::nullopt;
      if (rational_abs(x) > Rational(1 << 14)) return std::nullopt;
      long k = x.get_num().get_si();
      BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
      return k >= 0 ? Rational(p) : Rational(1, p);
    }
    case Func::log2: {
      // x = 2^k exactly iff numerator and denominator are powers of two
      const BigInt& num = x.get_num();
      const BigInt& den = x.get_den();
      if (sgn(x) <= 0) return std::nullopt;
      auto pow2_exponent = [](const BigInt& z) -> std::optional<long> {
        size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
        if (mpz_scan1(z.get_mpz_t(), 0) != bits - 1) return std::nullopt;
        return static_cast<long>(bits - 1);
      };
      auto en = pow2_exponent(num), ed = pow2_exponent(den);
      if (!en || !ed) return std::nullopt;
      return Rational(*en - *ed);
    }
    case Func::log10: {
      if (sgn(x) <= 0) return std::nullopt;
      auto pow10_exponent = [](BigInt z) -> std::optional<long> {
        long k = 0;
        while (z > 1) {
          if (!mpz_divisible_ui_p(z.get_mpz_t(), 10)) return std::nullopt;
          mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), 10);
          ++k;
        }
        return z == 1 ? std::optional<long>(k) : std::nullopt;
      };
      if (x.get_den() == 1) {
        if (auto k = pow10_exponent(x.get_num())) return Rational(*k);
        return std::nullopt;
      }
      if (x.get_num() == 1) {
        if (auto k = pow10_exponent(x.get_den())) return Rational(-*k);
        return std::nullopt;
      }
      return std::nullopt;
    }
    case Func::sinpi: {
      Rational r(x - 2 * Rational(rational_floor(Rational(x / 2))));  // [0,2)
      const BigInt& den = r.get_den();
      if (den == 1) return Rational(0);
      if (den == 2) return r == Rational(1, 2) ? Rational(1) : Rational(-1);
      if (den == 6) {
        if (r == Rational(1, 6) || r == Rational(5, 6)) return Rational(1, 2);
        return Rational(-1, 2);  // 7/6 or 11/6
      }
      return std::nullopt;
    }
    case Func::cospi:
      return exact_result(Func::sinpi, Rational(x + Rational(1, 2)));
  }
  return std::nullopt;
}

/// Rigorous enclosure of f(x) with width at most 2^(2-p) * |f(x)|, built
/// from argument-reduced series with directed rational rounding. Exact
/// points come back as degenerate intervals.
inline Ival eval_enclosure(Func f, const Rational& x, long p) {
  if (!in_domain(f, x)) throw std::domain_error("input outside the domain of the function");
  if (auto r = exact_result(f, x)) return Ival::point(*r);

  long wp = p + 32;
  for (int attempt = 0; attempt < 64; ++attempt) {
    IvalOps ops(wp);
    Ival v;
    switch (f) {
      case Func::ln: v = series::ln_point(x, ops); break;
      case Func::log2: v = ops.div(series::ln_point(x, ops), series::ln2_enclosure(wp)); break;
      case Func::log10: v = ops.div(series::ln_point(x, ops), series::ln10_enclosure(wp)); break;
      case Func::exp: v = series::exp_interval(Ival::point(x), wp); break;
      case Func::exp2: {
        BigInt mz = rational_floor(x);
        if (!mz.fits_slong_p()) throw std::domain_error("exp2 argument out of supported range");
        long m = mz.get_si();
        Rational g(x - Rational(mz));
        Ival r = ops.mul_point(series::ln2_enclosure(wp), g);
        v = IvalOps::scale(series::exp_core(r, ops), m);
        break;
      }
      case Func::exp10:
        v = series::exp_interval(ops.mul_point(series::ln10_enclosure(wp), x), wp);
        break;
      case Func::sinh:
      case Func::cosh: {
        Rational a = rational_abs(x);
        if (a <= 1) {
          // direct series: all terms positive, ratio <= 1/6, so the tail is
          // under half the last term
          Rational a2(a * a);
          Rational stop = scale2(Rational(1), -(wp + 6));
          Ival t = Ival::point(f == Func::sinh ? a : Rational(1));
          Ival sum = t;
          long k = 1;
          for (;;) {
            long d = (f == Func::sinh) ? (2 * k) * (2 * k + 1) : (2 * k - 1) * (2 * k);
            t = ops.div_point(ops.mul_point(t, a2), Rational(d));
            sum = ops.add(sum, t);
            ++k;
            if (t.max_abs() <= stop) break;
          }
          v = Ival(sum.lo, ops.up(Rational(sum.hi + t.max_abs())));
        } else {
          Ival e = series::exp_interval(Ival::point(a), wp);
          Ival einv = ops.inv(e);
          v = (f == Func::sinh) ? ops.sub(e, einv) : ops.add(e, einv);
          v = IvalOps::scale(v, -1);
        }
        if (f == Func::sinh && sgn(x) < 0) v = IvalOps::neg(v);
        break;
      }
      case Func::sinpi: v = series::sinpi_point(x, ops); break;
      case Func::cospi: v = series::sinpi_point(Rational(x + Rational(1, 2)), ops); break;
    }

    if (v.is_point()) return v;
    if (sgn(v.lo) > 0 || sgn(v.hi) < 0) {
      Rational floor_mag = std::min(rational_abs(v.lo), rational_abs(v.hi));
      if (v.width() <= scale2(floor_mag, -p)) {
        // pad symmetrically: the result then surrounds f(x) by a margin
        // proportional to 2^-p, which makes re-evaluations at higher p nest
        // inside while the total width stays under 2^(2-p) * |f(x)|
        Rational h = ops.up(scale2(Rational(floor_mag * Rational(5, 4)), -p));
        return ops.out(v.lo - h, v.hi + h);
      }
      long deficit = floor_log2(Rational(v.width() / scale2(floor_mag, -p))) + 1;
      wp += std::max(64L, deficit + 16);
      continue;
    }
    wp += std::max(64L, wp);  // enclosure straddles zero: escalate hard
  }
  throw std::logic_error("enclosure failed to reach the requested width");
}

/// Rounding components of f(x) against T, resolved to a definite class.
/// Exactness comes from the certified case analysis; clearly saturated
/// arguments take a cheap closed-form class; everything else runs an
/// adaptive-precision loop that must separate because f(x) is irrational.
inline RoundingComponents oracle_components(Func f, FpFormat t, const Rational& x,
                                            long p0 = 0, long p_max = 4096) {
  if (!in_domain(f, x)) throw std::domain_error("input outside the domain of the function");
  if (auto r = exact_result(f, x)) return components(t, *r);

  auto clamp_high = [&](int sign) {
    RoundingComponents rc;
    rc.sign = sign;
    rc.trunc = make_max_normal(t);
    rc.rb = rc.sticky = true;
    return rc;
  };
  auto tiny_positive = [&] {
    RoundingComponents rc;  // 0 < f < denormal_min/2
    rc.sign = 1;
    rc.trunc = make_zero(t);
    rc.rb = false;
    rc.sticky = true;
    return rc;
  };

  long hi = t.emax() + 1;
  long lo = t.emin_denormal() - 1;
  switch (f) {
    case Func::exp:
    case Func::exp2:
      if (x >= hi) return clamp_high(1);
      if (x <= lo) return tiny_positive();
      break;
    case Func::exp10:
      if (3 * x >= hi) return clamp_high(1);
      if (x <= lo) return tiny_positive();
      break;
    case Func::sinh:
      if (rational_abs(x) >= hi + 2) return clamp_high(sgn(x));
      break;
    case Func::cosh:
      if (rational_abs(x) >= hi + 2) return clamp_high(1);
      break;
    default:
      break;
  }

  long p = p0 > 0 ? p0 : 2 * t.total_bits + 16;
  for (; p <= p_max; p *= 2) {
    Ival e = eval_enclosure(f, x, p);
    RoundingComponents clo = components(t, e.lo);
    RoundingComponents chi = components(t, e.hi);
    if (clo == chi) return clo;
  }
  throw PrecisionExhausted(std::string("cannot separate ") + func_name(f) +
                           " near a rounding boundary; a missed exactness case?");
}

/// Correctly rounded f(x) in T_{n+2} under round-to-odd.
inline FpBits rno_result(Func f, FpFormat tn2, const FpBits& x) {
  if (!x.is_finite()) throw std::domain_error("rno_result wants a finite input");
  return round_from_components(tn2, RoundingMode::ro, oracle_components(f, tn2, x.value()));
}

/// Correctly rounded f(x) in an arbitrary target format and standard mode;
/// the oracle side of verification.
inline FpBits round_correct(Func f, FpFormat target, RoundingMode mode, const Rational& x) {
  return round_from_components(target, mode, oracle_components(f, target, x));
}

/// An input whose result is exactly representable in T_{n+2}.
struct SingletonHit {
  FpBits x;       // input pattern in T_n
  Rational y;     // exact value of f(x)
  FpBits y_bits;  // its pattern in T_{n+2}
};

/// All inputs of T_n (finite, in domain) whose f(x) is certified rational
/// and exactly representable in T_{n+2}, via closed-form candidate lists.
/// Entries with odd result patterns still have non-degenerate odd intervals;
/// callers wanting true singletons filter on pattern parity.
inline std::vector<SingletonHit> singleton_census(Func f, FpFormat tn, FpFormat tn2) {
  std::vector<SingletonHit> out;
  auto try_add = [&](const Rational& xv) {
    FpBits xb = round_value(tn, RoundingMode::rz, xv);
    if (!xb.is_finite() || xb.value() != xv) return;  // input not representable
    auto y = exact_result(f, xv);
    if (!y) return;
    FpBits yb = round_value(tn2, RoundingMode::rz, *y);
    if (!yb.is_finite() || yb.value() != *y) return;  // result not representable
    out.push_back({xb, *y, yb});
  };

  switch (f) {
    case Func::ln:
      try_add(Rational(1));
      break;
    case Func::exp:
    case Func::sinh:
    case Func::cosh:
      try_add(Rational(0));
      break;
    case Func::exp2:
      for (long k = tn2.emin_denormal(); k <= tn2.emax(); ++k) try_add(Rational(k));
      break;
    case Func::exp10:
      for (long k = 0;; ++k) {
        size_t before = out.size();
        try_add(Rational(k));
        if (out.size() == before) break;  // 5^k outgrew the mantissa: monotone stop
      }
      break;
    case Func::log2:
      for (long k = tn.emin_denormal(); k <= tn.emax(); ++k) try_add(pow2q(k));
      break;
    case Func::log10: {
      Rational p(1);
      for (long k = 0;; ++k, p *= 10) {
        size_t before = out.size();
        try_add(p);
        if (out.size() == before) break;
      }
      break;
    }
    case Func::sinpi:
    case Func::cospi: {
      if (tn.total_bits > 20)
        throw std::domain_error("periodic-function census needs enumeration; format too wide");
      for (auto& b : enumerate_finite(tn, ValueFilter::all_finite)) {
        Rational xv = b.value();
        if (auto y = exact_result(f, xv)) {
          FpBits yb = round_value(tn2, RoundingMode::rz, *y);
          if (yb.is_finite() && yb.value() == *y) out.push_back({b, *y, yb});
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const SingletonHit& a, const SingletonHit& b) {
    return value_ordinal(a.x) < value_ordinal(b.x);
  });
  return out;
}

}  // namespace oddround
