// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "oddround/eval_h.hpp"
#include "oddround/odd_intervals.hpp"
#include "oddround/oracle.hpp"

namespace oddround {

/// The two exact-compensation reduction families plus identity.
///   log2_family: x = t * 2^m with t in [1,2); f(x) = P(t) + m*K
///   exp2_family: x = m + r with r in [0,1);   f(x) = 2^m * P(r)
enum class ReductionKind { identity, log2_family, exp2_family };

inline const char* reduction_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::identity: return "identity";
    case ReductionKind::log2_family: return "log2_family";
    case ReductionKind::exp2_family: return "exp2_family";
  }
  return "?";
}

inline ReductionKind reduction_from_name(const std::string& s) {
  for (ReductionKind k :
       {ReductionKind::identity, ReductionKind::log2_family, ReductionKind::exp2_family})
    if (s == reduction_name(k)) return k;
  throw std::invalid_argument("unknown range reduction: " + s);
}

struct RangeReduction {
  ReductionKind kind = ReductionKind::identity;
  FpBits k_const;  // H value; the per-binade offset K of the log2 family

  /// Guard margin in H ulps applied to each reduced interval side. The
  /// inverse below already subtracts the rounded constant exactly, so these
  /// are a safety margin, not a correctness requirement.
  int guard_ulps() const { return kind == ReductionKind::log2_family ? 2 : 0; }
};

inline RangeReduction make_range_reduction(ReductionKind kind, Func f, FpFormat h) {
  RangeReduction rr;
  rr.kind = kind;
  rr.k_const = make_zero(h);
  if (kind == ReductionKind::log2_family) {
    switch (f) {
      case Func::log2: rr.k_const = h_round(h, Rational(1)); break;
      case Func::ln: rr.k_const = round_correct(Func::ln, h, RoundingMode::rn, Rational(2)); break;
      case Func::log10:
        rr.k_const = round_correct(Func::log10, h, RoundingMode::rn, Rational(2));
        break;
      default:
        throw std::invalid_argument("log2_family reduction fits the log functions only");
    }
  }
  if (kind == ReductionKind::exp2_family && f != Func::exp2)
    throw std::invalid_argument("exp2_family reduction is exact for exp2 only");
  return rr;
}

struct ReducedInput {
  FpBits x_prime;  // H value
  long m = 0;
};

/// Reduce a domain input. Both families are exact in H.
inline ReducedInput reduce_input(const RangeReduction& rr, const FpBits& x, FpFormat h) {
  switch (rr.kind) {
    case ReductionKind::identity:
      return {to_h(h, x), 0};
    case ReductionKind::log2_family: {
      Rational v = x.value();
      if (sgn(v) <= 0) throw std::domain_error("log2_family wants a positive input");
      long m = floor_log2(v);
      return {h_round(h, scale2(v, -m)), m};
    }
    case ReductionKind::exp2_family: {
      Rational v = x.value();
      BigInt mz = rational_floor(v);
      if (!mz.fits_slong_p()) throw std::domain_error("reduced exponent out of range");
      long m = mz.get_si();
      return {h_round(h, Rational(v - Rational(mz))), m};
    }
  }
  throw std::logic_error("unreachable");
}

/// Output compensation in H arithmetic.
inline FpBits compensate(const RangeReduction& rr, FpFormat h, const FpBits& poly_value, long m) {
  switch (rr.kind) {
    case ReductionKind::identity:
      return poly_value;
    case ReductionKind::log2_family:
      return h_add(h, poly_value, h_mul(h, h_from_long(h, m), rr.k_const));
    case ReductionKind::exp2_family:
      return h_scale_pow2(h, poly_value, m);
  }
  throw std::logic_error("unreachable");
}

/// A constraint on the polynomial over the reduced domain; intervals from
/// inputs sharing one reduced point are intersected.
struct ReducedConstraint {
  FpBits x_prime;  // H value
  Rational x;      // exact value of x_prime
  FpBits lo, hi;   // H values
  std::vector<FpBits> sources;  // contributing T_n inputs
};

/// Map odd intervals through the inverse of the output compensation,
/// computed in exact rational arithmetic against the actual rounded
/// constant, then shrunk inward by the guard margin. A value p in [lo', hi']
/// therefore lands inside the original interval after H compensation.
inline std::vector<ReducedConstraint> reduce_constraints(
    const std::vector<OddIntervalConstraint>& cs, const RangeReduction& rr, FpFormat h,
    int guard_override = -1) {
  int guard = guard_override >= 0 ? guard_override : rr.guard_ulps();
  std::map<uint64_t, ReducedConstraint> merged;
  for (const auto& c : cs) {
    ReducedInput red = reduce_input(rr, c.x, h);
    Rational lo_exact, hi_exact;
    switch (rr.kind) {
      case ReductionKind::identity:
        lo_exact = c.lo.value();
        hi_exact = c.hi.value();
        break;
      case ReductionKind::log2_family: {
        Rational shift = h_mul(h, h_from_long(h, red.m), rr.k_const).value();
        lo_exact = c.lo.value() - shift;
        hi_exact = c.hi.value() - shift;
        break;
      }
      case ReductionKind::exp2_family:
        lo_exact = scale2(c.lo.value(), -red.m);
        hi_exact = scale2(c.hi.value(), -red.m);
        break;
    }
    FpBits lo = round_value(h, RoundingMode::ru, lo_exact);
    FpBits hi = round_value(h, RoundingMode::rd, hi_exact);
    for (int g = 0; g < guard; ++g) {
      lo = succ(lo);
      hi = pred(hi);
    }
    if (!lo.is_finite() || !hi.is_finite() || value_ordinal(lo) > value_ordinal(hi))
      throw std::runtime_error("reduced interval became empty for input " + c.x.to_hex());

    auto [it, fresh] = merged.try_emplace(red.x_prime.bits);
    ReducedConstraint& rc = it->second;
    if (fresh) {
      rc.x_prime = red.x_prime;
      rc.x = red.x_prime.value();
      rc.lo = lo;
      rc.hi = hi;
    } else {
      if (value_ordinal(lo) > value_ordinal(rc.lo)) rc.lo = lo;
      if (value_ordinal(hi) < value_ordinal(rc.hi)) rc.hi = hi;
      if (value_ordinal(rc.lo) > value_ordinal(rc.hi))
        throw std::runtime_error("merged interval became empty at reduced input " +
                                 red.x_prime.to_hex() + " (input " + c.x.to_hex() + ")");
    }
    rc.sources.push_back(c.x);
  }
  std::vector<ReducedConstraint> out;
  out.reserve(merged.size());
  for (auto& [_, rc] : merged) out.push_back(std::move(rc));
  return out;
}

}  // namespace oddround
