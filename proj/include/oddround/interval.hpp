// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <stdexcept>

#include "oddround/rational.hpp"

namespace oddround {

/// Two-sided rational enclosure lo <= x <= hi.
struct Ival {
  Rational lo, hi;

  Ival() = default;
  Ival(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::logic_error("inverted interval");
  }
  static Ival point(const Rational& r) { return Ival(r, r); }

  Rational width() const { return Rational(hi - lo); }
  bool is_point() const { return lo == hi; }
  bool operator==(const Ival& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const Ival& o) const { return !(*this == o); }
  Rational max_abs() const { return std::max(rational_abs(lo), rational_abs(hi)); }
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
};

/// Interval operations with outward-directed rounding to ~prec significant
/// bits, so every result stays a sound enclosure while the numerators and
/// denominators stay bounded.
class IvalOps {
 public:
  explicit IvalOps(long prec) : prec_(prec) {}

  long precision() const { return prec_; }

  Rational down(const Rational& x) const { return round_to_precision(x, prec_, false); }
  Rational up(const Rational& x) const { return round_to_precision(x, prec_, true); }
  Ival out(const Rational& lo, const Rational& hi) const { return Ival(down(lo), up(hi)); }

  Ival add(const Ival& a, const Ival& b) const { return out(a.lo + b.lo, a.hi + b.hi); }
  Ival sub(const Ival& a, const Ival& b) const { return out(a.lo - b.hi, a.hi - b.lo); }

  Ival mul(const Ival& a, const Ival& b) const {
    Rational p1(a.lo * b.lo), p2(a.lo * b.hi), p3(a.hi * b.lo), p4(a.hi * b.hi);
    return out(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
  }

  Ival mul_point(const Ival& a, const Rational& r) const {
    if (sgn(r) >= 0) return out(a.lo * r, a.hi * r);
    return out(a.hi * r, a.lo * r);
  }

  /// 1/a; requires 0 outside a.
  Ival inv(const Ival& a) const {
    if (sgn(a.lo) <= 0 && sgn(a.hi) >= 0) throw std::domain_error("interval division by zero");
    return out(1 / a.hi, 1 / a.lo);
  }

  Ival div(const Ival& a, const Ival& b) const { return mul(a, inv(b)); }

  Ival div_point(const Ival& a, const Rational& r) const {
    if (sgn(r) == 0) throw std::domain_error("division by zero");
    return mul_point(a, Rational(1 / r));
  }

  static Ival neg(const Ival& a) { return Ival(Rational(-a.hi), Rational(-a.lo)); }
  static Ival scale(const Ival& a, long e) { return Ival(scale2(a.lo, e), scale2(a.hi, e)); }

  /// Widen symmetrically by +-slack.
  Ival pad(const Ival& a, const Rational& slack) const {
    return out(a.lo - slack, a.hi + slack);
  }

 private:
  long prec_;
};

}  // namespace oddround
