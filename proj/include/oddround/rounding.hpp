// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <vector>

#include "oddround/format.hpp"
#include "oddround/rational.hpp"

namespace oddround {

/// The five standard modes plus round-to-odd. Round-to-odd is the
/// generation-side mode; it is never offered as a final consumer mode.
enum class RoundingMode { rn, ra, rz, ru, rd, ro };

inline const char* rounding_mode_name(RoundingMode m) {
  switch (m) {
    case RoundingMode::rn: return "rn";
    case RoundingMode::ra: return "ra";
    case RoundingMode::rz: return "rz";
    case RoundingMode::ru: return "ru";
    case RoundingMode::rd: return "rd";
    case RoundingMode::ro: return "ro";
  }
  return "?";
}

inline RoundingMode rounding_mode_from_name(const std::string& s) {
  for (RoundingMode m : {RoundingMode::rn, RoundingMode::ra, RoundingMode::rz,
                         RoundingMode::ru, RoundingMode::rd, RoundingMode::ro})
    if (s == rounding_mode_name(m)) return m;
  throw std::invalid_argument("unknown rounding mode: " + s);
}

constexpr RoundingMode kStandardModes[5] = {RoundingMode::rn, RoundingMode::ra,
                                            RoundingMode::rz, RoundingMode::ru,
                                            RoundingMode::rd};

/// The quadruple that fully determines every rounding decision: sign,
/// truncated magnitude pattern (sign bit 0), rounding bit, sticky bit.
struct RoundingComponents {
  int sign = 1;  // -1 or +1
  FpBits trunc;  // non-negative pattern in the target format
  bool rb = false;
  bool sticky = false;

  bool exact() const { return !rb && !sticky; }
  bool operator==(const RoundingComponents& o) const {
    return sign == o.sign && trunc == o.trunc && rb == o.rb && sticky == o.sticky;
  }
  bool operator!=(const RoundingComponents& o) const { return !(*this == o); }
};

/// Decompose a finite rational against a format. The truncation is the
/// largest magnitude in the format <= |v|; rb is the next bit of the
/// same-exponent-width infinite-mantissa expansion and sticky the OR of all
/// later bits. Magnitudes at or beyond 2^(emax+1), which the extended
/// representation cannot express, clamp to (max normal, rb=1, sticky=1).
inline RoundingComponents components(FpFormat fmt, const Rational& v) {
  RoundingComponents rc;
  rc.trunc = make_zero(fmt);
  int s = sgn(v);
  if (s == 0) return rc;
  rc.sign = s;
  Rational a = rational_abs(v);

  if (a >= fmt.range_sup()) {
    rc.trunc = make_max_normal(fmt);
    rc.rb = true;
    rc.sticky = true;
    return rc;
  }

  long e = fmt.emin();
  if (a >= pow2q(fmt.emin())) e = floor_log2(a);  // <= emax since a < range_sup
  Rational m = scale2(a, fmt.mantissa_bits() - e);
  BigInt ipart = rational_floor(m);
  Rational frac = m - Rational(ipart);

  uint64_t sig = mpz_get_ui(ipart.get_mpz_t());
  uint64_t hidden = uint64_t{1} << fmt.mantissa_bits();
  if (sig >= hidden)
    rc.trunc = from_fields(fmt, false, static_cast<uint64_t>(e + fmt.bias()), sig - hidden);
  else
    rc.trunc = from_fields(fmt, false, 0, sig);

  static const Rational half(1, 2);
  int cmp_half = cmp(frac, half);
  rc.rb = cmp_half >= 0;
  rc.sticky = rc.rb ? (cmp_half != 0) : (sgn(frac) != 0);
  return rc;
}

/// Apply a rounding decision to precomputed components. The upper neighbor
/// of the truncation is the next non-negative pattern, which is +infinity
/// past max normal; rz can therefore never produce an infinity.
inline FpBits round_from_components(FpFormat fmt, RoundingMode mode,
                                    const RoundingComponents& rc) {
  bool up = false;
  if (!rc.exact()) {
    switch (mode) {
      case RoundingMode::rn: up = rc.rb && (rc.sticky || rc.trunc.is_odd()); break;
      case RoundingMode::ra: up = rc.rb; break;
      case RoundingMode::rz: up = false; break;
      case RoundingMode::ru: up = rc.sign > 0; break;
      case RoundingMode::rd: up = rc.sign < 0; break;
      case RoundingMode::ro: up = !rc.trunc.is_odd(); break;
    }
  }
  uint64_t mag = rc.trunc.bits + (up ? 1 : 0);
  if (rc.sign < 0) return FpBits(fmt, mag | fmt.sign_mask());
  return FpBits(fmt, mag);
}

/// Round an exact rational. Exactly representable values come back as their
/// own pattern under every mode.
inline FpBits round_value(FpFormat fmt, RoundingMode mode, const Rational& v) {
  return round_from_components(fmt, mode, components(fmt, v));
}

/// The first `count` bits of the infinite-mantissa representation of v for
/// the given exponent width: sign, exponent field, then mantissa bits.
/// Magnitudes beyond the representation's range read as the all-ones tail.
inline std::vector<bool> extended_prefix_bits(int exponent_bits, const Rational& v, int count) {
  std::vector<bool> out;
  out.reserve(count);
  if (count <= 0) return out;
  int bias = (1 << (exponent_bits - 1)) - 1;
  long emax = bias;
  long emin = 1 - bias;

  out.push_back(sgn(v) < 0);
  Rational a = rational_abs(v);

  if (sgn(a) != 0 && a >= pow2q(emax + 1)) {
    // past the representable range: exponent pinned at max, mantissa all ones
    for (int i = exponent_bits - 1; i >= 0 && (int)out.size() < count; --i)
      out.push_back(((static_cast<uint64_t>(2 * bias) >> i) & 1) != 0);
    while ((int)out.size() < count) out.push_back(true);
    return out;
  }

  long e = emin;
  uint64_t efield = 0;
  Rational frac(0);
  if (sgn(a) != 0) {
    if (a >= pow2q(emin)) {
      e = floor_log2(a);
      efield = static_cast<uint64_t>(e + bias);
      frac = scale2(a, -e) - 1;  // drop the hidden bit
    } else {
      frac = scale2(a, -e);
    }
  }
  for (int i = exponent_bits - 1; i >= 0 && (int)out.size() < count; --i)
    out.push_back(((efield >> i) & 1) != 0);
  int need = count - static_cast<int>(out.size());
  if (need > 0) {
    BigInt block = rational_floor(scale2(frac, need));
    for (int i = need - 1; i >= 0; --i)
      out.push_back(mpz_tstbit(block.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0);
  }
  return out;
}

}  // namespace oddround
