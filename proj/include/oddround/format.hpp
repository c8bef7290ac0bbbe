// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddround/rational.hpp"

namespace oddround {

/// A binary interchange-style format with `total_bits` bits, of which
/// `exponent_bits` encode the exponent. One sign bit, the rest mantissa.
struct FpFormat {
  int total_bits = 0;
  int exponent_bits = 0;

  FpFormat() = default;
  FpFormat(int n, int eb) : total_bits(n), exponent_bits(eb) {
    if (eb < 2) throw std::invalid_argument("exponent width must be >= 2");
    if (n < eb + 2) throw std::invalid_argument("need a sign bit and at least one mantissa bit");
    if (n > 64) throw std::invalid_argument("formats wider than 64 bits are not supported");
  }

  int mantissa_bits() const { return total_bits - 1 - exponent_bits; }
  int bias() const { return (1 << (exponent_bits - 1)) - 1; }
  /// Largest normal exponent; equals the bias for IEEE-style layouts.
  int emax() const { return bias(); }
  /// Smallest normal exponent.
  int emin() const { return 1 - bias(); }
  /// Exponent of the smallest denormal (the quantum of the format).
  int emin_denormal() const { return emin() - mantissa_bits(); }

  uint64_t pattern_mask() const {
    return total_bits == 64 ? ~uint64_t{0} : (uint64_t{1} << total_bits) - 1;
  }
  uint64_t mantissa_mask() const { return (uint64_t{1} << mantissa_bits()) - 1; }
  uint64_t exponent_field_max() const { return (uint64_t{1} << exponent_bits) - 1; }
  uint64_t sign_mask() const { return uint64_t{1} << (total_bits - 1); }
  /// Non-negative pattern of the largest finite value.
  uint64_t max_normal_pattern() const {
    return ((exponent_field_max() - 1) << mantissa_bits()) | mantissa_mask();
  }
  uint64_t infinity_pattern() const { return exponent_field_max() << mantissa_bits(); }

  Rational max_normal_value() const {
    return scale2(Rational(pow2z(mantissa_bits() + 1) - 1), emax() - mantissa_bits());
  }
  /// 2^(emax+1): the supremum of the extended representation's range.
  Rational range_sup() const { return pow2q(emax() + 1); }

  bool operator==(const FpFormat& o) const {
    return total_bits == o.total_bits && exponent_bits == o.exponent_bits;
  }
  bool operator!=(const FpFormat& o) const { return !(*this == o); }
};

enum class FpClass { zero, denormal, normal, infinity, nan };

inline const char* fp_class_name(FpClass c) {
  switch (c) {
    case FpClass::zero: return "zero";
    case FpClass::denormal: return "denormal";
    case FpClass::normal: return "normal";
    case FpClass::infinity: return "infinity";
    case FpClass::nan: return "nan";
  }
  return "?";
}

/// A concrete bit pattern in some format. Every pattern is valid.
struct FpBits {
  FpFormat fmt;
  uint64_t bits = 0;

  FpBits() = default;
  FpBits(FpFormat f, uint64_t b) : fmt(f), bits(b & f.pattern_mask()) {}

  bool sign_bit() const { return (bits & fmt.sign_mask()) != 0; }
  uint64_t exponent_field() const {
    return (bits >> fmt.mantissa_bits()) & fmt.exponent_field_max();
  }
  uint64_t mantissa_field() const { return bits & fmt.mantissa_mask(); }
  /// Pattern with the sign bit cleared.
  uint64_t magnitude() const { return bits & ~fmt.sign_mask(); }

  FpClass classify() const {
    uint64_t e = exponent_field();
    uint64_t f = mantissa_field();
    if (e == 0) return f == 0 ? FpClass::zero : FpClass::denormal;
    if (e == fmt.exponent_field_max()) return f == 0 ? FpClass::infinity : FpClass::nan;
    return FpClass::normal;
  }

  bool is_finite() const {
    FpClass c = classify();
    return c != FpClass::infinity && c != FpClass::nan;
  }
  bool is_nan() const { return classify() == FpClass::nan; }
  bool is_infinity() const { return classify() == FpClass::infinity; }
  bool is_zero() const { return classify() == FpClass::zero; }

  /// Odd when the full n-bit pattern, read as an unsigned integer, is odd.
  bool is_odd() const { return (bits & 1) != 0; }

  /// Exact value of a finite pattern.
  Rational value() const {
    FpClass c = classify();
    if (c == FpClass::infinity || c == FpClass::nan)
      throw std::domain_error("value() on a non-finite pattern");
    Rational mag;
    if (c == FpClass::normal) {
      uint64_t sig = mantissa_field() | (uint64_t{1} << fmt.mantissa_bits());
      long e = static_cast<long>(exponent_field()) - fmt.bias();
      mag = scale2(Rational(BigInt(static_cast<unsigned long>(sig))), e - fmt.mantissa_bits());
    } else {
      mag = scale2(Rational(BigInt(static_cast<unsigned long>(mantissa_field()))),
                   fmt.emin() - fmt.mantissa_bits());
    }
    return sign_bit() ? Rational(-mag) : mag;
  }

  bool operator==(const FpBits& o) const { return fmt == o.fmt && bits == o.bits; }
  bool operator!=(const FpBits& o) const { return !(*this == o); }

  /// Grouped binary, e.g. "0 01 0110".
  std::string to_string() const {
    std::string s;
    s += sign_bit() ? '1' : '0';
    s += ' ';
    for (int i = fmt.exponent_bits - 1; i >= 0; --i)
      s += ((exponent_field() >> i) & 1) ? '1' : '0';
    s += ' ';
    for (int i = fmt.mantissa_bits() - 1; i >= 0; --i)
      s += ((mantissa_field() >> i) & 1) ? '1' : '0';
    return s;
  }

  /// Hex of the n-bit pattern, zero-padded to ceil(n/4) digits.
  std::string to_hex() const {
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase;
    int digits = (fmt.total_bits + 3) / 4;
    os.width(digits);
    os.fill('0');
    os << bits;
    return os.str();
  }
};

inline FpBits make_zero(FpFormat f, bool negative = false) {
  return FpBits(f, negative ? f.sign_mask() : 0);
}
inline FpBits make_infinity(FpFormat f, bool negative = false) {
  return FpBits(f, f.infinity_pattern() | (negative ? f.sign_mask() : 0));
}
/// Canonical quiet NaN: all-ones exponent, mantissa MSB set, sign 0.
inline FpBits make_quiet_nan(FpFormat f) {
  return FpBits(f, f.infinity_pattern() | (uint64_t{1} << (f.mantissa_bits() - 1)));
}
inline FpBits make_max_normal(FpFormat f, bool negative = false) {
  return FpBits(f, f.max_normal_pattern() | (negative ? f.sign_mask() : 0));
}
inline FpBits make_denormal_min(FpFormat f, bool negative = false) {
  return FpBits(f, uint64_t{1} | (negative ? f.sign_mask() : 0));
}

inline FpBits from_fields(FpFormat f, bool sign, uint64_t e, uint64_t m) {
  return FpBits(f, (sign ? f.sign_mask() : 0) | (e << f.mantissa_bits()) | m);
}

/// Value-order position of a finite pattern. Negative magnitudes map below
/// zero and -0 sits immediately before +0, so the order is total.
inline int64_t value_ordinal(const FpBits& b) {
  auto mag = static_cast<int64_t>(b.magnitude());
  return b.sign_bit() ? -mag - 1 : mag;
}

inline FpBits from_value_ordinal(FpFormat f, int64_t ord) {
  if (ord >= 0) return FpBits(f, static_cast<uint64_t>(ord));
  return FpBits(f, f.sign_mask() | static_cast<uint64_t>(-ord - 1));
}

/// Next pattern in value order. succ(max normal) is +infinity;
/// succ(+infinity) is an error.
inline FpBits succ(const FpBits& b) {
  if (b.is_nan()) throw std::domain_error("succ(NaN)");
  if (b.is_infinity()) {
    if (!b.sign_bit()) throw std::domain_error("succ(+infinity)");
    return make_max_normal(b.fmt, true);
  }
  return from_value_ordinal(b.fmt, value_ordinal(b) + 1);
}

/// Previous pattern in value order. pred(-max normal) is -infinity;
/// pred(-infinity) is an error.
inline FpBits pred(const FpBits& b) {
  if (b.is_nan()) throw std::domain_error("pred(NaN)");
  if (b.is_infinity()) {
    if (b.sign_bit()) throw std::domain_error("pred(-infinity)");
    return make_max_normal(b.fmt, false);
  }
  return from_value_ordinal(b.fmt, value_ordinal(b) - 1);
}

enum class ValueFilter {
  positive_nonzero,
  negative_nonzero,
  all_finite,               // +0 only
  all_finite_signed_zeros,  // both zero patterns
};

/// All finite patterns matching the filter, ascending in value order.
inline std::vector<FpBits> enumerate_finite(FpFormat f, ValueFilter filter) {
  std::vector<FpBits> out;
  uint64_t max_mag = f.max_normal_pattern();
  auto push_negatives = [&] {
    for (uint64_t m = max_mag; m >= 1; --m) out.emplace_back(f, f.sign_mask() | m);
  };
  auto push_positives = [&] {
    for (uint64_t m = 1; m <= max_mag; ++m) out.emplace_back(f, m);
  };
  switch (filter) {
    case ValueFilter::positive_nonzero:
      push_positives();
      break;
    case ValueFilter::negative_nonzero:
      push_negatives();
      break;
    case ValueFilter::all_finite:
      push_negatives();
      out.push_back(make_zero(f));
      push_positives();
      break;
    case ValueFilter::all_finite_signed_zeros:
      push_negatives();
      out.push_back(make_zero(f, true));
      out.push_back(make_zero(f));
      push_positives();
      break;
  }
  return out;
}

/// Widen a pattern into a format with the same exponent width and at least
/// as many mantissa bits. Exact; specials map to specials.
inline FpBits widen(const FpBits& b, FpFormat wide) {
  if (wide.exponent_bits != b.fmt.exponent_bits)
    throw std::invalid_argument("widen: exponent widths differ");
  if (wide.mantissa_bits() < b.fmt.mantissa_bits())
    throw std::invalid_argument("widen: target has fewer mantissa bits");
  int shift = wide.mantissa_bits() - b.fmt.mantissa_bits();
  uint64_t e = b.exponent_field();
  if (e == b.fmt.exponent_field_max()) e = wide.exponent_field_max();
  return from_fields(wide, b.sign_bit(), e, b.mantissa_field() << shift);
}

}  // namespace oddround

template <>
struct std::hash<oddround::FpBits> {
  size_t operator()(const oddround::FpBits& b) const {
    return std::hash<uint64_t>{}(b.bits * 0x9E3779B97F4A7C15ull ^
                                 static_cast<uint64_t>(b.fmt.total_bits) << 8 ^
                                 static_cast<uint64_t>(b.fmt.exponent_bits));
  }
};
