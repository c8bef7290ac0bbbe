// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <unordered_map>

#include "oddround/artifact.hpp"

namespace oddround {

/// The generated-function runtime: special cases, singleton lookup, range
/// reduction, Horner in H, output compensation, final rounding to any T_k.
class GeneratedFunction {
 public:
  explicit GeneratedFunction(Artifact a) : art_(std::move(a)) {
    rr_.kind = art_.reduction;
    rr_.k_const = art_.k_const;
    for (const auto& s : art_.singletons) singleton_.emplace(s.x.bits, s.y.bits);
    for (auto& p : art_.poly.pieces) dense_.push_back(p.dense_h(art_.h));
  }

  const Artifact& artifact() const { return art_; }
  Artifact& artifact() { return art_; }

  /// The H value the polynomial path produces, or nothing when a table
  /// answers. Total over all T_n patterns.
  struct RnoOutcome {
    FpBits result;          // T_{n+2} pattern
    std::optional<FpBits> h_value;  // set iff the polynomial path ran
  };

  RnoOutcome evaluate_rno_detail(const FpBits& x) const {
    if (x.fmt != art_.tn) throw std::invalid_argument("input format is not T_n");
    FpFormat tn2 = art_.tn2;
    switch (x.classify()) {
      case FpClass::nan: return {FpBits(tn2, art_.out_nan), std::nullopt};
      case FpClass::infinity:
        return {FpBits(tn2, x.sign_bit() ? art_.out_ninf : art_.out_pinf), std::nullopt};
      case FpClass::zero:
        return {FpBits(tn2, x.sign_bit() ? art_.out_nzero : art_.out_pzero), std::nullopt};
      default: break;
    }
    if (!in_domain(art_.func, x.value())) return {make_quiet_nan(tn2), std::nullopt};
    if (auto it = singleton_.find(x.bits); it != singleton_.end())
      return {FpBits(tn2, it->second), std::nullopt};

    ReducedInput red = reduce_input(rr_, x, art_.h);
    int piece = art_.poly.rule.select(x, red.x_prime.value());
    FpBits p = horner_h(art_.h, dense_[piece], red.x_prime);
    FpBits y_h = compensate(rr_, art_.h, p, red.m);
    if (!y_h.is_finite()) return {make_quiet_nan(tn2), std::nullopt};
    return {round_value(tn2, RoundingMode::ro, y_h.value()), y_h};
  }

  /// Round-to-odd result in T_{n+2}; total over every input pattern.
  FpBits evaluate_rno(const FpBits& x) const { return evaluate_rno_detail(x).result; }

  /// Correctly rounded result in T_k under a standard mode. The H value (a
  /// member of the odd interval) rounds directly to the target.
  FpBits evaluate(const FpBits& x_tk, RoundingMode mode) const {
    if (mode == RoundingMode::ro)
      throw std::invalid_argument("round-to-odd is not a consumer-facing mode");
    const FpFormat tk = x_tk.fmt;
    if (tk.exponent_bits != art_.tn.exponent_bits)
      throw std::invalid_argument("target exponent width differs from the family");
    if (tk.total_bits > art_.tn.total_bits)
      throw std::invalid_argument("target is wider than T_n");

    RnoOutcome o = evaluate_rno_detail(widen(x_tk, art_.tn));
    if (o.h_value) return round_value(tk, mode, o.h_value->value());
    // table answers: map the stored T_{n+2} pattern
    const FpBits& y = o.result;
    if (y.is_nan()) return make_quiet_nan(tk);
    if (y.is_infinity()) return make_infinity(tk, y.sign_bit());
    if (y.is_zero()) return make_zero(tk, y.sign_bit());
    return round_value(tk, mode, y.value());
  }

 private:
  Artifact art_;
  RangeReduction rr_;
  std::unordered_map<uint64_t, uint64_t> singleton_;
  std::vector<std::vector<FpBits>> dense_;
};

}  // namespace oddround
