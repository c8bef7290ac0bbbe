// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "oddround/eval_h.hpp"
#include "oddround/format.hpp"

namespace oddround {

/// Per-input constraint: every H value in [lo, hi] rounds (round-to-odd,
/// T_{n+2}) to the input's correct result.
struct OddIntervalConstraint {
  FpBits x;   // input pattern in T_n
  FpBits lo;  // H value
  FpBits hi;  // H value
};

/// Input whose odd interval collapses to a single point (even pattern).
struct SingletonEntry {
  FpBits x;  // input pattern in T_n
  FpBits y;  // result pattern in T_{n+2}
};

struct OddIntervals {
  std::vector<OddIntervalConstraint> constraints;  // list L
  std::vector<SingletonEntry> singletons;          // list S
};

/// Split oracle results into interval constraints and singletons. Odd
/// results y get the closed H interval [succ_H(pred_T(y)), pred_H(succ_T(y))];
/// even results are singletons. The walk off +-max normal lands on the H
/// extremes, which round-to-odd clamps back as required.
inline OddIntervals calc_odd_intervals(const std::vector<std::pair<FpBits, FpBits>>& oracle_out,
                                       FpFormat tn2, FpFormat h) {
  OddIntervals out;
  for (const auto& [x, y_ro] : oracle_out) {
    if (!y_ro.is_finite())
      throw std::logic_error("round-to-odd result must be finite; specials are routed earlier");
    if (!y_ro.is_odd()) {
      out.singletons.push_back({x, y_ro});
      continue;
    }
    FpBits below = pred(y_ro);  // even neighbor (or -infinity at the bottom)
    FpBits above = succ(y_ro);
    FpBits lo = below.is_infinity() ? succ(make_infinity(h, true)) : succ(to_h(h, below));
    FpBits hi = above.is_infinity() ? pred(make_infinity(h, false)) : pred(to_h(h, above));
    out.constraints.push_back({x, lo, hi});
  }
  return out;
}

/// Line-oriented serialization: `x_hex lo_hex hi_hex`, bit-exact.
inline void write_constraints(std::ostream& os, const std::vector<OddIntervalConstraint>& cs) {
  for (const auto& c : cs)
    os << c.x.to_hex() << ' ' << c.lo.to_hex() << ' ' << c.hi.to_hex() << '\n';
}

inline std::vector<OddIntervalConstraint> read_constraints(std::istream& is, FpFormat tn,
                                                           FpFormat h) {
  std::vector<OddIntervalConstraint> cs;
  std::string xs, ls, hs;
  while (is >> xs >> ls >> hs) {
    auto parse = [](const std::string& s, FpFormat f) {
      return FpBits(f, std::stoull(s, nullptr, 16));
    };
    cs.push_back({parse(xs, tn), parse(ls, h), parse(hs, h)});
  }
  return cs;
}

}  // namespace oddround
