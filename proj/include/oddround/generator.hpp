// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "oddround/artifact.hpp"
#include "oddround/odd_intervals.hpp"

namespace oddround {

struct GenerateConfig {
  Func func = Func::ln;
  FpFormat tn{5, 2};
  FpFormat h{64, 11};
  ReductionKind reduction = ReductionKind::identity;
  GenOptions gen;
  int guard_override = -1;  // -1: per-family default

  FpFormat tn2() const { return FpFormat(tn.total_bits + 2, tn.exponent_bits); }
};

struct GenerationFailure : std::runtime_error {
  GenLog log;
  GenerationFailure(const std::string& msg, GenLog l)
      : std::runtime_error(msg), log(std::move(l)) {}
};

struct GenerateResult {
  Artifact artifact;
  GenLog log;
  size_t input_count = 0;
  size_t constraint_count = 0;
  size_t reduced_count = 0;
};

inline uint64_t special_pattern(FpFormat tn2, const SpecialOutcome& o) {
  switch (o.kind) {
    case SpecialOutcome::Kind::nan: return make_quiet_nan(tn2).bits;
    case SpecialOutcome::Kind::pos_inf: return make_infinity(tn2, false).bits;
    case SpecialOutcome::Kind::neg_inf: return make_infinity(tn2, true).bits;
    case SpecialOutcome::Kind::finite: {
      if (sgn(o.value) == 0) return make_zero(tn2, o.negative_zero).bits;
      FpBits b = round_value(tn2, RoundingMode::rn, o.value);
      if (b.value() != o.value) throw std::logic_error("special value not representable");
      return b.bits;
    }
  }
  return make_quiet_nan(tn2).bits;
}

/// End-to-end generation: oracle, odd intervals, reduction, piecewise CEGIS.
inline GenerateResult generate_artifact(const GenerateConfig& cfg) {
  GenerateResult res;
  FpFormat tn2 = cfg.tn2();
  Artifact& art = res.artifact;
  art.func = cfg.func;
  art.tn = cfg.tn;
  art.tn2 = tn2;
  art.h = cfg.h;
  art.reduction = cfg.reduction;

  RangeReduction rr = make_range_reduction(cfg.reduction, cfg.func, cfg.h);
  art.k_const = rr.k_const;

  art.out_nan = special_pattern(tn2, special_for_nan(cfg.func));
  art.out_pinf = special_pattern(tn2, special_for_infinity(cfg.func, false));
  art.out_ninf = special_pattern(tn2, special_for_infinity(cfg.func, true));
  art.out_pzero = special_pattern(tn2, special_for_zero(cfg.func, false));
  art.out_nzero = special_pattern(tn2, special_for_zero(cfg.func, true));

  std::vector<std::pair<FpBits, FpBits>> oracle_out;
  for (auto& x : enumerate_finite(cfg.tn, ValueFilter::all_finite)) {
    if (x.is_zero()) continue;  // zeros belong to the special table
    if (!in_domain(cfg.func, x.value())) continue;
    oracle_out.emplace_back(x, rno_result(cfg.func, tn2, x));
  }
  res.input_count = oracle_out.size();

  OddIntervals oi = calc_odd_intervals(oracle_out, tn2, cfg.h);
  art.singletons = oi.singletons;
  res.constraint_count = oi.constraints.size();

  std::vector<ReducedConstraint> reduced =
      reduce_constraints(oi.constraints, rr, cfg.h, cfg.guard_override);
  res.reduced_count = reduced.size();

  IndexRule rule;
  switch (cfg.reduction) {
    case ReductionKind::identity: {
      rule.kind = IndexRule::Kind::pattern_rank;
      int64_t lo = 0, hi = 0;
      bool first = true;
      for (const auto& c : oi.constraints) {
        int64_t o = value_ordinal(c.x);
        if (first || o < lo) lo = o;
        if (first || o > hi) hi = o;
        first = false;
      }
      rule.ord_lo = lo;
      rule.ord_hi = hi;
      break;
    }
    case ReductionKind::log2_family:
      rule.kind = IndexRule::Kind::fixed_point;
      rule.domain_lo = 1;
      rule.domain_hi = 2;
      break;
    case ReductionKind::exp2_family:
      rule.kind = IndexRule::Kind::fixed_point;
      rule.domain_lo = 0;
      rule.domain_hi = 1;
      break;
  }

  GenLog log;
  auto pw = gen_piecewise(reduced, rule, cfg.gen, cfg.h, &log);
  if (!pw) {
    std::string msg = "polynomial generation infeasible";
    if (log.failed_piece >= 0)
      msg += "; most constrained piece " + std::to_string(log.failed_piece) + " holds " +
             std::to_string(log.failed_constraints) + " constraints";
    throw GenerationFailure(msg, log);
  }
  art.poly = std::move(*pw);
  res.log = std::move(log);
  return res;
}

}  // namespace oddround
