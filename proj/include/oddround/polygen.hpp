// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "oddround/lp.hpp"
#include "oddround/range_reduction.hpp"

namespace oddround {

/// c_i x^{p_i} with an explicit (possibly gappy) power list. Evaluation is
/// always dense Horner over 0..degree with zero coefficients in the gaps,
/// which keeps the generator and runtime arithmetic identical.
struct PolynomialSpec {
  std::vector<int> powers;             // strictly increasing
  std::vector<Rational> coeffs_exact;  // LP solution
  std::vector<FpBits> coeffs_h;        // rn-rounded into H

  int degree() const { return powers.empty() ? 0 : powers.back(); }
  int terms() const {
    int t = 0;
    for (size_t i = 0; i < coeffs_h.size(); ++i)
      if (!coeffs_h[i].is_zero()) ++t;
    return t;
  }

  std::vector<FpBits> dense_h(FpFormat h) const {
    std::vector<FpBits> d(degree() + 1, make_zero(h));
    for (size_t i = 0; i < powers.size(); ++i) d[powers[i]] = coeffs_h[i];
    return d;
  }

  static PolynomialSpec zero(FpFormat h) {
    PolynomialSpec p;
    p.powers = {0};
    p.coeffs_exact = {Rational(0)};
    p.coeffs_h = {make_zero(h)};
    return p;
  }
};

enum class TermStructure { dense, odd_only, even_only };

inline const char* term_structure_name(TermStructure t) {
  switch (t) {
    case TermStructure::dense: return "dense";
    case TermStructure::odd_only: return "odd";
    case TermStructure::even_only: return "even";
  }
  return "?";
}

inline TermStructure term_structure_from_name(const std::string& s) {
  for (TermStructure t : {TermStructure::dense, TermStructure::odd_only, TermStructure::even_only})
    if (s == term_structure_name(t)) return t;
  throw std::invalid_argument("unknown term structure: " + s);
}

inline std::vector<int> powers_for(TermStructure ts, int degree) {
  std::vector<int> p;
  switch (ts) {
    case TermStructure::dense:
      for (int i = 0; i <= degree; ++i) p.push_back(i);
      break;
    case TermStructure::odd_only:
      for (int i = 1; i <= degree; i += 2) p.push_back(i);
      break;
    case TermStructure::even_only:
      for (int i = 0; i <= degree; i += 2) p.push_back(i);
      break;
  }
  return p;
}

/// Feasibility LP over a set of reduced constraints: lo <= sum c_i x^{p_i} <= hi.
inline std::optional<std::vector<Rational>> solve_lp(std::span<const ReducedConstraint> cs,
                                                     const std::vector<int>& powers) {
  std::vector<LpConstraint> rows;
  rows.reserve(cs.size());
  for (const auto& c : cs) {
    LpConstraint row;
    row.coeffs.reserve(powers.size());
    for (int p : powers) {
      Rational xp(1);
      for (int k = 0; k < p; ++k) xp *= c.x;
      row.coeffs.push_back(xp);
    }
    row.lo = c.lo.value();
    row.hi = c.hi.value();
    rows.push_back(std::move(row));
  }
  return lp_feasible_point(rows, powers.size());
}

struct CegisOptions {
  size_t sample_cap = 256;
  int max_rounds = 32;
};

struct CegisOutcome {
  std::optional<PolynomialSpec> poly;
  int lp_rounds = 0;
};

/// Counterexample-guided generation: solve on a deterministic uniformly
/// spaced sample, round the coefficients into H, re-verify every constraint
/// with the H Horner evaluation, and feed violators back with their
/// intervals tightened by one H ulp per side.
inline CegisOutcome cegis_generate(std::span<const ReducedConstraint> cs,
                                   const std::vector<int>& powers, FpFormat h,
                                   const CegisOptions& opts = {}) {
  CegisOutcome out;
  if (cs.empty()) {
    out.poly = PolynomialSpec::zero(h);
    return out;
  }

  std::vector<ReducedConstraint> work(cs.begin(), cs.end());
  std::vector<size_t> sample;
  if (work.size() <= opts.sample_cap) {
    for (size_t i = 0; i < work.size(); ++i) sample.push_back(i);
  } else {
    for (size_t k = 0; k < opts.sample_cap; ++k)
      sample.push_back(k * (work.size() - 1) / (opts.sample_cap - 1));
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  }
  std::vector<bool> sampled(work.size(), false);
  for (size_t i : sample) sampled[i] = true;

  for (int round = 1; round <= opts.max_rounds; ++round) {
    out.lp_rounds = round;
    std::vector<ReducedConstraint> subset;
    subset.reserve(sample.size());
    for (size_t i : sample) subset.push_back(work[i]);
    auto sol = solve_lp(subset, powers);
    if (!sol) return out;

    PolynomialSpec spec;
    spec.powers = powers;
    spec.coeffs_exact = *sol;
    for (const Rational& c : *sol) spec.coeffs_h.push_back(h_round(h, c));
    auto dense = spec.dense_h(h);

    bool all_ok = true;
    for (size_t i = 0; i < cs.size(); ++i) {
      FpBits y = horner_h(h, dense, cs[i].x_prime);
      bool ok = y.is_finite() && value_ordinal(y) >= value_ordinal(cs[i].lo) &&
                value_ordinal(y) <= value_ordinal(cs[i].hi);
      if (ok) continue;
      all_ok = false;
      if (!sampled[i]) {
        sampled[i] = true;
        sample.push_back(i);
      }
      // tighten the working interval unless it has collapsed
      if (work[i].lo == work[i].hi ||
          value_ordinal(succ(work[i].lo)) > value_ordinal(pred(work[i].hi)))
        return out;  // no freedom left: treat as infeasible
      work[i].lo = succ(work[i].lo);
      work[i].hi = pred(work[i].hi);
    }
    if (all_ok) {
      out.poly = std::move(spec);
      return out;
    }
    std::sort(sample.begin(), sample.end());
  }
  return out;
}

/// Which piece an input belongs to. Identity reductions slice the input
/// encoding into equal runs by value-order rank; the fixed-point rule slices
/// the reduced domain [a, b) uniformly by value.
struct IndexRule {
  enum class Kind { single, pattern_rank, fixed_point };
  Kind kind = Kind::single;
  int piece_count = 1;
  // pattern_rank
  int64_t ord_lo = 0, ord_hi = 0;
  // fixed_point
  Rational domain_lo, domain_hi;

  int select(const FpBits& x_tn, const Rational& x_reduced) const {
    switch (kind) {
      case Kind::single:
        return 0;
      case Kind::pattern_rank: {
        int64_t ord = std::clamp(value_ordinal(x_tn), ord_lo, ord_hi);
        auto span = static_cast<unsigned __int128>(ord_hi - ord_lo + 1);
        auto off = static_cast<unsigned __int128>(ord - ord_lo);
        return static_cast<int>((off * static_cast<unsigned __int128>(piece_count)) / span);
      }
      case Kind::fixed_point: {
        if (x_reduced < domain_lo) return 0;
        if (x_reduced >= domain_hi) return piece_count - 1;
        Rational t((x_reduced - domain_lo) * piece_count / (domain_hi - domain_lo));
        long idx = rational_floor(t).get_si();
        return static_cast<int>(std::clamp<long>(idx, 0, piece_count - 1));
      }
    }
    return 0;
  }
};

struct PiecewisePolynomial {
  IndexRule rule;
  std::vector<PolynomialSpec> pieces;
};

struct PieceLog {
  int piece = 0;
  size_t constraint_count = 0;
  int degree = 0;
  int terms = 0;
  int lp_rounds = 0;
  bool empty = false;
};

struct GenLog {
  int piece_count = 0;
  std::vector<PieceLog> pieces;
  int failed_piece = -1;          // piece that exhausted every degree
  size_t failed_constraints = 0;  // its constraint count (most-constrained diagnostic)
  std::vector<std::string> attempts;
};

struct GenOptions {
  int max_degree = 6;
  int max_pieces = 1;
  TermStructure structure = TermStructure::dense;
  CegisOptions cegis;
};

/// Escalating search: piece counts 1, 2, 4, ... max_pieces; within a piece,
/// degrees 1..max_degree. The first configuration where every piece
/// succeeds wins.
inline std::optional<PiecewisePolynomial> gen_piecewise(
    const std::vector<ReducedConstraint>& cs, const IndexRule& rule_template,
    const GenOptions& opts, FpFormat h, GenLog* log = nullptr) {
  if (cs.empty()) return std::nullopt;
  for (int pieces = 1; pieces <= opts.max_pieces; pieces *= 2) {
    IndexRule rule = rule_template;
    rule.piece_count = pieces;
    if (pieces == 1) rule.kind = IndexRule::Kind::single;

    std::vector<std::vector<ReducedConstraint>> buckets(pieces);
    for (const auto& c : cs)
      buckets[rule.select(c.sources.empty() ? FpBits() : c.sources.front(), c.x)].push_back(c);

    PiecewisePolynomial result;
    result.rule = rule;
    GenLog attempt_log;
    attempt_log.piece_count = pieces;
    bool ok = true;
    for (int pi = 0; pi < pieces && ok; ++pi) {
      PieceLog pl;
      pl.piece = pi;
      pl.constraint_count = buckets[pi].size();
      if (buckets[pi].empty()) {
        pl.empty = true;
        result.pieces.push_back(PolynomialSpec::zero(h));
        attempt_log.pieces.push_back(pl);
        continue;
      }
      bool piece_ok = false;
      for (int d = 1; d <= opts.max_degree && !piece_ok; ++d) {
        auto powers = powers_for(opts.structure, d);
        if (powers.empty()) continue;
        CegisOutcome co = cegis_generate(buckets[pi], powers, h, opts.cegis);
        if (co.poly) {
          pl.degree = co.poly->degree();
          pl.terms = co.poly->terms();
          pl.lp_rounds = co.lp_rounds;
          result.pieces.push_back(std::move(*co.poly));
          piece_ok = true;
        }
      }
      if (!piece_ok) {
        ok = false;
        if (log) {
          if (log->failed_piece < 0 || buckets[pi].size() > log->failed_constraints) {
            log->failed_piece = pi;
            log->failed_constraints = buckets[pi].size();
          }
          log->attempts.push_back("pieces=" + std::to_string(pieces) + ": piece " +
                                  std::to_string(pi) + " infeasible up to degree " +
                                  std::to_string(opts.max_degree) + " (" +
                                  std::to_string(buckets[pi].size()) + " constraints)");
        }
      }
      attempt_log.pieces.push_back(pl);
    }
    if (ok) {
      if (log) {
        log->piece_count = pieces;
        log->pieces = std::move(attempt_log.pieces);
      }
      return result;
    }
  }
  return std::nullopt;
}

}  // namespace oddround
