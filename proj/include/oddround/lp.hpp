// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "oddround/rational.hpp"

namespace oddround {

/// Two-sided linear constraint lo <= a . v <= hi on free variables v.
struct LpConstraint {
  std::vector<Rational> coeffs;
  Rational lo, hi;
};

/// Exact-rational phase-1 simplex: find any v with lo_i <= a_i . v <= hi_i
/// for all i, or certify infeasibility. Free variables split as v = u - w;
/// Bland's rule guarantees termination; the returned point is the first
/// basic feasible solution, so identical inputs give identical outputs.
inline std::optional<std::vector<Rational>> lp_feasible_point(
    const std::vector<LpConstraint>& constraints, size_t nvars) {
  const size_t m = 2 * constraints.size();
  if (m == 0) return std::vector<Rational>(nvars, Rational(0));
  const size_t nsplit = 2 * nvars;     // u, w
  const size_t nslack = m;             // one per row
  size_t ncols = nsplit + nslack;      // artificials appended below

  // rows: a.v + s = hi  and  a.v - t = lo, sign-normalized to rhs >= 0
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  A.reserve(m);
  b.reserve(m);
  for (size_t c = 0; c < constraints.size(); ++c) {
    const auto& ct = constraints[c];
    for (int upper = 0; upper < 2; ++upper) {
      std::vector<Rational> row(ncols, Rational(0));
      for (size_t j = 0; j < nvars; ++j) {
        row[2 * j] = ct.coeffs[j];
        row[2 * j + 1] = -ct.coeffs[j];
      }
      size_t slack = nsplit + 2 * c + upper;
      row[slack] = upper ? Rational(1) : Rational(-1);
      Rational rhs = upper ? ct.hi : ct.lo;
      if (sgn(rhs) < 0) {
        for (auto& e : row) e = -e;
        rhs = -rhs;
      }
      A.push_back(std::move(row));
      b.push_back(rhs);
    }
  }

  // basis: the slack when it survived sign normalization with +1, else a
  // fresh artificial column
  std::vector<size_t> basis(m);
  std::vector<bool> is_artificial_col;
  for (size_t i = 0; i < m; ++i) {
    size_t slack = nsplit + i;
    if (A[i][slack] == 1) {
      basis[i] = slack;
    } else {
      for (auto& row : A) row.push_back(Rational(0));
      A[i][ncols] = 1;
      basis[i] = ncols;
      ++ncols;
    }
  }
  is_artificial_col.assign(ncols, false);
  for (size_t j = nsplit + nslack; j < ncols; ++j) is_artificial_col[j] = true;

  std::vector<bool> in_basis(ncols, false);
  for (size_t i = 0; i < m; ++i) in_basis[basis[i]] = true;

  // reduced-cost row for min(sum of artificials), kept current across pivots
  std::vector<Rational> obj(ncols, Rational(0));
  Rational objective(0);
  for (size_t j = 0; j < ncols; ++j)
    if (is_artificial_col[j]) obj[j] = 1;
  for (size_t i = 0; i < m; ++i) {
    if (!is_artificial_col[basis[i]]) continue;
    for (size_t j = 0; j < ncols; ++j) obj[j] -= A[i][j];
    objective += b[i];
  }

  auto pivot = [&](size_t r, size_t s) {
    Rational inv = 1 / A[r][s];
    for (size_t j = 0; j < ncols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || sgn(A[i][s]) == 0) continue;
      Rational f = A[i][s];
      for (size_t j = 0; j < ncols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    Rational fo = obj[s];
    if (sgn(fo) != 0) {
      for (size_t j = 0; j < ncols; ++j) obj[j] -= fo * A[r][j];
      objective -= fo * b[r];
    }
    in_basis[basis[r]] = false;
    in_basis[s] = true;
    basis[r] = s;
  };

  for (;;) {
    // Bland: smallest-index improving column
    size_t enter = ncols;
    for (size_t j = 0; j < ncols; ++j) {
      if (in_basis[j]) continue;
      if (sgn(obj[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == ncols) break;  // optimal
    size_t leave = m;
    Rational best;
    for (size_t i = 0; i < m; ++i) {
      if (sgn(A[i][enter]) <= 0) continue;
      Rational ratio(b[i] / A[i][enter]);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded in phase 1 cannot happen; bail safely
    pivot(leave, enter);
  }

  if (sgn(objective) != 0) return std::nullopt;

  std::vector<Rational> v(nvars, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < nsplit) {
      size_t j = basis[i] / 2;
      if (basis[i] % 2 == 0)
        v[j] += b[i];
      else
        v[j] -= b[i];
    }
  }
  return v;
}

}  // namespace oddround
