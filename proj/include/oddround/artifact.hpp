// Part of the oddround project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <sstream>

#include "oddround/polygen.hpp"

namespace oddround {

/// Everything the runtime needs to evaluate one generated function:
/// formats, reduction, piecewise polynomial, singleton table, special table.
struct Artifact {
  Func func = Func::ln;
  FpFormat tn, tn2, h;
  ReductionKind reduction = ReductionKind::identity;
  FpBits k_const;  // H value (log2 family offset; zero otherwise)
  PiecewisePolynomial poly;
  std::vector<SingletonEntry> singletons;
  // special outputs, stored as T_{n+2} patterns
  uint64_t out_nan = 0, out_pinf = 0, out_ninf = 0, out_pzero = 0, out_nzero = 0;
  bool verified = false;  // runtime flag; never serialized
};

inline void save_artifact(std::ostream& os, const Artifact& a) {
  os << "oddround-artifact v1\n";
  os << "func " << func_name(a.func) << '\n';
  os << "tn " << a.tn.total_bits << ' ' << a.tn.exponent_bits << '\n';
  os << "tn2 " << a.tn2.total_bits << ' ' << a.tn2.exponent_bits << '\n';
  os << "h " << a.h.total_bits << ' ' << a.h.exponent_bits << '\n';
  os << "reduction " << reduction_name(a.reduction) << '\n';
  os << "kconst " << a.k_const.to_hex() << '\n';
  const IndexRule& r = a.poly.rule;
  os << "index ";
  switch (r.kind) {
    case IndexRule::Kind::single: os << "single"; break;
    case IndexRule::Kind::pattern_rank: os << "rank " << r.ord_lo << ' ' << r.ord_hi; break;
    case IndexRule::Kind::fixed_point:
      os << "fixed " << rational_to_string(r.domain_lo) << ' ' << rational_to_string(r.domain_hi);
      break;
  }
  os << '\n';
  os << "pieces " << a.poly.pieces.size() << '\n';
  for (size_t i = 0; i < a.poly.pieces.size(); ++i) {
    const PolynomialSpec& p = a.poly.pieces[i];
    os << "piece " << i << " powers";
    for (int pw : p.powers) os << ' ' << pw;
    os << '\n';
    for (size_t j = 0; j < p.powers.size(); ++j)
      os << "c " << p.powers[j] << ' ' << rational_to_string(p.coeffs_exact[j]) << ' '
         << p.coeffs_h[j].to_hex() << '\n';
  }
  os << "singletons " << a.singletons.size() << '\n';
  for (const auto& s : a.singletons) os << "s " << s.x.to_hex() << ' ' << s.y.to_hex() << '\n';
  os << "specials " << FpBits(a.tn2, a.out_nan).to_hex() << ' ' << FpBits(a.tn2, a.out_pinf).to_hex()
     << ' ' << FpBits(a.tn2, a.out_ninf).to_hex() << ' ' << FpBits(a.tn2, a.out_pzero).to_hex()
     << ' ' << FpBits(a.tn2, a.out_nzero).to_hex() << '\n';
  os << "end\n";
}

inline void save_artifact_file(const std::string& path, const Artifact& a) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  save_artifact(os, a);
}

namespace detail {
inline uint64_t parse_hex(const std::string& s) { return std::stoull(s, nullptr, 16); }
}  // namespace detail

inline Artifact load_artifact(std::istream& is) {
  Artifact a;
  std::string line, tok;
  auto next_line = [&](const char* what) {
    if (!std::getline(is, line)) throw std::runtime_error(std::string("truncated artifact: ") + what);
    return std::istringstream(line);
  };
  {
    auto ls = next_line("header");
    std::string magic, ver;
    ls >> magic >> ver;
    if (magic != "oddround-artifact" || ver != "v1")
      throw std::runtime_error("not an oddround artifact");
  }
  auto expect_kv = [&](const char* key) {
    auto ls = next_line(key);
    ls >> tok;
    if (tok != key) throw std::runtime_error(std::string("expected '") + key + "', got " + tok);
    return ls;
  };
  {
    auto ls = expect_kv("func");
    std::string fn;
    ls >> fn;
    a.func = func_from_name(fn);
  }
  auto read_fmt = [&](const char* key) {
    auto ls = expect_kv(key);
    int n, e;
    ls >> n >> e;
    return FpFormat(n, e);
  };
  a.tn = read_fmt("tn");
  a.tn2 = read_fmt("tn2");
  a.h = read_fmt("h");
  {
    auto ls = expect_kv("reduction");
    std::string rn;
    ls >> rn;
    a.reduction = reduction_from_name(rn);
  }
  {
    auto ls = expect_kv("kconst");
    std::string hex;
    ls >> hex;
    a.k_const = FpBits(a.h, detail::parse_hex(hex));
  }
  {
    auto ls = expect_kv("index");
    std::string kind;
    ls >> kind;
    if (kind == "single") {
      a.poly.rule.kind = IndexRule::Kind::single;
    } else if (kind == "rank") {
      a.poly.rule.kind = IndexRule::Kind::pattern_rank;
      ls >> a.poly.rule.ord_lo >> a.poly.rule.ord_hi;
    } else if (kind == "fixed") {
      a.poly.rule.kind = IndexRule::Kind::fixed_point;
      std::string lo, hi;
      ls >> lo >> hi;
      a.poly.rule.domain_lo = rational_from_string(lo);
      a.poly.rule.domain_hi = rational_from_string(hi);
    } else {
      throw std::runtime_error("unknown index rule: " + kind);
    }
  }
  size_t pieces = 0;
  {
    auto ls = expect_kv("pieces");
    ls >> pieces;
  }
  a.poly.rule.piece_count = static_cast<int>(pieces);
  for (size_t i = 0; i < pieces; ++i) {
    auto ls = expect_kv("piece");
    size_t idx;
    std::string pw;
    ls >> idx >> pw;
    if (idx != i || pw != "powers") throw std::runtime_error("bad piece header");
    PolynomialSpec spec;
    int p;
    while (ls >> p) spec.powers.push_back(p);
    for (size_t j = 0; j < spec.powers.size(); ++j) {
      auto cs = expect_kv("c");
      int cp;
      std::string exact, hex;
      cs >> cp >> exact >> hex;
      if (cp != spec.powers[j]) throw std::runtime_error("coefficient order mismatch");
      spec.coeffs_exact.push_back(rational_from_string(exact));
      spec.coeffs_h.push_back(FpBits(a.h, detail::parse_hex(hex)));
    }
    a.poly.pieces.push_back(std::move(spec));
  }
  size_t nsing = 0;
  {
    auto ls = expect_kv("singletons");
    ls >> nsing;
  }
  for (size_t i = 0; i < nsing; ++i) {
    auto ls = expect_kv("s");
    std::string xs, ys;
    ls >> xs >> ys;
    a.singletons.push_back({FpBits(a.tn, detail::parse_hex(xs)), FpBits(a.tn2, detail::parse_hex(ys))});
  }
  {
    auto ls = expect_kv("specials");
    std::string v[5];
    ls >> v[0] >> v[1] >> v[2] >> v[3] >> v[4];
    a.out_nan = detail::parse_hex(v[0]);
    a.out_pinf = detail::parse_hex(v[1]);
    a.out_ninf = detail::parse_hex(v[2]);
    a.out_pzero = detail::parse_hex(v[3]);
    a.out_nzero = detail::parse_hex(v[4]);
  }
  return a;
}

inline Artifact load_artifact_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  return load_artifact(is);
}

}  // namespace oddround
