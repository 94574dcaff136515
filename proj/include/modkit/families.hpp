#pragma once

// Generators for the pointed cyclic categories, the Taft double and the sl2 counterexample,
// plus the fusion rule of the Taft double.

#include <algorithm>
#include <charconv>
#include <optional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modkit/datum.hpp"

namespace modkit {

// ---------------------------------------------------------------------------
// Vec_{Z/n}, zeta = zeta_n^a, xi = zeta^k0

inline RawDatum pointed_cyclic(long n, long a, long k0) {
  if (n < 3 || n % 2 == 0) throw HypothesisError("pointed_cyclic needs an odd n >= 3, got " + std::to_string(n));
  const auto N = static_cast<unsigned>(n);
  RawDatum r;
  r.duality.emplace();
  std::vector<std::vector<CycNum>> rows(N);
  for (long k = 0; k < n; ++k) {
    r.labels.push_back("d" + std::to_string(k));
    r.twists.push_back(root_of_unity(N, a * k0 * k + a * k * k));
    r.duality->push_back(static_cast<std::size_t>(nt::mod(-k, n)));
    for (long l = 0; l < n; ++l) rows[k].push_back(root_of_unity(N, a * k0 * (k + l) + 2 * a * k * l));
  }
  r.S = CycMatrix::from_rows(rows);
  return r;
}

// ---------------------------------------------------------------------------
// Taft double: labels (l, p), 1 <= l <= d-1, p mod d, lexicographic

struct TaftLabel {
  int l = 1, p = 0;
  friend auto operator<=>(const TaftLabel&, const TaftLabel&) = default;
};

inline std::string to_string(const TaftLabel& x) { return "(" + std::to_string(x.l) + "," + std::to_string(x.p) + ")"; }

inline std::size_t taft_index(int d, TaftLabel x) { return static_cast<std::size_t>((x.l - 1) * d + x.p); }

inline TaftLabel taft_label(int d, std::size_t i) { return {static_cast<int>(i) / d + 1, static_cast<int>(i) % d}; }

inline std::vector<TaftLabel> taft_labels(int d) {
  std::vector<TaftLabel> out;
  for (int l = 1; l < d; ++l)
    for (int p = 0; p < d; ++p) out.push_back({l, p});
  return out;
}

inline void check_taft_d(int d) {
  if (d < 2) throw HypothesisError("taft needs d >= 2, got " + std::to_string(d));
  if (d > 40) throw HypothesisError("taft d = " + std::to_string(d) + " is beyond the supported size");
}

inline TaftLabel taft_epsilon_action(int d, TaftLabel x) {
  return {d - x.l, static_cast<int>(nt::mod(x.l + x.p, d))};
}

/// Representatives with 0 <= p < l + p < d, lexicographic.
inline std::vector<TaftLabel> taft_J(int d) {
  std::vector<TaftLabel> out;
  for (const auto& x : taft_labels(d))
    if (x.l + x.p < d) out.push_back(x);
  return out;
}

/// c = d zeta / (zeta - 1); c^2 = sdim * dim^R(1bar) with the canonical J.
inline CycNum taft_normalizer(int d) {
  const CycNum z = root_of_unity(static_cast<unsigned>(d), 1);
  return CycNum(d) * z / (z - CycNum(1));
}

inline RawDatum taft_double(int d) {
  check_taft_d(d);
  const auto N = static_cast<unsigned>(d);
  const CycNum z = root_of_unity(N, 1);
  const CycNum pre = z / (CycNum(1) - z);
  const auto labels = taft_labels(d);
  RawDatum r;
  r.duality.emplace();
  std::vector<std::vector<CycNum>> rows;
  for (const auto& x : labels) {
    r.labels.push_back(to_string(x));
    // zeta^{p(l+p)} is the diagonal of T = diag(theta^-1); only theta = zeta^{-p(l+p)} satisfies
    // theta_{X*} dim^R(X) = theta_X dim^L(X) against this S-matrix
    r.twists.push_back(root_of_unity(N, -x.p * (x.l + x.p)));
    r.duality->push_back(taft_index(d, {x.l, static_cast<int>(nt::mod(1 - x.l - x.p, d))}));
    std::vector<CycNum> row;
    for (const auto& y : labels) {
      const long e = -x.l * y.l - x.l * y.p - x.p * y.l - 2 * x.p * y.p;
      row.push_back(pre * root_of_unity(N, e) * (CycNum(1) - root_of_unity(N, x.l * y.l)));
    }
    rows.push_back(std::move(row));
  }
  r.S = CycMatrix::from_rows(rows);
  r.preferred_J.emplace();
  for (const auto& x : taft_J(d)) r.preferred_J->push_back(taft_index(d, x));
  r.normalizer = taft_normalizer(d);
  return r;
}

/// zeta^{-ll'-lp'-pl'-2pp'} (zeta^{ll'} - 1) / d on J x J.
inline CycMatrix taft_normalized_S(int d) {
  check_taft_d(d);
  const auto N = static_cast<unsigned>(d);
  const auto J = taft_J(d);
  std::vector<std::vector<CycNum>> rows;
  for (const auto& x : J) {
    std::vector<CycNum> row;
    for (const auto& y : J) {
      const long e = -x.l * y.l - x.l * y.p - x.p * y.l - 2 * x.p * y.p;
      row.push_back(root_of_unity(N, e) * (root_of_unity(N, x.l * y.l) - CycNum(1)) * CycNum(Rational(1, d)));
    }
    rows.push_back(std::move(row));
  }
  return CycMatrix::from_rows(rows);
}

using TaftMultiset = std::map<TaftLabel, long>;

namespace detail {

inline void taft_add(TaftMultiset& into, const TaftMultiset& from, long sign) {
  for (const auto& [k, v] : from) {
    long& slot = into[k];
    slot += sign * v;
    if (slot < 0) throw Error("taft fusion: multiset subtraction went negative at " + to_string(k));
    if (slot == 0) into.erase(k);
  }
}

/// M_{l,0} (x) M_{l',q}.
inline TaftMultiset taft_fuse(int d, int l, int lp, int q) {
  auto mk = [&](int a, int b) { return TaftLabel{a, static_cast<int>(nt::mod(b, d))}; };
  TaftMultiset out;
  if (l == 1) {
    out[mk(lp, q)] = 1;
  } else if (l == 2) {
    if (lp == d - 1) {
      out[mk(d - 2, q + 1)] += 1;
    } else if (lp == 1) {
      out[mk(2, q)] += 1;
    } else {
      out[mk(lp + 1, q)] += 1;
      out[mk(lp - 1, q + 1)] += 1;
    }
  } else {
    // M_{2,0} (x) M_{l-1,0} = M_{l,0} + M_{l-2,1}
    for (const auto& [y, m] : taft_fuse(d, l - 1, lp, q)) {
      TaftMultiset part = taft_fuse(d, 2, y.l, y.p);
      for (auto& [k, v] : part) v *= m;
      taft_add(out, part, 1);
    }
    taft_add(out, taft_fuse(d, l - 2, lp, q + 1), -1);
  }
  for (const auto& [k, v] : out)
    if (k.l < 1 || k.l >= d) throw Error("taft fusion produced the excluded module " + to_string(k));
  return out;
}

}  // namespace detail

/// Decomposition of x (x) y in the Taft double.
inline TaftMultiset taft_fusion(int d, TaftLabel x, TaftLabel y) {
  check_taft_d(d);
  for (const auto& t : {x, y})
    if (t.l < 1 || t.l >= d || t.p < 0 || t.p >= d) throw HypothesisError("invalid taft label " + to_string(t));
  return detail::taft_fuse(d, x.l, y.l, x.p + y.p);
}

/// Fusion tensor on all labels from taft_fusion.
inline FusionTensor taft_fusion_tensor(int d) {
  const auto labels = taft_labels(d);
  const std::size_t n = labels.size();
  FusionTensor t;
  for (const auto& x : labels) t.labels.push_back(to_string(x));
  t.unit = 0;
  t.constants.assign(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [z, m] : taft_fusion(d, labels[i], labels[j])) t.at(i, j, taft_index(d, z)) = m;
  return t;
}

inline std::vector<std::size_t> taft_epsilon_map(int d) {
  std::vector<std::size_t> out;
  for (const auto& x : taft_labels(d)) out.push_back(taft_index(d, taft_epsilon_action(d, x)));
  return out;
}

// ---------------------------------------------------------------------------
// C(sl2, q) at q = zeta_16, simples V0, V2, V4, V6

inline CycNum q16_bracket3() { return root_of_unity(16, -2) + CycNum(1) + root_of_unity(16, 2); }

struct Sl2Counterexample {
  RawDatum full;
  RawDatum bold;
};

inline Sl2Counterexample sl2_q16_counterexample() {
  const CycNum b = q16_bracket3();
  const CycNum i = root_of_unity(16, 4);
  const CycNum one(1);
  Sl2Counterexample c;
  c.full.labels = {"V0", "V2", "V4", "V6"};
  c.full.S = CycMatrix::from_rows({{one, b, b, one}, {b, -one, -one, b}, {b, -one, -one, b}, {one, b, b, one}});
  // T = diag(1, -i, i, -1) is diag(theta^-1)
  c.full.twists = {one, i, -i, -one};
  c.full.duality = std::vector<std::size_t>{0, 1, 2, 3};

  c.bold.kind = RawKind::Bold;
  c.bold.labels = {"V0", "V2"};
  c.bold.S = CycMatrix::from_rows({{one, b}, {b, -one}});
  c.bold.twists = {one, i};
  c.bold.duality = std::vector<std::size_t>{0, 1};
  c.bold.duality_signs = {1, 1};
  return c;
}

// ---------------------------------------------------------------------------
// Family spec strings: "taft:d=5", "pointed:n=7,a=1,k0=2", "counterexample:sl2q16[,part=full]"

struct FamilySpec {
  std::string family;
  std::map<std::string, std::string> params;
};

inline FamilySpec parse_family_spec(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0) throw ParseError("family spec must look like name:key=value,...: \"" + s + "\"");
  FamilySpec f{s.substr(0, colon), {}};
  std::string rest = s.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        f.params[item] = "";
      } else {
        f.params[item.substr(0, eq)] = item.substr(eq + 1);
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return f;
}

namespace detail {

inline long spec_int(const FamilySpec& f, const std::string& key, std::optional<long> fallback = {}) {
  auto it = f.params.find(key);
  if (it == f.params.end()) {
    if (fallback) return *fallback;
    throw ParseError(f.family + ": missing parameter " + key);
  }
  long v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(f.family + ": parameter " + key + " must be an integer, got \"" + s + "\"");
  return v;
}

inline void only_keys(const FamilySpec& f, std::initializer_list<std::string> keys) {
  for (const auto& [k, v] : f.params)
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ParseError(f.family + ": unknown parameter " + k);
}

}  // namespace detail

/// Builds the datum a spec string names. Bad specs raise ParseError.
inline RawDatum family_from_spec(const std::string& spec) {
  const FamilySpec f = parse_family_spec(spec);
  if (f.family == "taft") {
    detail::only_keys(f, {"d"});
    const long d = detail::spec_int(f, "d");
    if (d < 2 || d > 40) throw ParseError("taft: d must be between 2 and 40, got " + std::to_string(d));
    return taft_double(static_cast<int>(d));
  }
  if (f.family == "pointed") {
    detail::only_keys(f, {"n", "a", "k0"});
    const long n = detail::spec_int(f, "n");
    if (n < 3 || n % 2 == 0 || n > 1000) throw ParseError("pointed: n must be odd, between 3 and 1000, got " + std::to_string(n));
    return pointed_cyclic(n, detail::spec_int(f, "a", 1), detail::spec_int(f, "k0", 0));
  }
  if (f.family == "counterexample") {
    detail::only_keys(f, {"sl2q16", "part"});
    if (!f.params.count("sl2q16")) throw ParseError("counterexample: only sl2q16 is known");
    const auto it = f.params.find("part");
    const std::string part = it == f.params.end() ? "bold" : it->second;
    if (part != "bold" && part != "full") throw ParseError("counterexample: part must be bold or full");
    auto c = sl2_q16_counterexample();
    return part == "full" ? c.full : c.bold;
  }
  throw ParseError("unknown family \"" + f.family + "\"");
}

}  // namespace modkit
