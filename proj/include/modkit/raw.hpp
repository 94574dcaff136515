#pragma once

// Operations on unnormalized (categorical) S-matrices and twists.

#include <optional>
#include <string>
#include <vector>

#include "modkit/interval.hpp"
#include "modkit/sqrt.hpp"
#include "modkit/verlinde.hpp"

namespace modkit {

struct Dims {
  std::vector<CycNum> dim_R, dim_L, sqnorm;
  CycNum global_dim;
};

/// dim^R from the unit row, dim^L(X) = dim^R(X*) (with the eps sign on bold data),
/// |X|^2 = dim^R dim^L and their sum. Throws MissingDuality without duality data.
inline Dims dims_of(const RawDatum& raw) {
  const auto& dual = raw.dual();
  Dims d;
  d.global_dim = CycNum(0);
  for (std::size_t x = 0; x < raw.size(); ++x) {
    d.dim_R.push_back(raw.dim_R(x));
    d.dim_L.push_back(CycNum(raw.dual_sign(x)) * raw.dim_R(dual[x]));
    d.sqnorm.push_back(d.dim_R.back() * d.dim_L.back());
    d.global_dim += d.sqnorm.back();
  }
  return d;
}

inline Outcome check_sqnorms_totally_positive(const RawDatum& raw, const Dims& d, long precision_bits) {
  for (std::size_t x = 0; x < d.sqnorm.size(); ++x)
    if (!is_totally_positive(d.sqnorm[x], precision_bits))
      return {false, {{"label", raw.labels[x]}, {"sqnorm", to_json(d.sqnorm[x])}}};
  return {true, {{"precision_bits", precision_bits}}};
}

/// S S^* = scale Id, the square-root-free form of unitarity of the normalized matrix.
inline Outcome check_raw_unitarity(const RawDatum& raw, const CycNum& scale) {
  const CycMatrix lhs = raw.S * conj_transpose(raw.S);
  return matrices_equal(lhs, mat_scale(scale, CycMatrix::identity(raw.size())), "S S^*", "scale Id");
}

/// Labels X with S[X, Y] = dim^R(X) dim^R(Y) for every Y.
inline std::vector<std::size_t> detect_symmetric_center(const RawDatum& raw) {
  std::vector<std::size_t> center;
  for (std::size_t x = 0; x < raw.size(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < raw.size() && central; ++y) central = raw.S(x, y) == raw.dim_R(x) * raw.dim_R(y);
    if (central) center.push_back(x);
  }
  return center;
}

struct BarData {
  std::vector<std::size_t> bar;
  std::size_t unit_bar = 0;
};

/// X -> Xbar with s_Xbar(Y) = s_X(Y*) for all Y, compared cross-multiplied:
/// S[Xbar, Y] dim^R(X) = S[X, Y*] dim^R(Xbar). Throws DegeneracyError on no or several matches.
inline BarData bar_involution(const RawDatum& raw) {
  const auto& dual = raw.dual();
  const std::size_t n = raw.size();
  BarData b;
  b.bar.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<CycNum> target(n);
    for (std::size_t y = 0; y < n; ++y) target[y] = CycNum(raw.dual_sign(y)) * raw.S(x, dual[y]);
    std::optional<std::size_t> match;
    for (std::size_t c = 0; c < n; ++c) {
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y) ok = raw.S(c, y) * raw.dim_R(x) == target[y] * raw.dim_R(c);
      if (!ok) continue;
      if (match)
        throw DegeneracyError("labels " + raw.labels[*match] + " and " + raw.labels[c] +
                              " have the same character; bar is not well defined");
      match = c;
    }
    if (!match) throw DegeneracyError("no label matches the dual character of " + raw.labels[x]);
    b.bar[x] = *match;
  }
  for (std::size_t x = 0; x < n; ++x)
    if (b.bar[b.bar[x]] != x) throw DegeneracyError("bar is not an involution at " + raw.labels[x]);
  b.unit_bar = b.bar[raw.unit];
  return b;
}

/// tau^+ and tau^- as sums of theta^{+-1} |X|^2 over the labels of raw.
inline std::pair<CycNum, CycNum> gauss_sums(const RawDatum& raw, const Dims& d) {
  CycNum plus(0), minus(0);
  for (std::size_t x = 0; x < raw.size(); ++x) {
    plus += raw.twists[x] * d.sqnorm[x];
    minus += inv(raw.twists[x]) * d.sqnorm[x];
  }
  return {plus, minus};
}

/// theta_X theta_Y S[X, Y] = sum_Z N_{X,Y}^Z dim^R(Z) theta_Z at every pair.
inline Outcome check_balancing(const RawDatum& raw, const FusionTensor& fusion) {
  const std::size_t n = raw.size();
  if (fusion.size() != n) throw ShapeMismatch("fusion tensor does not match the datum");
  std::vector<CycNum> weight(n);
  for (std::size_t z = 0; z < n; ++z) weight[z] = raw.dim_R(z) * raw.twists[z];
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      CycNum rhs(0);
      for (std::size_t z = 0; z < n; ++z)
        if (const auto c = fusion.at(x, y, z); c != 0) rhs += CycNum(c) * weight[z];
      const CycNum lhs = raw.twists[x] * raw.twists[y] * raw.S(x, y);
      if (!(lhs == rhs))
        return {false, {{"X", raw.labels[x]}, {"Y", raw.labels[y]}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}}};
    }
  return {};
}

}  // namespace modkit
