#pragma once

// Verlinde coefficients, fusion-tensor axioms and quotient constants.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "modkit/datum.hpp"

namespace modkit {

inline constexpr std::size_t kNoDual = std::numeric_limits<std::size_t>::max();

/// Exact Verlinde output: the tensor (where integral) plus its sign classification.
struct VerlindeResult {
  FusionTensor tensor;
  bool integral = true;
  bool nonnegative = true;
  json witness = json::object();

  std::string classification() const {
    if (!integral) return "non-integral";
    return nonnegative ? "N-modular" : "Z-modular";
  }

  json summary() const {
    json w = witness;
    w["class"] = classification();
    w["integral"] = integral;
    w["nonnegative"] = nonnegative;
    return w;
  }
};

/// Reads the duality off N_{i,j}^{unit}: the unique j with a nonzero entry, which must be +-1.
inline void derive_duality(FusionTensor& t) {
  const std::size_t n = t.size();
  t.duality.assign(n, kNoDual);
  t.duality_signs.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = t.at(i, j, t.unit);
      if (v == 0) continue;
      if (t.duality[i] != kNoDual || (v != 1 && v != -1)) {
        t.duality[i] = kNoDual;
        t.duality_signs[i] = 0;
        break;
      }
      t.duality[i] = j;
      t.duality_signs[i] = static_cast<int>(v);
    }
  }
}

/// Converts n^3 exact values into a tensor, recording integrality and signs.
inline VerlindeResult tensor_from_values(const std::vector<std::string>& labels, std::size_t unit,
                                         const std::vector<CycNum>& values) {
  VerlindeResult r;
  const std::size_t n = labels.size();
  r.tensor.labels = labels;
  r.tensor.unit = unit;
  r.tensor.constants.assign(n * n * n, 0);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const CycNum& v = values[idx];
    const std::size_t i = idx / (n * n), j = idx / n % n, k = idx % n;
    if (!v.is_rational() || v.coeffs()[0].get_den() != 1 || !v.coeffs()[0].get_num().fits_slong_p()) {
      if (r.integral)
        r.witness["first_non_integral"] = {{"i", labels[i]}, {"j", labels[j]}, {"k", labels[k]}, {"value", to_json(v)}};
      r.integral = false;
      continue;
    }
    const long x = v.coeffs()[0].get_num().get_si();
    if (x < 0 && r.nonnegative) {
      r.witness["first_negative"] = {{"i", labels[i]}, {"j", labels[j]}, {"k", labels[k]}, {"value", x}};
      r.nonnegative = false;
    }
    r.tensor.constants[idx] = x;
  }
  derive_duality(r.tensor);
  return r;
}

/// N_{i,j}^k = sum_l S_{i,l} S_{j,l} conj(S_{k,l}) / S_{unit,l}.
inline VerlindeResult verlinde_fusion(const ModularDatum& d) {
  d.validate();
  const std::size_t n = d.size();
  for (std::size_t l = 0; l < n; ++l)
    if (d.S(d.unit, l).is_zero()) throw DivisionByZero();
  const unsigned N = d.S.conductor();
  std::vector<CycNum> ratio(n * n), conj_s(n * n);
  for (std::size_t l = 0; l < n; ++l) {
    const CycNum inv0 = inv(d.S(d.unit, l)).lift(N);
    for (std::size_t i = 0; i < n; ++i) {
      ratio[i * n + l] = d.S(i, l) * inv0;
      conj_s[i * n + l] = conj(d.S(i, l));
    }
  }
  std::vector<CycNum> values(n * n * n);
  CycAccumulator acc(N);
  std::vector<CycNum> w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) w[l] = ratio[i * n + l] * d.S(j, l);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) acc.add_product(w[l], conj_s[k * n + l]);
        values[(i * n + j) * n + k] = acc.take();
      }
    }
  return tensor_from_values(d.labels, d.unit, values);
}

/// Unit laws, duality detection and associativity; the first violation is the witness.
inline Outcome check_fusion_axioms(const FusionTensor& t) {
  const std::size_t n = t.size();
  const auto& L = t.labels;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t delta = j == k ? 1 : 0;
      if (t.at(t.unit, j, k) != delta || t.at(j, t.unit, k) != delta)
        return {false, {{"law", "unit"}, {"j", L[j]}, {"k", L[k]}}};
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.duality.size() != n || t.duality[i] == kNoDual)
      return {false, {{"law", "duality"}, {"i", L[i]}, {"reason", "no unique dual with N_{i,j}^unit = +-1"}}};
    const std::size_t j = t.duality[i];
    if (t.duality[j] != i) return {false, {{"law", "duality"}, {"i", L[i]}, {"reason", "duality is not an involution"}}};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          std::int64_t lhs = 0, rhs = 0;
          for (std::size_t m = 0; m < n; ++m) {
            lhs += t.at(i, j, m) * t.at(m, k, l);
            rhs += t.at(j, k, m) * t.at(i, m, l);
          }
          if (lhs != rhs)
            return {false,
                    {{"law", "associativity"}, {"i", L[i]}, {"j", L[j]}, {"k", L[k]}, {"l", L[l]}, {"lhs", lhs}, {"rhs", rhs}}};
        }
  return {};
}

/// N_{X,Y}^Z + sign * N_{X,Y}^{eps(Z)} for X, Y, Z in J.
inline FusionTensor quotient_constants(const FusionTensor& full, const std::vector<std::size_t>& eps,
                                       const std::vector<std::size_t>& J, int sign) {
  FusionTensor q;
  const std::size_t m = J.size();
  for (auto x : J) q.labels.push_back(full.labels[x]);
  bool unit_found = false;
  for (std::size_t a = 0; a < m; ++a)
    if (J[a] == full.unit) {
      q.unit = a;
      unit_found = true;
    }
  if (!unit_found) throw HypothesisError("J must contain the unit");
  q.constants.assign(m * m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        q.at(a, b, c) = full.at(J[a], J[b], J[c]) + sign * full.at(J[a], J[b], eps[J[c]]);
  derive_duality(q);
  return q;
}

}  // namespace modkit
