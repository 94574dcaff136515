#pragma once

// Modular-datum types and the verification report.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modkit/json_io.hpp"

namespace modkit {

/// Normalized pair (S, T) on a label set with a distinguished unit.
///
/// T holds the twists theta_X themselves. The categorical T-matrix is diag(theta^-1);
/// a normalized datum is built from S~ and the inverse of that matrix.
struct ModularDatum {
  std::vector<std::string> labels;
  std::size_t unit = 0;
  CycMatrix S;
  std::vector<CycNum> T;

  std::size_t size() const { return labels.size(); }

  void validate() const {
    const std::size_t n = size();
    if (n == 0) throw ShapeMismatch("datum has no labels");
    if (S.rows() != n || S.cols() != n)
      throw ShapeMismatch("S is " + std::to_string(S.rows()) + "x" + std::to_string(S.cols()) + " but there are " +
                          std::to_string(n) + " labels");
    if (T.size() != n) throw ShapeMismatch("T has " + std::to_string(T.size()) + " entries, expected " + std::to_string(n));
    if (unit >= n) throw ShapeMismatch("unit index out of range");
  }
};

enum class RawKind { Full, Bold };

/// Unnormalized S-matrix and twists as read off a category.
///
/// Full: S is S^{R,R} on all simples. Bold: S is the restriction to a set J of
/// representatives of the eps-orbits; duality then maps X to the representative of X*,
/// and duality_signs[X] is the factor with S[., X*] = sign * S[., duality(X)]
/// (dim(eps) when X* lies outside J, else +1).
struct RawDatum {
  std::vector<std::string> labels;
  std::size_t unit = 0;
  CycMatrix S;
  std::vector<CycNum> twists;
  RawKind kind = RawKind::Full;
  std::optional<std::vector<std::size_t>> duality;
  std::vector<int> duality_signs;
  std::optional<std::vector<std::size_t>> preferred_J;
  std::optional<CycNum> normalizer;

  std::size_t size() const { return labels.size(); }
  const CycNum& dim_R(std::size_t x) const { return S(unit, x); }
  int dual_sign(std::size_t x) const { return duality_signs.empty() ? 1 : duality_signs[x]; }

  const std::vector<std::size_t>& dual() const {
    if (!duality) throw MissingDuality("duality data is required but absent");
    return *duality;
  }

  void validate() const {
    const std::size_t n = size();
    if (n == 0) throw ShapeMismatch("datum has no labels");
    if (S.rows() != n || S.cols() != n)
      throw ShapeMismatch("S is " + std::to_string(S.rows()) + "x" + std::to_string(S.cols()) + " but there are " +
                          std::to_string(n) + " labels");
    if (twists.size() != n) throw ShapeMismatch("twists has " + std::to_string(twists.size()) + " entries");
    if (unit >= n) throw ShapeMismatch("unit index out of range");
    if (duality) {
      if (duality->size() != n) throw ShapeMismatch("duality has wrong length");
      for (auto d : *duality)
        if (d >= n) throw ShapeMismatch("duality maps outside the label set");
    }
    if (!duality_signs.empty()) {
      if (duality_signs.size() != n) throw ShapeMismatch("duality_signs has wrong length");
      for (int s : duality_signs)
        if (s != 1 && s != -1) throw ShapeMismatch("duality_signs entries must be +1 or -1");
    }
    if (preferred_J)
      for (auto j : *preferred_J)
        if (j >= n) throw ShapeMismatch("J hint refers to an unknown label");
  }
};

/// Integer structure constants N_{i,j}^k, stored as constants[(i*n + j)*n + k].
struct FusionTensor {
  std::vector<std::string> labels;
  std::size_t unit = 0;
  std::vector<std::size_t> duality;
  std::vector<int> duality_signs;
  std::vector<std::int64_t> constants;

  std::size_t size() const { return labels.size(); }
  std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const { return constants[(i * size() + j) * size() + k]; }
  std::int64_t& at(std::size_t i, std::size_t j, std::size_t k) { return constants[(i * size() + j) * size() + k]; }
};

enum class Status { Pass, Fail, Skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  json witness = json::object();
  std::int64_t micros = 0;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// What a check body returns.
struct Outcome {
  bool ok = true;
  json witness = json::object();
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail) return false;
    return true;
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// Runs body, timing it; library errors become failures with the message as witness.
  template <class F>
  Status run(const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{name};
    try {
      Outcome o = body();
      r.status = o.ok ? Status::Pass : Status::Fail;
      r.witness = std::move(o.witness);
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.witness = {{"error", e.what()}};
    }
    r.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    checks.push_back(std::move(r));
    return checks.back().status;
  }

  void skip(const std::string& name, const std::string& reason) {
    checks.push_back({name, Status::Skipped, {{"reason", reason}}, 0});
  }

  void append(const VerificationReport& other, const std::string& prefix = "") {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// First entry where a and b differ, as a witness object; nullopt when equal.
inline std::optional<json> first_difference(const CycMatrix& a, const CycMatrix& b, const char* lhs = "lhs",
                                            const char* rhs = "rhs") {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return json{{"shape_lhs", {a.rows(), a.cols()}}, {"shape_rhs", {b.rows(), b.cols()}}};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return json{{"row", i}, {"col", j}, {lhs, to_json(a(i, j))}, {rhs, to_json(b(i, j))}};
  return std::nullopt;
}

inline Outcome matrices_equal(const CycMatrix& a, const CycMatrix& b, const char* lhs = "lhs", const char* rhs = "rhs") {
  if (auto w = first_difference(a, b, lhs, rhs)) return {false, *w};
  return {};
}

/// lambda with M = lambda * Id, if there is one.
inline std::optional<CycNum> scalar_of(const CycMatrix& m) {
  if (!m.square() || m.rows() == 0) return std::nullopt;
  const CycNum lambda = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == (i == j ? lambda : CycNum(0)))) return std::nullopt;
  return lambda;
}

}  // namespace modkit
