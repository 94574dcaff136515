#pragma once

// Full verification of a datum: branch on the symmetric center, run every identity on the
// resulting frame, normalize when a square root is available, and classify.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modkit/sldeg.hpp"

namespace modkit {

enum class VerifyMode { Auto, Nondeg, Sldeg };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  long precision_bits = 256;
  std::optional<std::vector<std::size_t>> J_override;
  std::optional<CycNum> normalizer;  // overrides the datum's own
};

struct VerifyResult {
  VerificationReport report;
  // N-modular, Z-modular, non-integral, degenerate, unsupported or invalid
  std::string classification = "invalid";
  bool z_modular = false;
  bool n_modular = false;
  std::optional<Frame> frame;
  std::optional<SlightlyDegenerateData> sldeg;
  std::optional<VerlindeResult> verlinde;
  std::optional<ModularDatum> normalized;

  bool passed() const { return report.passed(); }
};

namespace detail {

inline json label_list(const RawDatum& raw, const std::vector<std::size_t>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(raw.labels[x]);
  return out;
}

/// Integral data that fail an identity are "invalid"; N- and Z-modular need every check to pass.
inline void finish(VerifyResult& r) {
  if (r.classification != "degenerate" && r.classification != "unsupported") {
    if (!r.verlinde) {
      r.classification = "invalid";
    } else if (r.verlinde->integral && !r.report.passed()) {
      r.classification = "invalid";
    } else {
      r.classification = r.verlinde->classification();
    }
  }
  r.z_modular = r.classification == "N-modular" || r.classification == "Z-modular";
  r.n_modular = r.classification == "N-modular";
  r.report.run("classification", [&] {
    return Outcome{true, {{"class", r.classification}, {"z_modular", r.z_modular}, {"n_modular", r.n_modular}}};
  });
}

/// Identities on the frame, then the normalized datum when a normalizer exists.
inline void run_frame(VerifyResult& r, const Frame& f, const VerifyOptions& opt) {
  r.verlinde = check_frame(f, r.report, FrameOptions{opt.precision_bits});
  const Normalizer c = choose_normalizer(f, opt.normalizer ? opt.normalizer : f.raw.normalizer);
  if (!c.c) {
    r.report.skip("normalizer", "verified up to scalar: no square root of D u found in the field");
    return;
  }
  r.report.run("normalizer", [&] { return Outcome{true, c.witness}; });
  r.normalized = normalized_datum(f, *c.c);
  r.report.append(check_axioms(*r.normalized), "normalized: ");
}

inline bool build_frame(VerifyResult& r, RawDatum raw, bool super) {
  try {
    r.frame = make_frame(std::move(raw), super);
    return true;
  } catch (const Error& e) {
    r.report.run("frame", [&] { return Outcome{false, {{"error", e.what()}}}; });
    return false;
  }
}

}  // namespace detail

inline VerifyResult verify(const ModularDatum& d) {
  VerifyResult r;
  r.report = check_axioms(d);
  if (r.report.find("datum_shape")) return r;
  try {
    r.verlinde = verlinde_fusion(d);
  } catch (const Error&) {
  }
  r.normalized = d;
  detail::finish(r);
  return r;
}

inline VerifyResult verify(const RawDatum& raw, const VerifyOptions& opt = {}) {
  VerifyResult r;
  try {
    raw.validate();
  } catch (const Error& e) {
    r.report.run("datum_shape", [&] { return Outcome{false, {{"error", e.what()}}}; });
    return r;
  }
  const Status has_duality = r.report.run("duality", [&] {
    const auto& d = raw.dual();
    for (std::size_t x = 0; x < raw.size(); ++x)
      if (d[d[x]] != x) return Outcome{false, {{"label", raw.labels[x]}, {"reason", "duality is not an involution"}}};
    if (!(raw.twists[raw.unit] == CycNum(1))) return Outcome{false, {{"reason", "theta of the unit is not 1"}}};
    return Outcome{};
  });
  if (has_duality != Status::Pass) {
    detail::finish(r);
    return r;
  }

  if (raw.kind == RawKind::Bold) {
    if (opt.mode == VerifyMode::Nondeg) {
      r.report.run("mode", [&] { return Outcome{false, {{"reason", "bold data is slightly degenerate by construction"}}}; });
    } else if (detail::build_frame(r, raw, true)) {
      detail::run_frame(r, *r.frame, opt);
    }
    detail::finish(r);
    return r;
  }

  const auto center = detect_symmetric_center(raw);
  enum class Shape { Nondeg, Sldeg, Unsupported, Degenerate } shape;
  std::optional<std::size_t> eps;
  if (center.size() == 1) {
    shape = Shape::Nondeg;
  } else if (center.size() == 2) {
    eps = center[0] == raw.unit ? center[1] : center[0];
    const bool minus_one = raw.dim_R(*eps) == CycNum(-1) && raw.twists[*eps] == CycNum(1);
    shape = minus_one ? Shape::Sldeg : Shape::Unsupported;
  } else {
    shape = Shape::Degenerate;
  }
  r.report.run("symmetric_center", [&] {
    static const char* names[] = {"nondegenerate", "slightly degenerate", "unsupported", "degenerate"};
    json w = {{"center", detail::label_list(raw, center)}, {"shape", names[static_cast<int>(shape)]}};
    if (eps) w["dim_eps"] = to_json(raw.dim_R(*eps)), w["theta_eps"] = to_json(raw.twists[*eps]);
    if (shape == Shape::Unsupported)
      w["reason"] = "central invertible with dim +1 or twist != 1; the SL2(Z) relations need not hold";
    bool ok = shape == Shape::Nondeg || shape == Shape::Sldeg;
    if (opt.mode == VerifyMode::Nondeg && shape != Shape::Nondeg) ok = false, w["expected"] = "nondegenerate";
    if (opt.mode == VerifyMode::Sldeg && shape != Shape::Sldeg) ok = false, w["expected"] = "slightly degenerate";
    return Outcome{ok, w};
  });
  if (shape == Shape::Degenerate || shape == Shape::Unsupported) {
    r.classification = shape == Shape::Degenerate ? "degenerate" : "unsupported";
    detail::finish(r);
    return r;
  }
  if ((opt.mode == VerifyMode::Nondeg && shape != Shape::Nondeg) ||
      (opt.mode == VerifyMode::Sldeg && shape != Shape::Sldeg)) {
    detail::finish(r);
    return r;
  }
  r.report.run("S_raw_symmetric", [&] { return matrices_equal(raw.S, transpose(raw.S), "S", "S^t"); });

  if (shape == Shape::Nondeg) {
    if (detail::build_frame(r, raw, false)) detail::run_frame(r, *r.frame, opt);
    detail::finish(r);
    return r;
  }

  try {
    r.sldeg = reduce_slightly_degenerate(raw, opt.J_override);
  } catch (const Error& e) {
    r.report.run("slightly_degenerate_reduction", [&] { return Outcome{false, {{"error", e.what()}}}; });
    detail::finish(r);
    return r;
  }
  const auto& sl = *r.sldeg;
  r.report.run("epsilon_translate", [&] {
    json map = json::object();
    for (std::size_t x = 0; x < raw.size(); ++x) map[raw.labels[x]] = raw.labels[sl.eps_map[x]];
    return Outcome{true, {{"epsilon", raw.labels[sl.epsilon]}, {"map", map}, {"J", detail::label_list(raw, sl.J)}}};
  });
  r.report.run("rank_half", [&] {
    const std::size_t rk = rank(raw.S);
    return Outcome{2 * rk == raw.size(), {{"rank", rk}, {"size", raw.size()}}};
  });
  r.report.run("sdim_half", [&] {
    const Dims full = dims_of(raw);
    const CycNum twice = CycNum(2) * sl.sdim();
    return Outcome{twice == full.global_dim, {{"sdim", to_json(sl.sdim())}, {"dim", to_json(full.global_dim)}}};
  });
  r.frame = sl.frame;
  detail::run_frame(r, *r.frame, opt);
  detail::finish(r);
  return r;
}

}  // namespace modkit
