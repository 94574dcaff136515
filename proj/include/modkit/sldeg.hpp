#pragma once

// Slightly degenerate inputs: the symmetric center is {1, eps} with dim(eps) = -1 and
// theta_eps = 1. Everything is pushed to a set J of representatives of the eps-orbits.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "modkit/frame.hpp"

namespace modkit {

struct SlightlyDegenerateData {
  RawDatum parent;
  std::size_t epsilon = 0;
  std::vector<std::size_t> eps_map;  // X -> eps (x) X on parent labels
  std::vector<std::size_t> J;        // parent indices, ascending
  Frame frame;                       // bold datum on J with bar, sdim and u = dim^R(1bar)
  CycMatrix E;

  const RawDatum& bold() const { return frame.raw; }
  const std::vector<std::size_t>& bar() const { return frame.bar.bar; }
  std::size_t unit_bar() const { return frame.bar.unit_bar; }
  const CycNum& sdim() const { return frame.D; }
  const CycNum& dim_R_unit_bar() const { return frame.u; }
};

/// X -> X' with S[X', .] = dim(eps) S[X, .]; throws when a row has no or several partners.
inline std::vector<std::size_t> epsilon_translate(const RawDatum& full, std::size_t eps) {
  const std::size_t n = full.size();
  const CycNum d_eps = full.dim_R(eps);
  std::vector<std::size_t> map(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::optional<std::size_t> found;
    for (std::size_t c = 0; c < n; ++c) {
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y) ok = full.S(c, y) == d_eps * full.S(x, y);
      if (!ok) continue;
      if (found)
        throw DegeneracyError("rows " + full.labels[*found] + " and " + full.labels[c] + " are both eps-translates of " +
                              full.labels[x]);
      found = c;
    }
    if (!found) throw HypothesisError("no eps-translate found for " + full.labels[x]);
    map[x] = *found;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (map[x] == x) throw HypothesisError("eps-translate has a fixed point at " + full.labels[x]);
    if (map[map[x]] != x) throw HypothesisError("eps-translate is not an involution at " + full.labels[x]);
  }
  return map;
}

/// True when J holds the unit and exactly one label of every eps-orbit.
inline bool is_valid_J(const std::vector<std::size_t>& J, const std::vector<std::size_t>& eps_map, std::size_t unit) {
  std::vector<int> hit(eps_map.size(), 0);
  for (auto x : J) {
    if (x >= eps_map.size()) return false;
    ++hit[x];
    ++hit[eps_map[x]];
  }
  return std::find(J.begin(), J.end(), unit) != J.end() &&
         std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
}

/// Lowest index of each orbit, with the unit taking the place of eps.
inline std::vector<std::size_t> canonical_J(const std::vector<std::size_t>& eps_map, std::size_t unit) {
  std::vector<std::size_t> J;
  for (std::size_t x = 0; x < eps_map.size(); ++x) {
    const std::size_t y = eps_map[x];
    if (x == unit || (x < y && y != unit)) J.push_back(x);
  }
  return J;
}

/// Bold datum on J: duality goes to the representative of X*, with sign dim(eps) when X* is outside J.
inline RawDatum restrict_to_J(const RawDatum& full, const std::vector<std::size_t>& eps_map,
                              const std::vector<std::size_t>& J, int dim_eps) {
  const auto& dual = full.dual();
  std::vector<std::size_t> pos(full.size(), kNoDual);
  for (std::size_t a = 0; a < J.size(); ++a) pos[J[a]] = a;
  RawDatum b;
  b.kind = RawKind::Bold;
  b.S = full.S.restrict(J, J);
  b.duality.emplace();
  for (std::size_t a = 0; a < J.size(); ++a) {
    const std::size_t x = J[a];
    b.labels.push_back(full.labels[x]);
    b.twists.push_back(full.twists[x]);
    if (x == full.unit) b.unit = a;
    const std::size_t xd = dual[x];
    if (pos[xd] != kNoDual) {
      b.duality->push_back(pos[xd]);
      b.duality_signs.push_back(1);
    } else {
      b.duality->push_back(pos[eps_map[xd]]);
      b.duality_signs.push_back(dim_eps);
    }
  }
  b.normalizer = full.normalizer;
  return b;
}

/// Checks the hypotheses, picks J and builds the bold frame.
///
/// J is the override when given (it must be valid), else the datum's own preferred J when valid,
/// else canonical_J.
inline SlightlyDegenerateData reduce_slightly_degenerate(const RawDatum& full,
                                                         const std::optional<std::vector<std::size_t>>& J_override = {}) {
  full.validate();
  if (full.kind != RawKind::Full) throw HypothesisError("reduction needs the matrix on all simples");
  full.dual();
  const auto center = detect_symmetric_center(full);
  if (center.size() == 1) throw HypothesisError("symmetric center is trivial; the datum is nondegenerate");
  if (center.size() > 2) throw HypothesisError("symmetric center has " + std::to_string(center.size()) + " labels");
  SlightlyDegenerateData sl;
  sl.parent = full;
  sl.epsilon = center[0] == full.unit ? center[1] : center[0];
  const CycNum d_eps = full.dim_R(sl.epsilon);
  if (d_eps == CycNum(1))
    throw HypothesisError("dim(eps) = +1: the SL2(Z) relations can fail for this kind of symmetric center");
  if (!(d_eps == CycNum(-1))) throw HypothesisError("dim(eps) must be -1, got " + d_eps.to_string());
  if (!(full.twists[sl.epsilon] == CycNum(1)))
    throw HypothesisError("theta_eps must be 1, got " + full.twists[sl.epsilon].to_string());
  sl.eps_map = epsilon_translate(full, sl.epsilon);

  if (J_override) {
    sl.J = *J_override;
    std::sort(sl.J.begin(), sl.J.end());
    if (!is_valid_J(sl.J, sl.eps_map, full.unit))
      throw HypothesisError("J must contain the unit and one label from each eps-orbit");
  } else if (full.preferred_J && is_valid_J(*full.preferred_J, sl.eps_map, full.unit)) {
    sl.J = *full.preferred_J;
    std::sort(sl.J.begin(), sl.J.end());
  } else {
    sl.J = canonical_J(sl.eps_map, full.unit);
  }
  sl.frame = make_frame(restrict_to_J(full, sl.eps_map, sl.J, -1), true);
  sl.E = e_matrix(sl.frame);
  return sl;
}

/// sN_{X,Y}^Z on J from the bold matrix.
inline VerlindeResult signed_verlinde(const SlightlyDegenerateData& sl) { return frame_verlinde(sl.frame); }

/// The normalized datum (S~, theta) on J, or nullopt when no normalizer with c^2 = sdim u is available.
/// A supplied normalizer takes precedence over the one carried by the datum.
inline std::optional<ModularDatum> emit_zmodular(const SlightlyDegenerateData& sl,
                                                 const std::optional<CycNum>& normalizer = {}) {
  const Normalizer c = choose_normalizer(sl.frame, normalizer ? normalizer : sl.bold().normalizer);
  if (!c.c) return std::nullopt;
  return normalized_datum(sl.frame, *c.c);
}

}  // namespace modkit
