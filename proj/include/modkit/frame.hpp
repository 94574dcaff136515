#pragma once

// The identities shared by the nondegenerate and slightly degenerate cases.
//
// A Frame is the label set on which the identities live: every simple for a
// nondegenerate category, the representatives J (with the bold matrix) otherwise.
// D is dim(C) resp. sdim(C) and u = dim^R(1bar).

#include <optional>
#include <string>
#include <vector>

#include "modkit/axioms.hpp"
#include "modkit/raw.hpp"

namespace modkit {

struct Frame {
  RawDatum raw;
  bool super = false;
  Dims dims;
  BarData bar;
  CycNum D, u;
  CycNum tau_plus, tau_minus;

  std::size_t size() const { return raw.size(); }
  const char* tau_name(int sign) const {
    if (super) return sign > 0 ? "stau+" : "stau-";
    return sign > 0 ? "tau+" : "tau-";
  }
};

/// Throws MissingDuality or DegeneracyError when the frame cannot be formed.
inline Frame make_frame(RawDatum raw, bool super) {
  raw.validate();
  Frame f;
  f.super = super;
  f.dims = dims_of(raw);
  f.bar = bar_involution(raw);
  f.D = f.dims.global_dim;
  f.u = raw.dim_R(f.bar.unit_bar);
  std::tie(f.tau_plus, f.tau_minus) = gauss_sums(raw, f.dims);
  f.raw = std::move(raw);
  return f;
}

/// S^2 / (D u); the zero matrix when D u = 0.
inline CycMatrix e_matrix(const Frame& f) {
  const CycNum scale = f.D * f.u;
  if (scale.is_zero()) return CycMatrix(f.size(), f.size());
  return mat_scale(inv(scale), f.raw.S * f.raw.S);
}

/// Expected sign of E in row X: dim^R(X* (x) 1bar) / dim^R(Xbar) = dim^L(X) u / dim^R(Xbar).
/// It is +1 when X* (x) 1bar is the representative Xbar and dim(eps) when it is eps (x) Xbar.
inline std::vector<CycNum> expected_e_signs(const Frame& f) {
  std::vector<CycNum> out;
  for (std::size_t x = 0; x < f.size(); ++x) out.push_back(f.dims.dim_L[x] * f.u / f.dims.dim_R[f.bar.bar[x]]);
  return out;
}

/// Verlinde coefficients on the frame:
/// N_{X,Y}^Z = E[Z, Zbar] / (D u) * sum_W S[W,X] S[W,Y] S[W,Zbar] / dim^R(W).
inline VerlindeResult frame_verlinde(const Frame& f) {
  const std::size_t n = f.size();
  const CycMatrix& S = f.raw.S;
  const unsigned N = S.conductor();
  const CycMatrix E = e_matrix(f);
  const CycNum scale = f.D * f.u;
  if (scale.is_zero()) throw DivisionByZero();
  std::vector<CycNum> z_factor(n), inv_dim(n);
  for (std::size_t z = 0; z < n; ++z) z_factor[z] = (E(z, f.bar.bar[z]) / scale).lift(N);
  for (std::size_t w = 0; w < n; ++w) inv_dim[w] = inv(f.dims.dim_R[w]).lift(N);
  std::vector<CycNum> values(n * n * n);
  CycAccumulator acc(N);
  std::vector<CycNum> p(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      for (std::size_t w = 0; w < n; ++w) p[w] = S(w, x) * S(w, y) * inv_dim[w];
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t zb = f.bar.bar[z];
        for (std::size_t w = 0; w < n; ++w) acc.add_product(p[w], S(w, zb));
        CycNum v = acc.take() * z_factor[z];
        values[(y * n + x) * n + z] = v;
        values[(x * n + y) * n + z] = std::move(v);
      }
    }
  return tensor_from_values(f.raw.labels, f.raw.unit, values);
}

struct FrameOptions {
  long precision_bits = 256;
};

/// (ST)^3, S^4, (ST^-1)^3 and S^2 = D u E. The super frame uses the sdim and stau normalizations.
inline void check_sl2_relations(const Frame& f, VerificationReport& rep) {
  const std::size_t n = f.size();
  const RawDatum& raw = f.raw;
  const auto& L = raw.labels;
  const CycMatrix& S = raw.S;
  const CycMatrix id = CycMatrix::identity(n);
  std::vector<CycNum> theta_inv;
  for (const auto& t : raw.twists) theta_inv.push_back(inv(t));
  const CycMatrix T = CycMatrix::diagonal(theta_inv);  // categorical T = diag(theta^-1)
  const CycMatrix T_inv = CycMatrix::diagonal(raw.twists);

  const CycMatrix S2 = S * S;
  const CycMatrix E = e_matrix(f);
  rep.run("S^2 = D u E", [&] {
    if ((f.D * f.u).is_zero()) return Outcome{false, {{"reason", "D u = 0"}}};
    auto perm = is_signed_permutation(E);
    if (!perm) return Outcome{false, {{"reason", "S^2/(D u) is not a signed permutation"}, {"E", to_json(E)}}};
    const auto expected = expected_e_signs(f);
    json signs = json::object();
    for (std::size_t x = 0; x < n; ++x) {
      if (perm->perm[x] != f.bar.bar[x])
        return Outcome{false, {{"reason", "permutation differs from bar"}, {"label", L[x]}, {"column", L[perm->perm[x]]}}};
      const CycNum sign(perm->signs[x]);
      if (!(sign == expected[x]) || (!f.super && perm->signs[x] != 1))
        return Outcome{false, {{"reason", "sign mismatch"}, {"label", L[x]}, {"sign", perm->signs[x]},
                               {"expected", to_json(expected[x])}}};
      signs[L[x]] = perm->signs[x];
    }
    return Outcome{true, {{"signs", signs}, {"D", to_json(f.D)}, {"u", to_json(f.u)}}};
  });
  const std::string st3_name = std::string("(ST)^3 = ") + f.tau_name(-1) + " S^2";
  rep.run(st3_name, [&] {
    const CycMatrix ST = S * T;
    return matrices_equal(ST * ST * ST, mat_scale(f.tau_minus, S2), "(ST)^3", "tau- S^2");
  });
  rep.run("S^4 = (D u)^2 Id", [&] {
    const CycNum du = f.D * f.u;
    return matrices_equal(S2 * S2, mat_scale(du * du, id), "S^4", "(D u)^2 Id");
  });
  rep.run(std::string("(ST^-1)^3 = ") + f.tau_name(1) + " D u^2 Id", [&] {
    const CycMatrix ST = S * T_inv;
    return matrices_equal(ST * ST * ST, mat_scale(f.tau_plus * f.D * f.u * f.u, id), "(ST^-1)^3", "tau+ D u^2 Id");
  });
}

inline void check_twist_laws(const Frame& f, VerificationReport& rep) {
  const std::size_t n = f.size();
  const RawDatum& raw = f.raw;
  const auto& L = raw.labels;
  const CycMatrix& S = raw.S;
  const std::size_t ub = f.bar.unit_bar;
  const auto& dual = raw.dual();
  std::vector<CycNum> theta_inv;
  for (const auto& t : raw.twists) theta_inv.push_back(inv(t));

  rep.run("theta_unit_bar = 1", [&] {
    return Outcome{raw.twists[ub] == CycNum(1), {{"unit_bar", L[ub]}, {"theta", to_json(raw.twists[ub])}}};
  });
  rep.run("twist_dim", [&] {
    for (std::size_t x = 0; x < n; ++x) {
      const CycNum lhs = raw.twists[dual[x]] * f.dims.dim_R[x];
      const CycNum rhs = raw.twists[x] * f.dims.dim_L[x];
      if (!(lhs == rhs)) return Outcome{false, {{"X", L[x]}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}}};
    }
    return Outcome{};
  });
  rep.run("twist_bar", [&] {
    for (std::size_t x = 0; x < n; ++x) {
      const CycNum lhs = raw.twists[f.bar.bar[x]];
      const CycNum rhs = raw.twists[ub] * raw.twists[x];
      if (!(lhs == rhs)) return Outcome{false, {{"X", L[x]}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}}};
    }
    return Outcome{};
  });
  rep.run("twist_tau+", [&] {
    for (std::size_t y = 0; y < n; ++y) {
      CycNum lhs(0);
      for (std::size_t x = 0; x < n; ++x) lhs += raw.twists[x] * f.dims.dim_L[x] * S(x, y);
      const CycNum rhs = theta_inv[y] * f.dims.dim_R[y] * f.tau_plus;
      if (!(lhs == rhs)) return Outcome{false, {{"Y", L[y]}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}}};
    }
    return Outcome{};
  });
  rep.run("twist_tau-", [&] {
    for (std::size_t y = 0; y < n; ++y) {
      CycNum lhs(0);
      for (std::size_t x = 0; x < n; ++x) lhs += theta_inv[x] * f.dims.dim_R[x] * S(x, y);
      CycNum rhs = raw.twists[y] * f.dims.dim_R[y] * f.tau_minus;
      if (f.super) rhs *= raw.twists[ub];
      if (!(lhs == rhs)) return Outcome{false, {{"Y", L[y]}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}}};
    }
    return Outcome{};
  });
}

inline void check_vafa(const Frame& f, VerificationReport& rep) {
  const std::size_t n = f.size();
  const RawDatum& raw = f.raw;
  const auto& L = raw.labels;

  rep.run("vafa_twists", [&] {
    json orders = json::object();
    for (std::size_t x = 0; x < n; ++x) {
      auto w = is_root_of_unity(raw.twists[x]);
      if (!w) return Outcome{false, {{"label", L[x]}, {"theta", to_json(raw.twists[x])}}};
      orders[L[x]] = w->order;
    }
    return Outcome{true, {{"orders", orders}}};
  });
  rep.run("vafa_xi", [&] {
    // xi^2 = tau+^2 u / D, resp. sxi^2 = stau+^2 u^2 / sdim
    if (f.D.is_zero()) return Outcome{false, {{"reason", "D = 0"}}};
    CycNum xi2 = f.tau_plus * f.tau_plus * f.u / f.D;
    if (f.super) xi2 *= f.u;
    auto w = is_root_of_unity(xi2);
    json wit = {{f.super ? "sxi^2" : "xi^2", to_json(xi2)}};
    if (w) wit["order"] = w->order;
    return Outcome{w.has_value(), wit};
  });
}

/// Runs every identity check on the frame; returns the Verlinde tensor when it could be formed.
inline std::optional<VerlindeResult> check_frame(const Frame& f, VerificationReport& rep, const FrameOptions& opt) {
  const std::size_t n = f.size();
  const RawDatum& raw = f.raw;
  const CycMatrix& S = raw.S;
  const auto& L = raw.labels;
  const std::string D_name = f.super ? "sdim" : "dim";
  const std::size_t ub = f.bar.unit_bar;

  rep.run("S_symmetric", [&] { return matrices_equal(S, transpose(S), "S", "S^t"); });
  rep.run("dims_nonzero", [&] {
    for (std::size_t x = 0; x < n; ++x)
      if (f.dims.dim_R[x].is_zero()) return Outcome{false, {{"label", L[x]}}};
    return Outcome{};
  });
  rep.run("squared_norms_totally_positive",
          [&] { return check_sqnorms_totally_positive(raw, f.dims, opt.precision_bits); });
  rep.run("raw_unitarity", [&] {
    Outcome o = check_raw_unitarity(raw, f.D);
    o.witness["scale"] = to_json(f.D);
    return o;
  });
  rep.run("bar_involution", [&] {
    json bar = json::object();
    for (std::size_t x = 0; x < n; ++x) bar[L[x]] = L[f.bar.bar[x]];
    return Outcome{true, {{"bar", bar}, {"unit_bar", L[ub]}, {"dim_R_unit_bar", to_json(f.u)}}};
  });
  rep.run("gauss_sums", [&] {
    const CycNum prod = f.tau_plus * f.tau_minus;
    json w = {{f.tau_name(1), to_json(f.tau_plus)}, {f.tau_name(-1), to_json(f.tau_minus)}, {D_name, to_json(f.D)}};
    if (!(prod == f.D)) w["product"] = to_json(prod);
    return Outcome{prod == f.D, w};
  });

  check_sl2_relations(f, rep);
  check_twist_laws(f, rep);
  check_vafa(f, rep);

  std::optional<VerlindeResult> verlinde;
  rep.run("verlinde_fusion", [&] {
    verlinde = frame_verlinde(f);
    return Outcome{verlinde->integral, verlinde->summary()};
  });
  if (verlinde && verlinde->integral) {
    rep.run("fusion_axioms", [&] { return check_fusion_axioms(verlinde->tensor); });
    rep.run("balancing", [&] { return check_balancing(raw, verlinde->tensor); });
  } else {
    rep.skip("fusion_axioms", "no integral fusion tensor");
    rep.skip("balancing", "no integral fusion tensor");
  }
  return verlinde;
}

/// Normalized datum (S / c, theta). The normalizer must satisfy c^2 = D u.
inline ModularDatum normalized_datum(const Frame& f, const CycNum& c) {
  ModularDatum d;
  d.labels = f.raw.labels;
  d.unit = f.raw.unit;
  d.S = mat_scale(inv(c), f.raw.S);
  d.T = f.raw.twists;
  return d;
}

struct Normalizer {
  std::optional<CycNum> c;
  json witness = json::object();
};

/// Supplied normalizer if c^2 = D u, else a square root found in the field, else none.
inline Normalizer choose_normalizer(const Frame& f, const std::optional<CycNum>& supplied) {
  Normalizer out;
  const CycNum target = f.D * f.u;
  out.witness["D u"] = to_json(target);
  if (supplied) {
    if (*supplied * *supplied == target) {
      out.c = *supplied;
      out.witness["source"] = "supplied";
      out.witness["c"] = to_json(*supplied);
      return out;
    }
    out.witness["supplied_rejected"] = to_json(*supplied);
  }
  if (auto c = sqrt_in_field(target)) {
    out.c = *c;
    out.witness["source"] = "sqrt_in_field";
    out.witness["c"] = to_json(*c);
    return out;
  }
  out.witness["source"] = "none";
  return out;
}

}  // namespace modkit
