#pragma once

// The seven checks on a normalized modular datum.

#include "modkit/verlinde.hpp"

namespace modkit {

inline VerificationReport check_axioms(const ModularDatum& d) {
  VerificationReport rep;
  try {
    d.validate();
  } catch (const Error& e) {
    rep.run("datum_shape", [&] { return Outcome{false, {{"error", e.what()}}}; });
    return rep;
  }
  const std::size_t n = d.size();
  const CycMatrix T = CycMatrix::diagonal(d.T);
  const CycMatrix id = CycMatrix::identity(n);

  const Status unit_row = rep.run("S_unit_row_nonzero", [&] {
    for (std::size_t i = 0; i < n; ++i)
      if (d.S(d.unit, i).is_zero()) return Outcome{false, {{"label", d.labels[i]}}};
    return Outcome{};
  });
  rep.run("S_symmetric", [&] { return matrices_equal(d.S, transpose(d.S), "S", "S^t"); });
  rep.run("S_unitary", [&] { return matrices_equal(d.S * conj_transpose(d.S), id, "S S^*", "Id"); });
  const CycMatrix S2 = d.S * d.S;
  rep.run("S^4 = Id", [&] { return matrices_equal(S2 * S2, id, "S^4", "Id"); });
  rep.run("(ST)^3 = lambda Id", [&] {
    const CycMatrix ST = d.S * T;
    const CycMatrix m = ST * ST * ST;
    if (auto lambda = scalar_of(m)) return Outcome{true, {{"lambda", to_json(minimize_conductor(*lambda))}}};
    Outcome o{false, *first_difference(m, mat_scale(m(0, 0), id), "(ST)^3", "lambda Id")};
    o.witness["lambda_candidate"] = to_json(m(0, 0));
    return o;
  });
  rep.run("S^2 T = T S^2", [&] { return matrices_equal(S2 * T, T * S2, "S^2 T", "T S^2"); });
  if (unit_row != Status::Pass) {
    rep.skip("verlinde_integrality", "S has a zero in the unit row");
  } else {
    rep.run("verlinde_integrality", [&] {
      VerlindeResult v = verlinde_fusion(d);
      return Outcome{v.integral, v.summary()};
    });
  }
  return rep;
}

}  // namespace modkit
