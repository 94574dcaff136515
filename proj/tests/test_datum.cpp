#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "modkit/modkit.hpp"
#include "oracle.hpp"

using namespace modkit;

namespace {

CycNum z(unsigned n, long k = 1) { return root_of_unity(n, k); }

RawDatum trivial_raw() {
  RawDatum r;
  r.labels = {"1"};
  r.S = CycMatrix::identity(1);
  r.twists = {CycNum(1)};
  r.duality = std::vector<std::size_t>{0};
  return r;
}

ModularDatum trivial_datum() { return {{"1"}, 0, CycMatrix::identity(1), {CycNum(1)}}; }

std::size_t idx(const RawDatum& r, const std::string& label) {
  auto it = std::find(r.labels.begin(), r.labels.end(), label);
  if (it == r.labels.end()) throw std::out_of_range(label);
  return static_cast<std::size_t>(it - r.labels.begin());
}

Status status_of(const VerificationReport& rep, const std::string& name) {
  const auto* c = rep.find(name);
  if (!c) throw std::out_of_range("no check " + name);
  return c->status;
}

// Verlinde sum in floating point, straight from the definition.
double numeric_verlinde(const ModularDatum& d, std::size_t i, std::size_t j, std::size_t k) {
  oracle::cd s = 0;
  for (std::size_t l = 0; l < d.size(); ++l)
    s += oracle::eval(d.S(i, l)) * oracle::eval(d.S(j, l)) * std::conj(oracle::eval(d.S(k, l))) /
         oracle::eval(d.S(d.unit, l));
  EXPECT_NEAR(s.imag(), 0.0, 1e-9);
  return s.real();
}

}  // namespace

// ---------------------------------------------------------------------------
// verlinde_fusion and check_axioms

TEST(Verlinde, TrivialDatum) {
  auto v = verlinde_fusion(trivial_datum());
  ASSERT_TRUE(v.integral);
  EXPECT_EQ(v.tensor.at(0, 0, 0), 1);
  EXPECT_EQ(v.classification(), "N-modular");
}

TEST(Verlinde, PointedThreeGroupLaw) {
  auto r = verify(pointed_cyclic(3, 1, 1));
  ASSERT_TRUE(r.normalized);
  auto v = verlinde_fusion(*r.normalized);
  ASSERT_TRUE(v.integral);
  EXPECT_EQ(v.tensor.at(1, 1, 2), 1);
  EXPECT_EQ(v.tensor.at(1, 1, 0), 0);
  EXPECT_EQ(v.tensor.at(1, 1, 1), 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        EXPECT_NEAR(numeric_verlinde(*r.normalized, i, j, k), static_cast<double>(v.tensor.at(i, j, k)), 1e-9);
}

TEST(Verlinde, TaftThreeSignedConstants) {
  auto sl = reduce_slightly_degenerate(taft_double(3));
  auto d = emit_zmodular(sl, taft_normalizer(3));
  ASSERT_TRUE(d);
  auto v = verlinde_fusion(*d);
  ASSERT_TRUE(v.integral);
  const auto& L = d->labels;
  const auto a = static_cast<std::size_t>(std::find(L.begin(), L.end(), "(2,0)") - L.begin());
  const auto b = static_cast<std::size_t>(std::find(L.begin(), L.end(), "(1,1)") - L.begin());
  for (std::size_t k = 0; k < L.size(); ++k) EXPECT_EQ(v.tensor.at(a, a, k), k == b ? 1 : 0) << L[k];
  // the oracle: taft_fusion gives M_{2,0} (x) M_{2,0} = M_{1,1}
  const auto prod = taft_fusion(3, {2, 0}, {2, 0});
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod.begin()->first, (TaftLabel{1, 1}));
}

TEST(CheckAxioms, TrivialPasses) {
  auto rep = check_axioms(trivial_datum());
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.find("(ST)^3 = lambda Id")->witness["lambda"], to_json(CycNum(1)));
  EXPECT_EQ(rep.find("verlinde_integrality")->witness["class"], "N-modular");
}

TEST(CheckAxioms, EveryCheckOnce) {
  const std::vector<std::string> names = {"S_unit_row_nonzero", "S_symmetric", "S_unitary", "S^4 = Id",
                                          "(ST)^3 = lambda Id", "S^2 T = T S^2", "verlinde_integrality"};
  for (const auto& d : {trivial_datum(), *verify(pointed_cyclic(5, 2, 1)).normalized}) {
    auto rep = check_axioms(d);
    ASSERT_EQ(rep.checks.size(), names.size());
    for (std::size_t i = 0; i < names.size(); ++i) EXPECT_EQ(rep.checks[i].name, names[i]);
  }
}

TEST(CheckAxioms, TaftThreeIsZModular) {
  auto d = emit_zmodular(reduce_slightly_degenerate(taft_double(3)));
  ASSERT_TRUE(d);
  auto rep = check_axioms(*d);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.find("verlinde_integrality")->witness["class"], "Z-modular");
}

TEST(CheckAxioms, CounterexampleNaiveNormalizationFails) {
  auto bold = sl2_q16_counterexample().bold;
  const CycNum b = q16_bracket3();
  const auto c = sqrt_in_field(CycNum(1) + b * b);
  ASSERT_TRUE(c);
  ModularDatum d{bold.labels, 0, mat_scale(inv(*c), bold.S), bold.twists};
  auto rep = check_axioms(d);
  EXPECT_EQ(status_of(rep, "S_unitary"), Status::Pass);
  EXPECT_EQ(status_of(rep, "(ST)^3 = lambda Id"), Status::Fail);
  EXPECT_TRUE(rep.find("(ST)^3 = lambda Id")->witness.contains("row"));
}

TEST(CheckAxioms, ShapeErrorIsReported) {
  ModularDatum d{{"a", "b"}, 0, CycMatrix::identity(1), {CycNum(1)}};
  auto rep = check_axioms(d);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.checks[0].name, "datum_shape");
}

TEST(CheckAxioms, ZeroInUnitRowSkipsVerlinde) {
  ModularDatum d{{"a", "b"}, 0, CycMatrix::from_rows({{CycNum(0), CycNum(1)}, {CycNum(1), CycNum(0)}}),
                 {CycNum(1), CycNum(1)}};
  auto rep = check_axioms(d);
  EXPECT_EQ(status_of(rep, "S_unit_row_nonzero"), Status::Fail);
  EXPECT_EQ(status_of(rep, "verlinde_integrality"), Status::Skipped);
}

// ---------------------------------------------------------------------------
// dims, unitarity, bar, center, Gauss sums

TEST(Dims, PointedThree) {
  auto d = dims_of(pointed_cyclic(3, 1, 1));
  EXPECT_EQ(d.dim_R[1], z(3));
  EXPECT_EQ(d.dim_L[1], z(3, -1));
  EXPECT_EQ(d.global_dim, CycNum(3));
}

TEST(Dims, TaftThree) {
  auto raw = taft_double(3);
  EXPECT_EQ(raw.dim_R(idx(raw, "(2,1)")), CycNum(-1));
  auto sl = reduce_slightly_degenerate(raw);
  EXPECT_EQ(sl.sdim(), CycNum(3));
  const CycNum zz = z(3);
  EXPECT_EQ(sl.sdim(), -zz * CycNum(9) / ((CycNum(1) - zz) * (CycNum(1) - zz)));
}

TEST(Dims, SdimClosedForm) {
  for (int d = 2; d <= 8; ++d) {
    const CycNum zz = z(static_cast<unsigned>(d));
    auto sl = reduce_slightly_degenerate(taft_double(d));
    EXPECT_EQ(sl.sdim(), -zz * CycNum(d * d) / ((CycNum(1) - zz) * (CycNum(1) - zz))) << d;
    EXPECT_EQ(sl.dim_R_unit_bar(), -zz) << d;
  }
}

TEST(Dims, MissingDuality) {
  auto raw = pointed_cyclic(3, 1, 0);
  raw.duality.reset();
  EXPECT_THROW(dims_of(raw), MissingDuality);
  auto r = verify(raw);
  EXPECT_EQ(status_of(r.report, "duality"), Status::Fail);
}

TEST(Unitarity, Examples) {
  auto sl = reduce_slightly_degenerate(taft_double(3));
  EXPECT_TRUE(check_raw_unitarity(sl.bold(), CycNum(3)).ok);
  EXPECT_TRUE(check_raw_unitarity(pointed_cyclic(5, 1, 0), CycNum(5)).ok);
  RawDatum id = trivial_raw();
  id.labels = {"a", "b"};
  id.S = CycMatrix::identity(2);
  auto o = check_raw_unitarity(id, CycNum(2));
  EXPECT_FALSE(o.ok);
  EXPECT_EQ(o.witness["row"], 0);
  EXPECT_EQ(o.witness["col"], 0);
}

TEST(Bar, TaftThreeUnitBar) {
  auto sl = reduce_slightly_degenerate(taft_double(3));
  EXPECT_EQ(sl.bold().labels[sl.unit_bar()], "(2,0)");
}

TEST(Bar, PointedUnitBar) {
  for (long k0 : {0L, 1L, 2L}) {
    auto raw = pointed_cyclic(3, 1, k0);
    auto b = bar_involution(raw);
    EXPECT_EQ(b.unit_bar, static_cast<std::size_t>(nt::mod(-k0, 3)));
  }
}

TEST(Bar, SphericalBarIsDuality) {
  for (long n : {3L, 5L, 7L}) {
    auto raw = pointed_cyclic(n, 1, 0);
    EXPECT_EQ(bar_involution(raw).bar, *raw.duality);
  }
}

TEST(Bar, CollisionIsDegeneracy) {
  auto raw = pointed_cyclic(9, 3, 0);
  EXPECT_THROW(bar_involution(raw), DegeneracyError);
}

TEST(Center, Examples) {
  EXPECT_EQ(detect_symmetric_center(pointed_cyclic(5, 1, 0)), (std::vector<std::size_t>{0}));
  auto t = taft_double(3);
  EXPECT_EQ(detect_symmetric_center(t), (std::vector<std::size_t>{idx(t, "(1,0)"), idx(t, "(2,1)")}));
  EXPECT_EQ(detect_symmetric_center(pointed_cyclic(9, 3, 0)), (std::vector<std::size_t>{0, 3, 6}));
}

TEST(GaussSums, PointedThree) {
  auto raw = pointed_cyclic(3, 1, 1);
  auto [plus, minus] = gauss_sums(raw, dims_of(raw));
  EXPECT_EQ(plus, CycNum(2) + z(3, 2));
  EXPECT_EQ(minus, CycNum(2) + z(3));
  EXPECT_EQ(plus * minus, CycNum(3));
  // oracle: the sums evaluated in floating point
  oracle::cd p = 0;
  for (int k = 0; k < 3; ++k) p += oracle::zeta(3, k * k + k);
  EXPECT_TRUE(oracle::close(oracle::eval(plus), p));
}

TEST(GaussSums, TrivialAndTaft) {
  auto t = trivial_raw();
  auto [p, m] = gauss_sums(t, dims_of(t));
  EXPECT_EQ(p, CycNum(1));
  EXPECT_EQ(m, CycNum(1));
  auto sl = reduce_slightly_degenerate(taft_double(3));
  EXPECT_EQ(sl.frame.tau_plus * sl.frame.tau_minus, CycNum(3));
}

TEST(Balancing, Pointed) {
  auto raw = pointed_cyclic(3, 1, 1);
  auto r = verify(raw);
  ASSERT_TRUE(r.verlinde);
  EXPECT_TRUE(check_balancing(raw, r.verlinde->tensor).ok);
  // at (d1, d1): theta_1^2 S_11 = dim(d2) theta_2
  const CycNum lhs = raw.twists[1] * raw.twists[1] * raw.S(1, 1);
  EXPECT_EQ(lhs, raw.dim_R(2) * raw.twists[2]);
}

TEST(Balancing, TaftBoldWithFusionOracle) {
  for (int d = 3; d <= 5; ++d) {
    auto sl = reduce_slightly_degenerate(taft_double(d));
    auto q = quotient_constants(taft_fusion_tensor(d), taft_epsilon_map(d), sl.J, -1);
    EXPECT_TRUE(check_balancing(sl.bold(), q).ok) << d;
  }
}

TEST(Balancing, DetectsWrongTensor) {
  auto raw = pointed_cyclic(3, 1, 1);
  auto t = verify(raw).verlinde->tensor;
  std::swap(t.at(1, 1, 2), t.at(1, 1, 0));
  EXPECT_FALSE(check_balancing(raw, t).ok);
}

// ---------------------------------------------------------------------------
// SL2 relations, twist laws, Vafa

TEST(Sl2, PointedFive) {
  for (long a : {1L, 2L})
    for (long k0 : {0L, 1L, 3L}) {
      auto r = verify(pointed_cyclic(5, a, k0));
      EXPECT_TRUE(r.passed()) << a << " " << k0;
      const auto* e = r.report.find("S^2 = D u E");
      ASSERT_TRUE(e);
      EXPECT_EQ(e->status, Status::Pass);
      for (const auto& [label, sign] : e->witness["signs"].items()) EXPECT_EQ(sign, 1);
    }
}

TEST(Sl2, TaftBold) {
  for (int d = 2; d <= 5; ++d) {
    auto r = verify(taft_double(d));
    for (const char* name : {"(ST)^3 = stau- S^2", "S^4 = (D u)^2 Id", "(ST^-1)^3 = stau+ D u^2 Id", "S^2 = D u E"})
      EXPECT_EQ(status_of(r.report, name), Status::Pass) << d << " " << name;
    auto perm = is_signed_permutation(r.sldeg->E);
    ASSERT_TRUE(perm);
    EXPECT_EQ(perm->perm, r.sldeg->bar());
  }
}

TEST(Sl2, CounterexampleFails) {
  auto r = verify(sl2_q16_counterexample().bold);
  EXPECT_EQ(status_of(r.report, "(ST)^3 = stau- S^2"), Status::Fail);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.z_modular);
}

TEST(TwistLaws, TaftThree) {
  auto raw = taft_double(3);
  EXPECT_EQ(raw.twists[idx(raw, "(2,0)")], CycNum(1));
  auto r = verify(raw);
  for (const char* name : {"theta_unit_bar = 1", "twist_dim", "twist_bar", "twist_tau+", "twist_tau-"})
    EXPECT_EQ(status_of(r.report, name), Status::Pass) << name;
}

TEST(TwistLaws, PointedTwistDim) {
  auto raw = pointed_cyclic(3, 1, 1);
  // X = d1, X* = d2
  EXPECT_EQ(raw.twists[2] * raw.dim_R(1), raw.twists[1] * raw.dim_R(2));
  EXPECT_EQ(raw.twists[raw.unit], CycNum(1));
  EXPECT_EQ(status_of(verify(raw).report, "twist_dim"), Status::Pass);
}

TEST(TwistLaws, WrongTwistIsCaught) {
  auto raw = pointed_cyclic(5, 1, 1);
  raw.twists[2] = z(5, 3) * raw.twists[2];
  auto r = verify(raw);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(status_of(r.report, "twist_dim"), Status::Fail);
}

TEST(Vafa, TaftTwistsAreRoots) {
  auto r = verify(taft_double(3));
  EXPECT_EQ(status_of(r.report, "vafa_twists"), Status::Pass);
  EXPECT_EQ(status_of(r.report, "vafa_xi"), Status::Pass);
}

TEST(Vafa, SyntheticTwistTwo) {
  auto raw = pointed_cyclic(5, 1, 0);
  raw.twists[1] = CycNum(2);
  auto r = verify(raw);
  const auto* c = r.report.find("vafa_twists");
  ASSERT_TRUE(c);
  EXPECT_EQ(c->status, Status::Fail);
  EXPECT_EQ(c->witness["label"], "d1");
}

// ---------------------------------------------------------------------------
// slightly degenerate reduction

TEST(Reduce, TaftThree) {
  auto sl = reduce_slightly_degenerate(taft_double(3));
  std::vector<std::string> J;
  for (auto x : sl.J) J.push_back(sl.parent.labels[x]);
  EXPECT_EQ(J, (std::vector<std::string>{"(1,0)", "(1,1)", "(2,0)"}));
  EXPECT_EQ(sl.parent.labels[sl.epsilon], "(2,1)");
  EXPECT_EQ(sl.bold().labels[sl.unit_bar()], "(2,0)");
}

TEST(Reduce, TaftFour) {
  const int d = 4;
  auto sl = reduce_slightly_degenerate(taft_double(d));
  EXPECT_EQ(sl.J.size(), 6u);
  EXPECT_EQ(sl.parent.labels[sl.epsilon], "(3,1)");
  for (std::size_t x = 0; x < sl.parent.size(); ++x) {
    const TaftLabel t = taft_label(d, x);
    EXPECT_EQ(sl.eps_map[x], taft_index(d, {d - t.l, (t.l + t.p) % d}));
  }
}

TEST(Reduce, RejectsOtherShapes) {
  EXPECT_THROW(reduce_slightly_degenerate(pointed_cyclic(5, 1, 0)), HypothesisError);
  EXPECT_THROW(reduce_slightly_degenerate(sl2_q16_counterexample().full), HypothesisError);
  EXPECT_THROW(reduce_slightly_degenerate(pointed_cyclic(9, 3, 0)), HypothesisError);
  auto r = verify(sl2_q16_counterexample().full);
  EXPECT_EQ(r.classification, "unsupported");
}

TEST(Reduce, RejectsBadJ) {
  auto raw = taft_double(3);
  EXPECT_THROW(reduce_slightly_degenerate(raw, std::vector<std::size_t>{1, 2, 3}), HypothesisError);
  EXPECT_THROW(reduce_slightly_degenerate(raw, std::vector<std::size_t>{0, 1}), HypothesisError);
}

TEST(Reduce, RowsPairUpAndRankHalves) {
  for (int d = 3; d <= 6; ++d) {
    auto raw = taft_double(d);
    auto sl = reduce_slightly_degenerate(raw);
    for (std::size_t x = 0; x < raw.size(); ++x)
      for (std::size_t y = 0; y < raw.size(); ++y) ASSERT_EQ(raw.S(sl.eps_map[x], y), -raw.S(x, y));
    EXPECT_EQ(2 * rank(raw.S), raw.size()) << d;
  }
}

TEST(Quotient, TaftThreeExample) {
  auto sl = reduce_slightly_degenerate(taft_double(3));
  auto q = quotient_constants(taft_fusion_tensor(3), taft_epsilon_map(3), sl.J, -1);
  // J = (1,0), (1,1), (2,0)
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(q.at(2, 2, c), c == 1 ? 1 : 0);
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(q.at(q.unit, b, c), b == c ? 1 : 0);
}

TEST(Quotient, AbsoluteValues) {
  for (int d = 3; d <= 5; ++d) {
    auto full = taft_fusion_tensor(d);
    auto eps = taft_epsilon_map(d);
    auto sl = reduce_slightly_degenerate(taft_double(d));
    auto minus = quotient_constants(full, eps, sl.J, -1);
    auto plus = quotient_constants(full, eps, sl.J, 1);
    for (auto x : sl.J)
      for (auto y : sl.J)
        for (auto w : sl.J) ASSERT_EQ(full.at(x, y, w) * full.at(x, y, eps[w]), 0);
    for (std::size_t i = 0; i < minus.constants.size(); ++i)
      ASSERT_EQ(std::abs(minus.constants[i]), plus.constants[i]);
  }
}

TEST(Quotient, NeedsUnit) {
  auto full = taft_fusion_tensor(3);
  EXPECT_THROW(quotient_constants(full, taft_epsilon_map(3), {1, 2, 3}, -1), HypothesisError);
}

TEST(SignedVerlinde, MatchesQuotient) {
  for (int d = 2; d <= 5; ++d) {
    auto sl = reduce_slightly_degenerate(taft_double(d));
    auto v = signed_verlinde(sl);
    ASSERT_TRUE(v.integral);
    auto q = quotient_constants(taft_fusion_tensor(d), taft_epsilon_map(d), sl.J, -1);
    EXPECT_EQ(v.tensor.constants, q.constants) << d;
    const std::size_t m = sl.J.size();
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) EXPECT_EQ(v.tensor.at(sl.bold().unit, b, c), b == c ? 1 : 0);
  }
}

TEST(SignedVerlinde, TaftFiveHasNegatives) {
  auto v = signed_verlinde(reduce_slightly_degenerate(taft_double(5)));
  EXPECT_TRUE(v.integral);
  EXPECT_FALSE(v.nonnegative);
  EXPECT_TRUE(v.witness.contains("first_negative"));
  EXPECT_EQ(v.classification(), "Z-modular");
}

TEST(EmitZModular, TaftClosedForm) {
  for (int d = 2; d <= 5; ++d) {
    auto sl = reduce_slightly_degenerate(taft_double(d));
    const CycNum c = taft_normalizer(d);
    EXPECT_EQ(c * c, sl.sdim() * sl.dim_R_unit_bar());
    auto out = emit_zmodular(sl, c);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->S, taft_normalized_S(d)) << d;
  }
}

TEST(EmitZModular, TrivialIdentity) {
  auto f = make_frame(trivial_raw(), false);
  auto d = normalized_datum(f, CycNum(1));
  EXPECT_EQ(d.S, CycMatrix::identity(1));
  EXPECT_TRUE(check_axioms(d).passed());
}

TEST(EmitZModular, TaftFourAxioms) {
  auto d = emit_zmodular(reduce_slightly_degenerate(taft_double(4)));
  ASSERT_TRUE(d);
  auto rep = check_axioms(*d);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.find("verlinde_integrality")->witness["class"], "Z-modular");
}

TEST(EmitZModular, WrongNormalizerFallsBack) {
  auto sl = reduce_slightly_degenerate(taft_double(3));
  auto d = emit_zmodular(sl, CycNum(7));
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_axioms(*d).passed());
}

// ---------------------------------------------------------------------------
// properties

TEST(Properties, PointedFamily) {
  for (long n : {3L, 5L, 7L, 9L, 11L})
    for (long a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      for (long k0 : {0L, 1L, 2L}) {
        auto r = verify(pointed_cyclic(n, a, k0));
        ASSERT_TRUE(r.passed()) << n << " " << a << " " << k0;
        EXPECT_EQ(r.classification, "N-modular");
        const auto& t = r.verlinde->tensor;
        for (long k = 0; k < n; ++k)
          for (long l = 0; l < n; ++l)
            for (long m = 0; m < n; ++m)
              ASSERT_EQ(t.at(k, l, m), nt::mod(k + l, n) == m ? 1 : 0);
        EXPECT_EQ(r.frame->bar.unit_bar, static_cast<std::size_t>(nt::mod(-k0, n)));
      }
    }
}

TEST(Properties, TaftStructure) {
  for (int d = 2; d <= 6; ++d) {
    auto raw = taft_double(d);
    EXPECT_EQ(raw.S, transpose(raw.S));
    auto r = verify(raw);
    ASSERT_TRUE(r.passed()) << d;
    EXPECT_TRUE(r.z_modular);
    const auto& f = *r.frame;
    EXPECT_EQ(f.raw.twists[f.bar.unit_bar], CycNum(1));
    EXPECT_EQ(f.tau_plus * f.tau_minus, f.D);
    EXPECT_TRUE(check_fusion_axioms(r.verlinde->tensor).ok);
    EXPECT_TRUE(check_axioms(*r.normalized).passed());
  }
}

TEST(Properties, RandomJGivesSameOutcomes) {
  std::mt19937 rng(7);
  for (int d = 3; d <= 5; ++d) {
    auto raw = taft_double(d);
    auto base = verify(raw);
    auto eps = taft_epsilon_map(d);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<std::size_t> J;
      for (std::size_t x = 0; x < raw.size(); ++x) {
        const std::size_t y = eps[x];
        if (x == raw.unit || y == raw.unit) {
          if (x == raw.unit) J.push_back(x);
        } else if (x < y) {
          J.push_back(rng() % 2 ? x : y);
        }
      }
      VerifyOptions opt;
      opt.J_override = J;
      auto other = verify(raw, opt);
      ASSERT_EQ(other.report.checks.size(), base.report.checks.size());
      for (std::size_t i = 0; i < base.report.checks.size(); ++i) {
        EXPECT_EQ(other.report.checks[i].name, base.report.checks[i].name);
        EXPECT_EQ(other.report.checks[i].status, base.report.checks[i].status) << base.report.checks[i].name;
      }
      EXPECT_EQ(other.frame->D, base.frame->D);
      EXPECT_EQ(other.frame->tau_plus, base.frame->tau_plus);
      EXPECT_EQ(other.frame->tau_minus, base.frame->tau_minus);
    }
  }
}

TEST(Report, RunCatchesErrors) {
  VerificationReport rep;
  rep.run("boom", []() -> Outcome { throw DivisionByZero(); });
  rep.skip("later", "because");
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.checks[0].status, Status::Fail);
  EXPECT_TRUE(rep.checks[0].witness.contains("error"));
  EXPECT_EQ(rep.checks[1].status, Status::Skipped);
}

TEST(FrameChecks, SeparateEntryPoints) {
  const auto bold = make_frame(sl2_q16_counterexample().bold, true);
  VerificationReport sl2;
  check_sl2_relations(bold, sl2);
  EXPECT_EQ(sl2.checks.size(), 4u);
  EXPECT_EQ(status_of(sl2, "(ST)^3 = stau- S^2"), Status::Fail);

  const auto pointed = make_frame(pointed_cyclic(7, 3, 1), false);
  VerificationReport laws, vafa;
  check_twist_laws(pointed, laws);
  check_vafa(pointed, vafa);
  EXPECT_TRUE(laws.passed());
  EXPECT_EQ(laws.checks.size(), 5u);
  EXPECT_TRUE(vafa.passed());
  EXPECT_EQ(vafa.checks.size(), 2u);
}
