#include <gtest/gtest.h>

#include "modkit/modkit.hpp"

using namespace modkit;

namespace {

template <class T>
void expect_datum_round_trip(const T& d) {
  const json j = to_json(d);
  const AnyDatum back = datum_from_json(json::parse(j.dump()));
  ASSERT_TRUE(std::holds_alternative<T>(back));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  const auto& x = std::get<T>(back);
  EXPECT_EQ(x.S, d.S);
  EXPECT_EQ(x.labels, d.labels);
}

json trivial_json() {
  return json::parse(R"({"kind": "normalized", "labels": ["1"], "unit": 0, "conductor": 1,
    "S": {"rows": 1, "cols": 1, "entries": [[{"conductor": 1, "coeffs": ["1"]}]]},
    "T": [{"conductor": 1, "coeffs": ["1"]}]})");
}

}  // namespace

TEST(JsonCyc, RoundTrip) {
  for (const CycNum& x : {CycNum(0), CycNum(Rational(-3, 7)), root_of_unity(5, 2), q16_bracket3(), taft_normalizer(7),
                          root_of_unity(12, 1) + CycNum(Rational(1, 2))}) {
    const json j = to_json(x);
    EXPECT_EQ(cyc_from_json(json::parse(j.dump())), x);
    EXPECT_EQ(to_json(cyc_from_json(j)).dump(), j.dump());
  }
}

TEST(JsonCyc, Format) {
  const json j = to_json(root_of_unity(3, 1));
  EXPECT_EQ(j["conductor"], 3);
  EXPECT_EQ(j["coeffs"], json::array({"0", "1"}));
  EXPECT_EQ(cyc_from_json(json(5)), CycNum(5));
  EXPECT_EQ(cyc_from_json(json("2/4")), CycNum(Rational(1, 2)));
}

TEST(JsonCyc, Malformed) {
  for (const char* bad : {R"({"conductor": 3, "coeffs": ["1"]})", R"({"conductor": 0, "coeffs": []})",
                          R"({"conductor": 3, "coeffs": ["1/0", "1"]})", R"({"conductor": 3, "coeffs": ["x", "1"]})",
                          R"({"coeffs": ["1"]})", R"([1, 2])", R"({"conductor": -3, "coeffs": ["1", "2"]})"})
    EXPECT_THROW(cyc_from_json(json::parse(bad)), ParseError) << bad;
}

TEST(JsonMatrix, RoundTripAndErrors) {
  const auto S = taft_double(3).S;
  EXPECT_EQ(matrix_from_json(json::parse(to_json(S).dump())), S);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"entries": [[1, 2], [3]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"rows": 3, "entries": [[1]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"rows": 1})")), ParseError);
}

TEST(JsonDatum, RoundTrips) {
  expect_datum_round_trip(taft_double(3));
  expect_datum_round_trip(pointed_cyclic(5, 2, 1));
  expect_datum_round_trip(sl2_q16_counterexample().bold);
  auto sl = reduce_slightly_degenerate(taft_double(4));
  expect_datum_round_trip(sl.bold());
  expect_datum_round_trip(*emit_zmodular(sl));
}

TEST(JsonDatum, RawRoundTripVerifiesTheSame) {
  const auto raw = taft_double(3);
  const auto back = std::get<RawDatum>(datum_from_json(to_json(raw)));
  EXPECT_EQ(back.twists, raw.twists);
  EXPECT_EQ(back.preferred_J, raw.preferred_J);
  EXPECT_TRUE(verify(back).passed());
}

TEST(JsonDatum, TrivialNormalized) {
  const auto d = datum_from_json(trivial_json());
  ASSERT_TRUE(std::holds_alternative<ModularDatum>(d));
  EXPECT_TRUE(verify(std::get<ModularDatum>(d)).passed());
}

TEST(JsonDatum, Malformed) {
  auto j = trivial_json();
  j.erase("S");
  EXPECT_THROW(datum_from_json(j), ParseError);

  j = trivial_json();
  j["kind"] = "weird";
  EXPECT_THROW(datum_from_json(j), ParseError);

  j = trivial_json();
  j["labels"] = json::array({"1", "2"});
  EXPECT_THROW(datum_from_json(j), ParseError);

  j = trivial_json();
  j["unit"] = "zero";
  EXPECT_THROW(datum_from_json(j), ParseError);

  j = trivial_json();
  j["T"] = 7;
  EXPECT_THROW(datum_from_json(j), ParseError);

  auto raw = to_json(taft_double(2));
  raw["T"][1] = to_json(CycNum(2));
  EXPECT_THROW(datum_from_json(raw), ParseError);

  raw = to_json(taft_double(2));
  raw["duality"] = json::array({-1, 0});
  EXPECT_THROW(datum_from_json(raw), ParseError);

  EXPECT_THROW(datum_from_json(json::array()), ParseError);
  EXPECT_THROW(datum_from_json(json("text")), ParseError);
}

TEST(JsonReport, RoundTrip) {
  for (const auto& raw : {taft_double(3), sl2_q16_counterexample().bold, pointed_cyclic(9, 3, 0)}) {
    const auto rep = verify(raw).report;
    const json j = to_json(rep);
    const auto back = report_from_json(json::parse(j.dump()));
    EXPECT_EQ(to_json(back).dump(), j.dump());
    EXPECT_EQ(back.passed(), rep.passed());
  }
}

TEST(JsonReport, Malformed) {
  EXPECT_THROW(report_from_json(json::object()), ParseError);
  EXPECT_THROW(report_from_json(json::parse(R"([{"check": "x"}])")), ParseError);
  EXPECT_THROW(report_from_json(json::parse(R"([{"check": "x", "status": "maybe"}])")), ParseError);
  EXPECT_THROW(report_from_json(json::parse(R"([{"check": "x", "status": 3}])")), ParseError);
  EXPECT_THROW(report_from_json(json::parse(R"([{"check": "x", "status": "pass", "micros": "a"}])")), ParseError);
}

TEST(JsonReport, WitnessesCarryValues) {
  const auto rep = verify(sl2_q16_counterexample().bold).report;
  const auto* c = rep.find("(ST)^3 = stau- S^2");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::Fail);
  EXPECT_FALSE(c->witness.empty());
  EXPECT_EQ(to_json(rep)[0]["status"], "pass");
}
