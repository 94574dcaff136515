#pragma once

// Datum and report files.
//
// Datum: {"labels", "unit", "conductor", "S", "T", "kind"} and for raw kinds also "twists",
// "duality", "duality_signs", "J" (label indices) and "normalizer". On raw data "T" is the
// categorical diag(theta^-1) and must agree with "twists"; on normalized data it is theta.
// Report: [{"check", "status", "witness", "micros"}, ...].

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "modkit/datum.hpp"

namespace modkit {

using AnyDatum = std::variant<ModularDatum, RawDatum>;

namespace detail {

inline json index_list(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

inline std::vector<std::size_t> index_list_from(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("\"") + what + "\" must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw ParseError(std::string("\"") + what + "\" entries must be non-negative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

inline unsigned conductor_of(const CycMatrix& S, const std::vector<CycNum>& v) {
  unsigned n = S.conductor();
  for (const auto& x : v) n = nt::lcm(n, x.conductor());
  return n;
}

inline const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("datum is missing \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline json to_json(const ModularDatum& d) {
  return {{"kind", "normalized"},
          {"labels", d.labels},
          {"unit", d.unit},
          {"conductor", detail::conductor_of(d.S, d.T)},
          {"S", to_json(d.S)},
          {"T", to_json(d.T)}};
}

inline json to_json(const RawDatum& r) {
  std::vector<CycNum> T;
  for (const auto& t : r.twists) T.push_back(inv(t));
  json j = {{"kind", r.kind == RawKind::Full ? "raw-full" : "raw-bold"},
            {"labels", r.labels},
            {"unit", r.unit},
            {"conductor", detail::conductor_of(r.S, r.twists)},
            {"S", to_json(r.S)},
            {"T", to_json(T)},
            {"twists", to_json(r.twists)}};
  if (r.duality) j["duality"] = detail::index_list(*r.duality);
  if (!r.duality_signs.empty()) j["duality_signs"] = r.duality_signs;
  if (r.preferred_J) j["J"] = detail::index_list(*r.preferred_J);
  if (r.normalizer) j["normalizer"] = to_json(*r.normalizer);
  return j;
}

inline json to_json(const AnyDatum& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

namespace detail {

inline AnyDatum datum_from_json_unchecked(const json& j) {
  if (!j.is_object()) throw ParseError("datum must be a JSON object");
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "normalized";
  const json& labels = detail::field(j, "labels");
  if (!labels.is_array()) throw ParseError("\"labels\" must be an array of strings");
  std::vector<std::string> names;
  for (const auto& l : labels) {
    if (!l.is_string()) throw ParseError("\"labels\" must be an array of strings");
    names.push_back(l.get<std::string>());
  }
  const json& unit = detail::field(j, "unit");
  if (!unit.is_number_unsigned()) throw ParseError("\"unit\" must be a label index");
  CycMatrix S = matrix_from_json(detail::field(j, "S"));
  if (j.contains("conductor")) {
    const json& c = j.at("conductor");
    if (!c.is_number_unsigned() || c.get<unsigned long>() == 0) throw ParseError("\"conductor\" must be a positive integer");
  }

  auto check = [](auto& datum) {
    try {
      datum.validate();
    } catch (const ShapeMismatch& e) {
      throw ParseError(e.what());
    }
  };

  if (kind == "normalized") {
    ModularDatum d{std::move(names), unit.get<std::size_t>(), std::move(S), cyc_vector_from_json(detail::field(j, "T"))};
    check(d);
    return d;
  }
  if (kind != "raw-full" && kind != "raw-bold") throw ParseError("unknown datum kind \"" + kind + "\"");
  RawDatum r;
  r.kind = kind == "raw-full" ? RawKind::Full : RawKind::Bold;
  r.labels = std::move(names);
  r.unit = unit.get<std::size_t>();
  r.S = std::move(S);
  if (j.contains("twists")) {
    r.twists = cyc_vector_from_json(j.at("twists"));
    if (j.contains("T")) {
      const auto T = cyc_vector_from_json(j.at("T"));
      if (T.size() != r.twists.size()) throw ParseError("\"T\" and \"twists\" differ in length");
      for (std::size_t i = 0; i < T.size(); ++i)
        if (r.twists[i].is_zero() || !(T[i] * r.twists[i] == CycNum(1)))
          throw ParseError("\"T\" must be the inverse of \"twists\" at entry " + std::to_string(i));
    }
  } else {
    for (const auto& t : cyc_vector_from_json(detail::field(j, "T"))) {
      if (t.is_zero()) throw ParseError("\"T\" has a zero entry");
      r.twists.push_back(inv(t));
    }
  }
  if (j.contains("duality")) r.duality = detail::index_list_from(j.at("duality"), "duality");
  if (j.contains("duality_signs")) {
    const json& s = j.at("duality_signs");
    if (!s.is_array()) throw ParseError("\"duality_signs\" must be an array");
    for (const auto& x : s) {
      if (!x.is_number_integer()) throw ParseError("\"duality_signs\" entries must be +1 or -1");
      r.duality_signs.push_back(x.get<int>());
    }
  }
  if (j.contains("J")) r.preferred_J = detail::index_list_from(j.at("J"), "J");
  if (j.contains("normalizer")) r.normalizer = cyc_from_json(j.at("normalizer"));
  check(r);
  return r;
}

}  // namespace detail

inline AnyDatum datum_from_json(const json& j) {
  try {
    return detail::datum_from_json_unchecked(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed datum: ") + e.what());
  }
}

inline json to_json(const VerificationReport& rep) {
  json out = json::array();
  for (const auto& c : rep.checks)
    out.push_back({{"check", c.name}, {"status", to_string(c.status)}, {"witness", c.witness}, {"micros", c.micros}});
  return out;
}

inline VerificationReport report_from_json(const json& j) try {
  if (!j.is_array()) throw ParseError("report must be an array of checks");
  VerificationReport rep;
  for (const auto& c : j) {
    if (!c.is_object() || !c.contains("check") || !c.contains("status") || !c.at("check").is_string())
      throw ParseError("report entries need \"check\" and \"status\"");
    CheckResult r;
    r.name = c.at("check").get<std::string>();
    const std::string s = c.at("status").get<std::string>();
    if (s == "pass") {
      r.status = Status::Pass;
    } else if (s == "fail") {
      r.status = Status::Fail;
    } else if (s == "skipped") {
      r.status = Status::Skipped;
    } else {
      throw ParseError("unknown status \"" + s + "\"");
    }
    r.witness = c.value("witness", json::object());
    if (c.contains("micros")) r.micros = c.at("micros").get<std::int64_t>();
    rep.checks.push_back(std::move(r));
  }
  return rep;
} catch (const json::exception& e) {
  throw ParseError(std::string("malformed report: ") + e.what());
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace modkit
