#pragma once

// JSON forms of scalars and matrices:
//   CycNum    {"conductor": N, "coeffs": ["p/q", ...]}   (power basis, length phi(N))
//   CycMatrix {"rows": r, "cols": c, "entries": [[CycNum, ...], ...]}

#include <json.hpp>

#include <string>
#include <vector>

#include "modkit/cyclinalg.hpp"

namespace modkit {

using json = nlohmann::json;

inline json to_json(const CycNum& a) {
  json coeffs = json::array();
  for (const auto& q : a.coeffs()) coeffs.push_back(q.get_str());
  return {{"conductor", a.conductor()}, {"coeffs", std::move(coeffs)}};
}

inline Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError("rational must be a string \"p/q\" or an integer, got " + j.dump());
  const auto s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos)
    throw ParseError("malformed rational \"" + s + "\"");
  try {
    Rational q(s);
    if (q.get_den() == 0) throw ParseError("zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational \"" + s + "\"");
  }
}

inline CycNum cyc_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return CycNum(parse_rational(j));
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
    throw ParseError("cyclotomic number must be an object with \"conductor\" and \"coeffs\"");
  const auto& n = j.at("conductor");
  if (!n.is_number_unsigned() || n.get<unsigned long>() == 0 || n.get<unsigned long>() > 100000)
    throw ParseError("conductor must be a positive integer, got " + n.dump());
  const auto& c = j.at("coeffs");
  if (!c.is_array()) throw ParseError("\"coeffs\" must be an array");
  std::vector<Rational> coeffs;
  for (const auto& x : c) coeffs.push_back(parse_rational(x));
  const auto conductor = static_cast<unsigned>(n.get<unsigned long>());
  if (coeffs.size() != nt::euler_phi(conductor))
    throw ParseError("expected " + std::to_string(nt::euler_phi(conductor)) + " coefficients for conductor " +
                     std::to_string(conductor) + ", got " + std::to_string(coeffs.size()));
  return CycNum::from_coeffs(conductor, std::move(coeffs));
}

inline json to_json(const CycMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline CycMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("matrix must be an object with \"entries\"");
  const auto& e = j.at("entries");
  if (!e.is_array()) throw ParseError("\"entries\" must be an array of rows");
  std::vector<std::vector<CycNum>> rows;
  for (const auto& r : e) {
    if (!r.is_array()) throw ParseError("matrix row must be an array");
    std::vector<CycNum> row;
    for (const auto& x : r) row.push_back(cyc_from_json(x));
    rows.push_back(std::move(row));
  }
  CycMatrix m;
  try {
    m = CycMatrix::from_rows(rows);
  } catch (const ShapeMismatch& ex) {
    throw ParseError(ex.what());
  }
  if (j.contains("rows") && j.at("rows") != m.rows()) throw ParseError("\"rows\" does not match entries");
  if (j.contains("cols") && j.at("cols") != m.cols()) throw ParseError("\"cols\" does not match entries");
  return m;
}

inline json to_json(const std::vector<CycNum>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline std::vector<CycNum> cyc_vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of cyclotomic numbers");
  std::vector<CycNum> out;
  for (const auto& x : j) out.push_back(cyc_from_json(x));
  return out;
}

}  // namespace modkit
