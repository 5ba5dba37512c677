#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewbraid/error.hpp"
#include "skewbraid/perm.hpp"
#include "skewbraid/skewparam.hpp"

namespace skewbraid {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "skewbraid/1";

/// Doubles go through 12 significant digits so reports are byte-stable
/// across platforms; -0 prints as 0 and non-finite values as null.
inline json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double r = std::strtod(buf, nullptr);
  if (r == 0.0) r = 0.0;
  return r;
}

inline json complex_json(cd v) { return json::array({num(v.real()), num(v.imag())}); }

inline json complex_list(const std::vector<cd>& vs) {
  json a = json::array();
  for (cd v : vs) a.push_back(complex_json(v));
  return a;
}

inline cd complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::ParseError, "complex entry must be [re, im], got " + j.dump());
}

/// {"d": d, "a": [[[re, im], ...], ...]}, row j holding d-j+1 pairs.
inline json to_json(const SkewParam& lambda) {
  json rows = json::array();
  for (const auto& row : lambda.rows()) rows.push_back(complex_list(row));
  return json{{"d", lambda.degree()}, {"a", rows}};
}

inline SkewParam param_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("a"))
    throw Error(ErrorKind::ParseError, "parameter object needs fields \"d\" and \"a\"");
  if (!j["d"].is_number_integer()) throw Error(ErrorKind::ParseError, "\"d\" must be an integer");
  const int d = j["d"].get<int>();
  dimension(d);
  const json& a = j["a"];
  if (!a.is_array()) throw Error(ErrorKind::ParseError, "\"a\" must be an array of rows");
  if (static_cast<int>(a.size()) != d - 1)
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(d - 1) + " rows, found " +
                                               std::to_string(a.size()));
  std::vector<std::vector<cd>> rows;
  for (std::size_t jj = 0; jj < a.size(); ++jj) {
    if (!a[jj].is_array()) throw Error(ErrorKind::ParseError, "row " + std::to_string(jj) + " must be an array");
    std::vector<cd> row;
    for (const json& v : a[jj]) row.push_back(complex_from_json(v));
    rows.push_back(std::move(row));
  }
  return SkewParam(d, std::move(rows));
}

inline SkewParam load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open parameter file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "': " + e.what());
  }
  return param_from_json(j);
}

inline json perm_json(const Perm& p) {
  json images = json::array();
  for (int v : p.images()) images.push_back(v + 1);
  return json{{"cycles", format_cycles(p)}, {"images", images}, {"cycle_type", p.cycle_type()}};
}

inline json error_json(const Error& e) {
  return json{{"schema", kSchema},
              {"error", {{"kind", to_string(e.kind())}, {"numerical", e.is_numerical()}, {"message", e.what()}}}};
}

}  // namespace skewbraid
