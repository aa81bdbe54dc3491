#pragma once

// Text input for the command-line tool: point lists (CSV, JSON, inline),
// curve specs and abstract k-sequences, plus JSON encoding of exact values.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "convexsplit/curves.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/kseq.hpp"
#include "convexsplit/rational.hpp"

namespace convexsplit::cli {

using Json = nlohmann::ordered_json;

struct PointInput {
  std::size_t dim = 0;
  std::vector<Point> points;
};

/// Integral values that fit a long become JSON numbers, everything else a "p/q" string.
inline Json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

inline Json point_json(const Point& p) {
  Json a = Json::array();
  for (const auto& c : p.coords()) a.push_back(rational_json(c));
  return a;
}

inline Rational rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw ParseError("expected a number or a rational string, got " + v.dump());
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline PointInput finish(std::vector<Point> pts, std::optional<std::size_t> dim) {
  if (pts.empty()) throw ParseError("input contains no points");
  const std::size_t d = dim.value_or(pts.front().dim());
  if (d == 0) throw ParseError("points need at least one coordinate");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].dim() != d) {
      throw ParseError("point " + std::to_string(i) + " has " + std::to_string(pts[i].dim()) +
                       " coordinates, expected " + std::to_string(d));
    }
  }
  return PointInput{d, std::move(pts)};
}

inline Point parse_row(const std::vector<std::string_view>& cells, std::size_t line) {
  std::vector<Rational> c;
  for (auto cell : cells) {
    try {
      c.push_back(parse_rational(cell));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  return Point(std::move(c));
}

} // namespace detail

/// One point per row, comma-separated coordinates; blank lines and lines
/// starting with '#' are skipped, as is a first row made only of names.
inline PointInput parse_points_csv(std::string_view text, std::optional<std::size_t> dim = {}) {
  std::vector<Point> pts;
  std::size_t line_no = 0;
  bool first = true;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto cells = detail::split(line, ',');
    if (first) {
      first = false;
      bool header = true;
      for (auto c : cells) {
        header = header && !c.empty() && std::isalpha(static_cast<unsigned char>(c.front()));
      }
      if (header) continue;
    }
    pts.push_back(detail::parse_row(cells, line_no));
  }
  return detail::finish(std::move(pts), dim);
}

/// Inline form "x1,y1;x2,y2;...".
inline PointInput parse_points_inline(std::string_view text, std::optional<std::size_t> dim = {}) {
  std::vector<Point> pts;
  std::size_t row = 0;
  for (auto item : detail::split(text, ';')) {
    ++row;
    if (item.empty()) continue;
    pts.push_back(detail::parse_row(detail::split(item, ','), row));
  }
  return detail::finish(std::move(pts), dim);
}

/// {"dim": d, "points": [["0", "1/2"], ...]} or a bare array of points.
inline PointInput parse_points_json(const Json& doc, std::optional<std::size_t> dim = {}) {
  const Json* arr = &doc;
  if (doc.is_object()) {
    if (!doc.contains("points")) throw ParseError("JSON input needs a \"points\" array");
    arr = &doc.at("points");
    if (doc.contains("dim")) {
      if (!doc.at("dim").is_number_unsigned()) throw ParseError("\"dim\" must be a positive integer");
      auto d = doc.at("dim").get<std::size_t>();
      if (dim && *dim != d) throw ParseError("--dim disagrees with the input's \"dim\"");
      dim = d;
    }
  }
  if (!arr->is_array()) throw ParseError("\"points\" must be an array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const auto& row = (*arr)[i];
    if (!row.is_array()) throw ParseError("point " + std::to_string(i) + " is not an array");
    std::vector<Rational> c;
    for (const auto& v : row) {
      try {
        c.push_back(rational_from_json(v));
      } catch (const ParseError& e) {
        throw ParseError("point " + std::to_string(i) + ": " + e.what());
      }
    }
    pts.emplace_back(std::move(c));
  }
  return detail::finish(std::move(pts), dim);
}

inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

/// JSON when the text starts with '{' or '[', CSV otherwise.
inline PointInput parse_points(std::string_view text, std::optional<std::size_t> dim = {}) {
  auto t = detail::trim(text);
  if (!t.empty() && (t.front() == '{' || t.front() == '[')) {
    return parse_points_json(parse_json_text(t), dim);
  }
  return parse_points_csv(t, dim);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// {"curve": "quintic"} | {"curve": "moment", "d": 3} |
/// {"curve": "dented_arc", "dents": 5, "depth": "1/100"} |
/// {"curve": "poly", "coeffs": [[...], ...], "lo": ..., "hi": ...}
inline CurveSpec curve_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("curve") || !doc.at("curve").is_string()) {
    throw ParseError("curve spec needs a \"curve\" name");
  }
  CurveParams params;
  auto size_field = [&](const char* key) -> std::optional<std::size_t> {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc.at(key).is_number_unsigned()) {
      throw ParseError(std::string("curve field \"") + key + "\" must be a positive integer");
    }
    return doc.at(key).get<std::size_t>();
  };
  params.d = size_field("d");
  params.dents = size_field("dents");
  if (doc.contains("depth")) params.depth = rational_from_json(doc.at("depth"));
  if (doc.contains("lo")) params.lo = rational_from_json(doc.at("lo"));
  if (doc.contains("hi")) params.hi = rational_from_json(doc.at("hi"));
  if (doc.contains("coeffs")) {
    const auto& cs = doc.at("coeffs");
    if (!cs.is_array()) throw ParseError("\"coeffs\" must be an array of arrays");
    std::vector<Polynomial> coords;
    for (const auto& row : cs) {
      if (!row.is_array()) throw ParseError("\"coeffs\" must be an array of arrays");
      Polynomial p;
      for (const auto& v : row) p.push_back(rational_from_json(v));
      coords.push_back(std::move(p));
    }
    params.coeffs = std::move(coords);
  }
  return builtin(doc.at("curve").get<std::string>(), params);
}

/// {"k": 1, "elements": [ids], "signs": [{"subset": [ids], "sign": 1}, ...]};
/// the table must cover every (k+1)-subset.
inline KSequence ksequence_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("elements") ||
      !doc.contains("signs")) {
    throw ParseError("k-sequence input needs \"k\", \"elements\" and \"signs\"");
  }
  if (!doc.at("k").is_number_unsigned()) throw ParseError("\"k\" must be a positive integer");
  const auto k = doc.at("k").get<std::size_t>();
  auto ids_of = [](const Json& arr, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
    std::vector<ElementId> ids;
    for (const auto& v : arr) {
      if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
      ids.push_back(v.get<ElementId>());
    }
    return ids;
  };
  auto ids = ids_of(doc.at("elements"), "\"elements\"");
  if (!doc.at("signs").is_array()) throw ParseError("\"signs\" must be an array");
  std::vector<std::pair<std::vector<ElementId>, int>> table;
  for (const auto& entry : doc.at("signs")) {
    if (!entry.is_object() || !entry.contains("subset") || !entry.contains("sign") ||
        !entry.at("sign").is_number_integer()) {
      throw ParseError("sign entries look like {\"subset\": [ids], \"sign\": 1 or -1}");
    }
    table.emplace_back(ids_of(entry.at("subset"), "\"subset\""), entry.at("sign").get<int>());
  }
  return from_sign_table(k, std::move(ids), table);
}

inline Json ksequence_json(const KSequence& s) {
  Json elements = Json::array(), signs = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) elements.push_back(s.ids()[i]);
  convexsplit::detail::for_each_combination(s.size(), s.k() + 1, [&](std::span<const std::size_t> c) {
    Json subset = Json::array();
    for (auto i : c) subset.push_back(s.ids()[i]);
    signs.push_back(Json{{"subset", subset}, {"sign", s.sign(c)}});
    return true;
  });
  return Json{{"k", s.k()}, {"elements", elements}, {"signs", signs}};
}

} // namespace convexsplit::cli
