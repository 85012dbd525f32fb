#pragma once

// JSON reports. Exact values are written as their text serialization under
// `key`, with a float under `key_approx` for plotting. Key order is fixed so
// identical inputs give byte-identical output.

#include "json.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include "billiard/arrangement.hpp"
#include "billiard/census.hpp"
#include "billiard/gaps.hpp"
#include "billiard/orbit.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

using Json = nlohmann::ordered_json;

inline void put(Json& j, const std::string& key, const Scalar& v) {
  j[key] = v.to_string();
  j[key + "_approx"] = v.to_double();
}

inline Json scalar_list(const std::vector<Scalar>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

inline Json approx_list(const std::vector<Scalar>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_double());
  return out;
}

inline Json point_json(const Point& p) { return Json::array({p.x.to_string(), p.y.to_string()}); }

inline Json gap_set_json(const GapSet& g) {
  Json j;
  j["lengths"] = scalar_list(g.lengths);
  j["lengths_approx"] = approx_list(g.lengths);
  j["multiplicities"] = g.multiplicities;
  return j;
}

/// {alpha, n, lengths, multiplicities, theorem_ok}
inline Json gaps_json(const Scalar& alpha, long n, const GapSet& g, bool theorem_ok) {
  Json j;
  put(j, "alpha", alpha);
  j["n"] = n;
  j["lengths"] = scalar_list(g.lengths);
  j["lengths_approx"] = approx_list(g.lengths);
  j["multiplicities"] = g.multiplicities;
  j["theorem_ok"] = theorem_ok;
  return j;
}

/// Census report of one truncation. `report` is absent when the bounds were
/// violated; theorem_ok then reads false.
inline Json census_json(const Analysis& a, const Theorem13Report* report) {
  const Census& c = a.census;
  Json j;
  put(j, "alpha", a.alpha);
  Json trunc;
  trunc["squares"] = a.squares;
  put(trunc, "M", a.swapped ? a.M / a.alpha : a.M);
  j["N_or_M"] = trunc;
  j["boundary_side"] = to_string(a.side);
  j["gap_set"] = gap_set_json(c.gap_set);
  j["n_faces"] = c.faces.size();
  j["distinct_areas"] = c.distinct_areas;
  j["distinct_shapes"] = c.distinct_shapes;
  Json classes = Json::array();
  for (const auto& cls : c.area_table) {
    Json e;
    e["formula_slot"] = cls.slots;
    put(e, "area", cls.area);
    e["count"] = cls.count;
    classes.push_back(e);
  }
  j["per_class"] = classes;
  bool ok = report != nullptr && report->formulas.violations.empty();
  j["theorem_ok"] = ok;
  if (report && !report->formulas.violations.empty()) j["violations"] = report->formulas.violations;
  return j;
}

inline Json orbit_json(const BilliardOrbit& o) {
  Json j;
  put(j, "alpha", o.alpha);
  put(j, "M", o.M);
  j["boundary_side"] = to_string(o.side);
  j["through_corner"] = o.through_corner;
  Json segs = Json::array();
  for (const auto& s : o.segments) segs.push_back(Json::array({point_json(s.from), point_json(s.to)}));
  j["segments"] = segs;
  return j;
}

/// Faces with exact corner lists, areas and census classes.
inline Json faces_json(const PlanarSubdivision& sub, const Census& c) {
  Json out = Json::array();
  for (const auto& r : c.faces) {
    const Face& f = sub.faces[r.face];
    Json j;
    j["face"] = r.face;
    Json corners = Json::array();
    for (const auto& p : f.polygon) corners.push_back(point_json(p));
    j["corners"] = corners;
    put(j, "area", r.area);
    j["type"] = std::stoi(to_string(r.type));
    j["area_class"] = r.area_class;
    j["shape_class"] = r.shape_class;
    out.push_back(j);
  }
  return out;
}

}  // namespace billiard
