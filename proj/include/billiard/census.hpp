#pragma once

// Classification of the faces of a billiard partition: polygon type by number
// of sides on the square's boundary, exact areas, congruence classes, and the
// gap set D of vertical distances between adjacent parallel orbit lines.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiard/arrangement.hpp"
#include "billiard/errors.hpp"
#include "billiard/gaps.hpp"
#include "billiard/orbit.hpp"
#include "billiard/scalar.hpp"
#include "billiard/shape.hpp"

namespace billiard {

enum class PolygonType { Type1, Type2, Type3 };

inline PolygonType polygon_type(int boundary_sides) {
  if (boundary_sides == 0) return PolygonType::Type1;
  if (boundary_sides == 1) return PolygonType::Type2;
  return PolygonType::Type3;
}

inline const char* to_string(PolygonType t) {
  switch (t) {
    case PolygonType::Type1: return "1";
    case PolygonType::Type2: return "2";
    case PolygonType::Type3: return "3";
  }
  return "?";
}

struct FaceRecord {
  std::size_t face = 0;
  Scalar area;
  PolygonType type = PolygonType::Type1;
  std::size_t corners = 0;
  bool parallelogram = false;
  bool has_orbit_endpoint = false;
  ShapeSignature signature;
  std::size_t shape_class = 0;  // index into the distinct shapes
  std::size_t area_class = 0;   // index into Census::areas
};

struct AreaClass {
  Scalar area;
  std::size_t count = 0;
  std::vector<std::string> slots;  // formula slots matching this area
};

struct Census {
  std::vector<FaceRecord> faces;
  std::vector<Scalar> areas;  // distinct, ascending
  std::size_t distinct_areas = 0;
  std::size_t distinct_shapes = 0;
  GapSet gap_set;
  std::vector<AreaClass> area_table;
};

namespace detail {

inline bool is_parallelogram(const Face& f) {
  if (f.polygon.size() != 4) return false;
  for (std::size_t i = 0; i < 4; ++i) {
    int d = f.side_dirs[i];
    if (d % 2 == 0) return false;  // axis-parallel side
    if (f.side_dirs[(i + 2) % 4] != (d + 4) % 8) return false;
  }
  return f.side_dirs[0] % 4 != f.side_dirs[1] % 4;
}

}  // namespace detail

/// Types, areas and shapes of all faces. `endpoint`, when given, marks faces
/// having the orbit's final point as a corner.
inline Census classify(const PlanarSubdivision& sub, const std::optional<Point>& endpoint = std::nullopt) {
  Census c;
  DirectionalShapes shapes(sub.alpha);
  for (std::size_t i = 0; i < sub.faces.size(); ++i) {
    const Face& f = sub.faces[i];
    FaceRecord r;
    r.face = i;
    r.area = f.area;
    r.type = polygon_type(f.boundary_side_count);
    r.corners = f.polygon.size();
    r.parallelogram = detail::is_parallelogram(f);
    if (endpoint)
      r.has_orbit_endpoint = std::any_of(f.polygon.begin(), f.polygon.end(),
                                         [&](const Point& p) { return p == *endpoint; });
    r.signature = shapes.signature(f.polygon, f.side_dirs);
    c.faces.push_back(std::move(r));
  }

  std::vector<Scalar> areas;
  for (const auto& r : c.faces) areas.push_back(r.area);
  std::sort(areas.begin(), areas.end(), ScalarLess{});
  areas.erase(std::unique(areas.begin(), areas.end()), areas.end());
  c.areas = areas;
  c.distinct_areas = areas.size();
  c.area_table.resize(areas.size());
  for (std::size_t k = 0; k < areas.size(); ++k) c.area_table[k].area = areas[k];

  std::map<ShapeSignature, std::size_t, ShapeLess> shape_ids;
  for (auto& r : c.faces) {
    auto it = std::lower_bound(areas.begin(), areas.end(), r.area, ScalarLess{});
    r.area_class = static_cast<std::size_t>(it - areas.begin());
    ++c.area_table[r.area_class].count;
    auto [sit, fresh] = shape_ids.try_emplace(r.signature, shape_ids.size());
    r.shape_class = sit->second;
  }
  c.distinct_shapes = shape_ids.size();
  return c;
}

/// Orbit, subdivision and census of one truncation. Slopes above 1 are
/// analysed with slope 1/alpha and the axes swapped, which maps the partition
/// onto a congruent one.
struct Analysis {
  Scalar alpha;        // as given
  Scalar frame_alpha;  // slope used for construction, <= 1
  bool swapped = false;
  Scalar M;            // abscissa in the construction frame
  long squares = 0;    // unit squares fully traversed, floor(M) + floor(alpha M)
  BoundarySide side = BoundarySide::Left;  // in the original frame
  BilliardOrbit orbit;                     // construction frame
  PlanarSubdivision subdivision;
  Census census;
  /// Lines present in the orbit beyond the family |k| <= squares (non-empty
  /// only for truncations on the upper or right boundary).
  std::size_t extra_lines = 0;
};

namespace detail {

inline BoundarySide swap_side(BoundarySide s) {
  switch (s) {
    case BoundarySide::Left: return BoundarySide::Lower;
    case BoundarySide::Lower: return BoundarySide::Left;
    case BoundarySide::Upper: return BoundarySide::Right;
    case BoundarySide::Right: return BoundarySide::Upper;
  }
  return s;
}

}  // namespace detail

/// Gap set D of the orbit: the intercepts y_k, |k| <= N with N the number of
/// squares traversed, censused on [-alpha, 1], together with the negative
/// family 1 - y_k on [0, 1 + alpha]. Lines of a partially traversed next square
/// are appended in generation order and the one-point extension bound is
/// checked against the shorter orbit.
inline GapSet orbit_gap_set(const BilliardOrbit& orbit, long squares, std::size_t* extra_lines = nullptr) {
  const Scalar& alpha = orbit.alpha;
  const Scalar one = constant_like(alpha, 1);
  RotationOrbit pos{{}, -alpha, one + alpha, alpha / (one + alpha), -squares, squares};
  RotationOrbit neg{{}, constant_like(alpha, 0), one + alpha, alpha / (one + alpha), -squares, squares};
  std::set<Scalar, ScalarLess> pos_set, neg_set;
  for (long k = -squares; k <= squares; ++k) {
    Scalar y = intercepts_closed_form(alpha, k);
    pos.points.push_back(y);
    neg.points.push_back(one - y);
    pos_set.insert(y);
    neg_set.insert(one - y);
  }
  std::size_t extras = 0;
  std::vector<Scalar> new_pos, new_neg;
  for (const auto& s : orbit.segments) {
    LineKey key = line_of(alpha, s);
    auto& set = key.slope > 0 ? pos_set : neg_set;
    if (set.insert(key.intercept).second) (key.slope > 0 ? new_pos : new_neg).push_back(key.intercept);
  }
  auto extend = [&](RotationOrbit& o, const std::vector<Scalar>& added) {
    for (const auto& y : added) {
      o.points.push_back(y);
      ++o.hi;
      ++extras;
      verify_extension_property(o);
    }
  };
  extend(pos, new_pos);
  extend(neg, new_neg);
  if (extra_lines) *extra_lines = extras;
  GapSet dp = gap_census(pos);
  GapSet dn = gap_census(neg);
  GapSet d;
  d.lengths = length_union(dp, dn);
  for (const auto& l : d.lengths) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < dp.size(); ++i)
      if (dp.lengths[i] == l) m += dp.multiplicities[i];
    d.multiplicities.push_back(m);
  }
  return d;
}

inline Analysis analyze(const TruncationSpec& spec) {
  if (spec.alpha.sign() <= 0) throw DomainError("slope must be positive");
  Analysis a;
  a.alpha = spec.alpha;
  Scalar M = resolve_M(spec);
  const Scalar one = constant_like(spec.alpha, 1);
  if (spec.alpha > one) {
    a.swapped = true;
    a.frame_alpha = one / spec.alpha;
    a.M = spec.alpha * M;
  } else {
    a.frame_alpha = spec.alpha;
    a.M = M;
  }
  a.orbit = fold_orbit(TruncationSpec::at(a.frame_alpha, a.M));
  a.side = a.swapped ? detail::swap_side(a.orbit.side) : a.orbit.side;
  mpz_class n = a.M.floor() + (a.frame_alpha * a.M).floor();
  a.squares = n.get_si();
  a.subdivision = build_subdivision(a.orbit);
  a.census = classify(a.subdivision, a.orbit.end);
  a.census.gap_set = orbit_gap_set(a.orbit, a.squares, &a.extra_lines);
  return a;
}

// ---------------------------------------------------------------------------
// Area formula slots

enum class SlotKind { Parallelogram, HalfRhombus, Irregular, Quarter };

struct FormulaSlot {
  SlotKind kind;
  int i = 0;  // 1-based index into D (largest first)
  int j = 0;
  Scalar value;
  std::string label;
};

/// d_i d_j / 2a (i <= j), d_i^2 / 4a, d_i d_j / 2a - d_i^2 / 4a (i != j) and
/// d_i^2 / 8a for the gap lengths d_1 > d_2 > ... of D.
inline std::vector<FormulaSlot> formula_slots(const GapSet& D, const Scalar& alpha) {
  std::vector<FormulaSlot> out;
  const Scalar two_a = alpha + alpha;
  const Scalar four_a = two_a + two_a;
  const Scalar eight_a = four_a + four_a;
  const int n = static_cast<int>(D.size());
  auto d = [&](int i) -> const Scalar& { return D.lengths[static_cast<std::size_t>(i - 1)]; };
  auto name = [](int i) { return "d" + std::to_string(i); };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      out.push_back({SlotKind::Parallelogram, i, j, d(i) * d(j) / two_a, name(i) + "*" + name(j) + "/(2a)"});
  for (int i = 1; i <= n; ++i)
    out.push_back({SlotKind::HalfRhombus, i, i, d(i) * d(i) / four_a, name(i) + "^2/(4a)"});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        out.push_back({SlotKind::Irregular, i, j, d(i) * d(j) / two_a - d(i) * d(i) / four_a,
                       name(i) + "*" + name(j) + "/(2a)-" + name(i) + "^2/(4a)"});
  for (int i = 1; i <= n; ++i)
    out.push_back({SlotKind::Quarter, i, i, d(i) * d(i) / eight_a, name(i) + "^2/(8a)"});
  return out;
}

struct FaceMatch {
  std::size_t face = 0;
  std::vector<std::string> slots;
};

struct FormulaReport {
  std::vector<FormulaSlot> slots;
  std::vector<FaceMatch> matches;
  std::vector<std::string> occupied;        // slot labels used by at least one face
  std::vector<std::string> violations;      // type 1 or type 2 faces with no slot
  std::vector<std::size_t> free_corners;    // type 3 faces outside the quarter slots
  std::size_t irregular_faces = 0;          // non-triangular type 2 faces
};

/// Matches every face's exact area against the slots allowed for its type:
/// parallelograms (type 1) against d_i d_j/2a, triangular type 2 faces against
/// d^2/4a, the non-triangular type 2 face against the gap-product minus
/// half-rhombus slots, and corner faces (type 3) against d^2/8a.
/// Throws FormulaMismatch when a type 1 or type 2 face matches nothing and
/// `strict` is set.
inline FormulaReport match_area_formulas(const Census& census, const GapSet& D, const Scalar& alpha,
                                         bool strict = true) {
  FormulaReport rep;
  rep.slots = formula_slots(D, alpha);
  std::set<std::string> occupied;
  for (const auto& f : census.faces) {
    FaceMatch m{f.face, {}};
    SlotKind want = SlotKind::Parallelogram;
    if (f.type == PolygonType::Type2) want = f.corners == 3 ? SlotKind::HalfRhombus : SlotKind::Irregular;
    if (f.type == PolygonType::Type3) want = SlotKind::Quarter;
    if (f.type == PolygonType::Type2 && f.corners != 3) ++rep.irregular_faces;
    for (const auto& s : rep.slots)
      if (s.kind == want && s.value == f.area) m.slots.push_back(s.label);
    if (m.slots.empty()) {
      std::string what = "face " + std::to_string(f.face) + " (type " + to_string(f.type) + ", " +
                         std::to_string(f.corners) + " corners) area " + f.area.to_string();
      if (f.type == PolygonType::Type3) {
        rep.free_corners.push_back(f.face);
      } else if (f.type == PolygonType::Type1 && !f.parallelogram) {
        rep.violations.push_back(what + " is not a parallelogram");
      } else {
        rep.violations.push_back(what + " matches no slot");
      }
    }
    occupied.insert(m.slots.begin(), m.slots.end());
    rep.matches.push_back(std::move(m));
  }
  for (const auto& s : rep.slots)
    if (occupied.count(s.label)) rep.occupied.push_back(s.label);
  if (strict && !rep.violations.empty()) throw FormulaMismatch(rep.violations.front());
  return rep;
}

/// Fills the per-area slot labels of the census from a formula report.
inline void annotate_area_table(Census& census, const FormulaReport& rep) {
  for (auto& cls : census.area_table) cls.slots.clear();
  for (const auto& m : rep.matches) {
    auto& slots = census.area_table[census.faces[m.face].area_class].slots;
    for (const auto& s : m.slots)
      if (std::find(slots.begin(), slots.end(), s) == slots.end()) slots.push_back(s);
  }
}

// ---------------------------------------------------------------------------
// Verifiers

struct Theorem13Report {
  std::size_t distinct_areas = 0;
  std::size_t distinct_shapes = 0;
  std::size_t faces = 0;
  GapSet gap_set;
  BoundarySide side = BoundarySide::Left;
  FormulaReport formulas;
};

/// At most 13 distinct areas and 16 distinct shapes, with |D| <= 3.
inline Theorem13Report verify_theorem13(const Analysis& a) {
  const Census& c = a.census;
  std::string where = "alpha=" + a.alpha.to_string() + " M=" + a.M.to_string();
  if (c.gap_set.size() > 3)
    throw TheoremViolation(where + ": " + std::to_string(c.gap_set.size()) + " vertical gap lengths");
  if (c.distinct_areas > 13)
    throw TheoremViolation(where + ": " + std::to_string(c.distinct_areas) + " distinct areas");
  if (c.distinct_shapes > 16)
    throw TheoremViolation(where + ": " + std::to_string(c.distinct_shapes) + " distinct shapes");
  Theorem13Report r{c.distinct_areas, c.distinct_shapes, c.faces.size(), c.gap_set, a.side, {}};
  r.formulas = match_area_formulas(c, c.gap_set, a.frame_alpha, false);
  return r;
}

inline Theorem13Report verify_theorem13(const TruncationSpec& spec) { return verify_theorem13(analyze(spec)); }

struct RationalReport {
  long p = 0;
  long q = 0;
  std::vector<Scalar> areas;  // at the full period
  std::size_t faces = 0;
  Scalar M0;                  // first truncation from which the census no longer changes
  Scalar period;
};

/// Rational slope p/q run over a full period x in [0, q]. The limiting
/// partition has between one and three distinct areas, all among
/// 1/(2pq), 1/(4pq), 1/(8pq).
inline RationalReport verify_rational(long p, long q) {
  if (p <= 0 || q <= 0 || p > q) throw DomainError("need 0 < p/q <= 1");
  if (std::gcd(p, q) != 1) throw DomainError("p and q must be coprime");
  Scalar alpha = Scalar::rational(mpz_class(p), mpz_class(q));
  Scalar period(q);
  Analysis full = analyze(TruncationSpec::at(alpha, period));
  RationalReport r{p, q, full.census.areas, full.census.faces.size(), period, period};
  std::string where = "alpha=" + alpha.to_string();
  if (r.areas.empty() || r.areas.size() > 3)
    throw TheoremViolation(where + ": " + std::to_string(r.areas.size()) + " limiting areas");
  const mpz_class pq = mpz_class(p) * q;
  const Scalar allowed[3] = {Scalar::rational(mpz_class(1), 2 * pq), Scalar::rational(mpz_class(1), 4 * pq),
                             Scalar::rational(mpz_class(1), 8 * pq)};
  for (const auto& area : r.areas)
    if (std::none_of(std::begin(allowed), std::end(allowed), [&](const Scalar& s) { return s == area; }))
      throw TheoremViolation(where + ": limiting area " + area.to_string() + " is not 1/(2pq), 1/(4pq) or 1/(8pq)");

  // Scan truncations backwards from the period while the census is unchanged.
  std::vector<Scalar> xs = fold_breakpoints(alpha, period);
  auto same = [&](const Census& c) {
    if (c.faces.size() != r.faces || c.areas.size() != r.areas.size()) return false;
    for (std::size_t i = 0; i < c.areas.size(); ++i)
      if (!(c.areas[i] == r.areas[i])) return false;
    return true;
  };
  for (std::size_t i = xs.size() - 1; i >= 2; --i) {
    Analysis a = analyze(TruncationSpec::at(alpha, xs[i - 1]));
    if (!same(a.census)) break;
    r.M0 = xs[i - 1];
  }
  return r;
}

struct GoldenReport {
  long n = 0;
  Scalar alpha;
  std::size_t truncations = 0;
  std::size_t max_areas = 0;
  std::size_t ratio_checks = 0;  // truncations with |D| = 3
  /// Truncations before D first equals {alpha, phi alpha} where |D| = 3 and
  /// d1 d3 != d2^2. The geometric pattern only starts at that stage; this
  /// happens for n >= 4 (e.g. D = {1 - alpha, 1 - 2 alpha, alpha}).
  std::size_t early_ratio_mismatches = 0;
  /// Successive distinct gap sets of the intercept orbit grown one point at a
  /// time, starting from the first occurrence of {alpha, phi alpha}.
  std::vector<std::vector<Scalar>> transitions;
};

inline Scalar golden_phi() { return Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5); }

/// alpha = 1/(n + phi): every truncation up to `max_squares` squares has at
/// most 12 distinct areas, and once D has reached {alpha, phi alpha},
/// whenever D = {d1 > d2 > d3}, d1 d3 = d2^2.
inline GoldenReport verify_golden(long n, long max_squares) {
  if (n < 1) throw DomainError("n must be positive");
  const Scalar phi = golden_phi();
  if (!(Scalar(1) - phi == phi * phi)) throw TheoremViolation("1 - phi != phi^2");
  GoldenReport r;
  r.n = n;
  r.alpha = Scalar(1) / (Scalar(n) + phi);
  const Scalar& alpha = r.alpha;
  Scalar M_max = grid_crossing_M(alpha, max_squares);
  Scalar M_min = grid_crossing_M(alpha, 1);
  std::vector<Scalar> xs = fold_breakpoints(alpha, M_max);
  bool pattern_started = false;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] < M_min) continue;  // the line families need one full square
    Analysis a = analyze(TruncationSpec::at(alpha, xs[i]));
    ++r.truncations;
    const Census& c = a.census;
    std::string where = "alpha=" + alpha.to_string() + " M=" + xs[i].to_string();
    r.max_areas = std::max(r.max_areas, c.distinct_areas);
    if (c.distinct_areas > 12)
      throw TheoremViolation(where + ": " + std::to_string(c.distinct_areas) + " distinct areas");
    if (c.gap_set.size() > 3) throw TheoremViolation(where + ": more than three gap lengths");
    const auto& d = c.gap_set.lengths;
    if (d.size() == 2 && d[0] == alpha && d[1] == phi * alpha) pattern_started = true;
    if (d.size() == 3 && !(d[0] * d[2] == d[1] * d[1])) {
      if (pattern_started) throw TheoremViolation(where + ": d1 d3 != d2^2");
      ++r.early_ratio_mismatches;
    } else if (d.size() == 3) {
      ++r.ratio_checks;
    }
  }

  // Gap evolution of the intercept orbit, one point at a time: y_0, y_1,
  // y_{-1}, y_2, y_{-2}, ...
  const Scalar one(1);
  GapTracker tracker(-alpha, one);
  std::vector<std::vector<Scalar>> states;
  auto record = [&] {
    auto lens = tracker.census().lengths;
    if (states.empty() || states.back().size() != lens.size() ||
        !std::equal(lens.begin(), lens.end(), states.back().begin()))
      states.push_back(std::move(lens));
  };
  tracker.insert(intercepts_closed_form(alpha, 0));
  record();
  for (long k = 1; k <= max_squares; ++k) {
    tracker.insert(intercepts_closed_form(alpha, k));
    record();
    tracker.insert(intercepts_closed_form(alpha, -k));
    record();
  }
  const std::vector<Scalar> first{alpha, phi * alpha};
  auto it = std::find_if(states.begin(), states.end(), [&](const std::vector<Scalar>& s) {
    return s.size() == 2 && s[0] == first[0] && s[1] == first[1];
  });
  if (it == states.end()) throw TheoremViolation("gap set {alpha, phi alpha} never occurs");
  r.transitions.assign(it, states.end());
  const std::vector<std::vector<Scalar>> expected{
      {alpha, phi * alpha}, {alpha, phi * alpha, phi * phi * alpha}, {phi * alpha, phi * phi * alpha}};
  for (std::size_t s = 0; s < expected.size(); ++s) {
    if (s >= r.transitions.size() || r.transitions[s].size() != expected[s].size() ||
        !std::equal(expected[s].begin(), expected[s].end(), r.transitions[s].begin()))
      throw TheoremViolation("gap evolution step " + std::to_string(s) + " differs from the golden pattern");
  }
  return r;
}

}  // namespace billiard
