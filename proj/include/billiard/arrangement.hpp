#pragma once

// Planar subdivision of [0,1/2]^2 cut out by the orbit's chords and the
// square's boundary. Every edge points in one of eight directions (E, NE, N,
// NW, W, SW, S, SE; the diagonal ones have slope +-alpha), so angular order
// around a vertex is decided by the direction index alone.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/orbit.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

/// Counterclockwise direction index: 0 E, 1 NE, 2 N, 3 NW, 4 W, 5 SW, 6 S, 7 SE.
using Direction = int;

struct Vertex {
  Point position;
  /// Outgoing half-edges sorted counterclockwise by direction.
  std::vector<std::size_t> incident_edges;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  Direction dir = 0;  // from u to v
  bool on_boundary = false;
};

struct Face {
  /// Counterclockwise vertex cycle, including vertices where a collinear edge
  /// continues.
  std::vector<std::size_t> boundary;
  /// Geometric corners of the polygon (collinear vertices dropped), CCW.
  std::vector<Point> polygon;
  /// Direction of the side leaving polygon[i].
  std::vector<Direction> side_dirs;
  /// Whether the side leaving polygon[i] lies on the square's boundary.
  std::vector<bool> side_on_boundary;
  Scalar area;
  int boundary_side_count = 0;
};

struct PlanarSubdivision {
  Scalar alpha;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;  // bounded faces only
  std::vector<std::string> warnings;

  /// V - E + F, counting the outer face.
  long euler_characteristic() const {
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(faces.size()) + 1;
  }

  Scalar total_area() const {
    Scalar sum = constant_like(alpha, 0);
    for (const auto& f : faces) sum += f.area;
    return sum;
  }
};

/// Signed area by the trapezoid rule, positive for counterclockwise order.
/// Vertical sides contribute nothing and are skipped.
inline Scalar signed_area(const std::vector<Point>& poly) {
  if (poly.empty()) return Scalar();
  Scalar acc = constant_like(poly.front().x, 0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    if (p.x == q.x) continue;
    acc += (p.x - q.x) * (p.y + q.y);
  }
  return acc * constant_like(acc, mpq_class(1, 2));
}

/// Area of a simple polygon, oriented either way.
inline Scalar face_area(const std::vector<Point>& poly) {
  Scalar a = signed_area(poly);
  if (a.sign() == 0) throw DegenerateFace("polygon with zero area");
  return abs(a);
}

inline Scalar face_area(const Face& face) { return face_area(face.polygon); }

namespace detail {

struct ChordSpan {
  int slope;
  Scalar intercept;
  Scalar lo;
  Scalar hi;
  double lo_d, hi_d, c_d;
};

inline Direction chord_direction(int slope, bool rightward) {
  if (slope > 0) return rightward ? 1 : 5;
  return rightward ? 7 : 3;
}

class SubdivisionBuilder {
 public:
  explicit SubdivisionBuilder(const Scalar& alpha)
      : alpha_(alpha), zero_(constant_like(alpha, 0)), half_(constant_like(alpha, mpq_class(1, 2))) {
    out_.alpha = alpha;
  }

  PlanarSubdivision build(const std::vector<Segment>& segments) {
    collect_chords(segments);
    add_chord_edges();
    add_boundary_edges();
    walk_faces();
    return std::move(out_);
  }

 private:
  void collect_chords(const std::vector<Segment>& segments) {
    // Group collinear segments by line and merge overlapping x-ranges.
    std::map<std::pair<int, Scalar>, std::vector<std::pair<Scalar, Scalar>>,
             bool (*)(const std::pair<int, Scalar>&, const std::pair<int, Scalar>&)>
        by_line([](const std::pair<int, Scalar>& a, const std::pair<int, Scalar>& b) {
          if (a.first != b.first) return a.first < b.first;
          return a.second < b.second;
        });
    for (const auto& s : segments) {
      LineKey key = line_of(alpha_, s);
      by_line[{key.slope, key.intercept}].emplace_back(min(s.from.x, s.to.x), max(s.from.x, s.to.x));
    }
    for (auto& [key, spans] : by_line) {
      std::sort(spans.begin(), spans.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      std::vector<std::pair<Scalar, Scalar>> merged;
      for (auto& sp : spans) {
        if (!merged.empty() && sp.first <= merged.back().second) {
          merged.back().second = max(merged.back().second, sp.second);
        } else {
          merged.push_back(sp);
        }
      }
      if (spans.size() > 1)
        out_.warnings.push_back("merged " + std::to_string(spans.size()) + " collinear segments into " +
                                std::to_string(merged.size()));
      for (auto& [lo, hi] : merged)
        chords_.push_back({key.first, key.second, lo, hi, lo.to_double(), hi.to_double(), key.second.to_double()});
    }
  }

  std::size_t vertex_at(const Point& p) {
    auto [it, fresh] = index_.try_emplace(p, out_.vertices.size());
    if (fresh) {
      out_.vertices.push_back({p, {}});
    } else if (!p.x.is_exact()) {
      const Point& q = out_.vertices[it->second].position;
      if (q.x.to_double() != p.x.to_double() || q.y.to_double() != p.y.to_double())
        out_.warnings.push_back("merged vertex (" + p.x.to_string() + ", " + p.y.to_string() + ") into (" +
                                q.x.to_string() + ", " + q.y.to_string() + ")");
    }
    return it->second;
  }

  void add_edge(std::size_t u, std::size_t v, Direction dir, bool boundary) {
    if (u == v) return;
    auto key = std::minmax(u, v);
    if (!edge_keys_.insert(key).second) return;
    out_.edges.push_back({u, v, dir, boundary});
  }

  Scalar y_on(const ChordSpan& c, const Scalar& x) const {
    return (c.slope > 0 ? alpha_ : -alpha_) * x + c.intercept;
  }

  void add_chord_edges() {
    const double a2 = 2.0 * alpha_.to_double();
    const Scalar inv2a = constant_like(alpha_, 1) / (alpha_ + alpha_);
    std::vector<std::vector<Scalar>> stops(chords_.size());
    for (std::size_t i = 0; i < chords_.size(); ++i) {
      stops[i].push_back(chords_[i].lo);
      stops[i].push_back(chords_[i].hi);
    }
    for (std::size_t i = 0; i < chords_.size(); ++i) {
      if (chords_[i].slope < 0) continue;
      for (std::size_t j = 0; j < chords_.size(); ++j) {
        if (chords_[j].slope > 0) continue;
        const ChordSpan& p = chords_[i];
        const ChordSpan& n = chords_[j];
        double xd = (n.c_d - p.c_d) / a2;
        if (xd < std::max(p.lo_d, n.lo_d) - 1e-7 || xd > std::min(p.hi_d, n.hi_d) + 1e-7) continue;
        Scalar x = (n.intercept - p.intercept) * inv2a;
        if (x < p.lo || x > p.hi || x < n.lo || x > n.hi) continue;
        stops[i].push_back(x);
        stops[j].push_back(x);
      }
    }
    for (std::size_t i = 0; i < chords_.size(); ++i) {
      auto& xs = stops[i];
      std::sort(xs.begin(), xs.end(), ScalarLess{});
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      std::size_t prev = vertex_at({xs[0], y_on(chords_[i], xs[0])});
      for (std::size_t k = 1; k < xs.size(); ++k) {
        std::size_t cur = vertex_at({xs[k], y_on(chords_[i], xs[k])});
        add_edge(prev, cur, chord_direction(chords_[i].slope, true), false);
        prev = cur;
      }
    }
  }

  void add_boundary_edges() {
    // Walk the square counterclockwise: bottom (E), right (N), top (W), left (S).
    std::array<std::vector<std::pair<Scalar, std::size_t>>, 4> sides;
    for (const Point& corner : {Point{zero_, zero_}, Point{half_, zero_}, Point{half_, half_}, Point{zero_, half_}})
      vertex_at(corner);
    for (std::size_t v = 0; v < out_.vertices.size(); ++v) {
      const Point& p = out_.vertices[v].position;
      if (p.y == zero_) sides[0].emplace_back(p.x, v);
      if (p.x == half_) sides[1].emplace_back(p.y, v);
      if (p.y == half_) sides[2].emplace_back(-p.x, v);
      if (p.x == zero_) sides[3].emplace_back(-p.y, v);
    }
    const Direction dirs[4] = {0, 2, 4, 6};
    for (int s = 0; s < 4; ++s) {
      auto& list = sides[s];
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 1; k < list.size(); ++k) add_edge(list[k - 1].second, list[k].second, dirs[s], true);
    }
  }

  void walk_faces() {
    const std::size_t H = out_.edges.size() * 2;
    auto from = [&](std::size_t h) { const Edge& e = out_.edges[h / 2]; return h % 2 ? e.v : e.u; };
    auto to = [&](std::size_t h) { const Edge& e = out_.edges[h / 2]; return h % 2 ? e.u : e.v; };
    auto dir = [&](std::size_t h) { const Edge& e = out_.edges[h / 2]; return h % 2 ? (e.dir + 4) % 8 : e.dir; };

    std::vector<std::array<std::optional<std::size_t>, 8>> slot(out_.vertices.size());
    for (std::size_t h = 0; h < H; ++h) {
      auto& cell = slot[from(h)][dir(h)];
      if (cell) throw TheoremViolation("two edges leave a vertex in the same direction");
      cell = h;
    }
    for (std::size_t v = 0; v < out_.vertices.size(); ++v)
      for (int d = 0; d < 8; ++d)
        if (slot[v][d]) out_.vertices[v].incident_edges.push_back(*slot[v][d]);

    // Face on the left: at the head of h, take the outgoing edge that comes
    // just before the reverse of h in counterclockwise order.
    auto next = [&](std::size_t h) {
      std::size_t v = to(h);
      int back = (dir(h) + 4) % 8;
      for (int step = 1; step <= 8; ++step) {
        int d = (back - step + 8) % 8;
        if (slot[v][d]) return *slot[v][d];
      }
      throw TheoremViolation("dangling edge");
    };

    std::vector<bool> used(H, false);
    std::size_t outer = 0;
    for (std::size_t start = 0; start < H; ++start) {
      if (used[start]) continue;
      Face face;
      std::vector<std::size_t> hs;
      std::size_t h = start;
      do {
        if (used[h]) throw TheoremViolation("face walk revisits a half-edge");
        used[h] = true;
        hs.push_back(h);
        face.boundary.push_back(from(h));
        h = next(h);
      } while (h != start);

      // Collinear corners do not change the area, so it is taken over the
      // simplified polygon.
      for (std::size_t i = 0; i < hs.size(); ++i) {
        std::size_t in = hs[(i + hs.size() - 1) % hs.size()];
        if (dir(in) == dir(hs[i])) continue;
        face.polygon.push_back(out_.vertices[from(hs[i])].position);
        face.side_dirs.push_back(dir(hs[i]));
        bool b = out_.edges[hs[i] / 2].on_boundary;
        face.side_on_boundary.push_back(b);
        if (b) ++face.boundary_side_count;
      }
      Scalar area = signed_area(face.polygon);
      if (area.sign() < 0) {
        ++outer;
        continue;
      }
      if (area.sign() == 0) throw DegenerateFace("face with zero area");
      std::set<std::size_t> seen(face.boundary.begin(), face.boundary.end());
      if (seen.size() != face.boundary.size()) throw TheoremViolation("face boundary is not simple");
      face.area = area;
      out_.faces.push_back(std::move(face));
    }
    if (outer != 1) throw TheoremViolation("expected exactly one outer face, found " + std::to_string(outer));
  }

  Scalar alpha_;
  Scalar zero_;
  Scalar half_;
  std::vector<ChordSpan> chords_;
  std::map<Point, std::size_t, PointLess> index_;
  std::set<std::pair<std::size_t, std::size_t>> edge_keys_;
  PlanarSubdivision out_;
};

}  // namespace detail

/// Subdivision whose 1-skeleton is the union of the orbit segments and the
/// boundary of [0,1/2]^2. All intersections are exact; coincident points are
/// merged into one vertex.
inline PlanarSubdivision build_subdivision(const BilliardOrbit& orbit) {
  return detail::SubdivisionBuilder(orbit.alpha).build(orbit.segments);
}

}  // namespace billiard
