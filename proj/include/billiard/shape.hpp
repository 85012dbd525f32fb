#pragma once

// Congruence classes of polygons under translation, rotation and reflection.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "billiard/orbit.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

/// Exact turning angle from one vector to the next: signs of their cross and
/// dot products plus the tangent cross/dot when the dot product is nonzero.
struct Turn {
  int cross_sign = 0;
  int dot_sign = 0;
  Scalar tangent;
};

inline Turn turn_between(const Point& a, const Point& b) {
  Scalar cross = a.x * b.y - a.y * b.x;
  Scalar dot = a.x * b.x + a.y * b.y;
  Turn t{cross.sign(), dot.sign(), constant_like(cross, 0)};
  if (t.dot_sign != 0) t.tangent = cross / dot;
  return t;
}

inline bool operator==(const Turn& a, const Turn& b) {
  return a.cross_sign == b.cross_sign && a.dot_sign == b.dot_sign && a.tangent == b.tangent;
}

/// Interns turning angles so signatures can refer to them by index. Indices
/// are only comparable between signatures built against the same table.
class TurnTable {
 public:
  int id_of(const Point& a, const Point& b) {
    Turn t = turn_between(a, b);
    for (std::size_t i = 0; i < turns_.size(); ++i)
      if (turns_[i] == t) return static_cast<int>(i);
    turns_.push_back(std::move(t));
    return static_cast<int>(turns_.size()) - 1;
  }
  std::size_t size() const { return turns_.size(); }

 private:
  std::vector<Turn> turns_;
};

/// Cyclic sequence of (turn at a corner, squared length of the side leaving
/// it), rotated to its lexicographically smallest form and minimised over the
/// mirror image. Equal signatures from the same TurnTable mean congruent
/// polygons.
struct ShapeSignature {
  std::vector<std::pair<int, Scalar>> corners;
};

inline Ordering compare(const ShapeSignature& a, const ShapeSignature& b) {
  if (a.corners.size() != b.corners.size())
    return a.corners.size() < b.corners.size() ? Ordering::Less : Ordering::Greater;
  for (std::size_t i = 0; i < a.corners.size(); ++i) {
    if (a.corners[i].first != b.corners[i].first)
      return a.corners[i].first < b.corners[i].first ? Ordering::Less : Ordering::Greater;
    Ordering o = cmp(a.corners[i].second, b.corners[i].second);
    if (o != Ordering::Equal) return o;
  }
  return Ordering::Equal;
}

inline bool operator==(const ShapeSignature& a, const ShapeSignature& b) { return compare(a, b) == Ordering::Equal; }

struct ShapeLess {
  bool operator()(const ShapeSignature& a, const ShapeSignature& b) const { return compare(a, b) == Ordering::Less; }
};

namespace detail {

// Corner i of the mirrored polygon, traversed counterclockwise, keeps turn
// n-1-i of the original and leaves along the original side n-2-i.
inline ShapeSignature canonical_signature(const std::vector<int>& turns, const std::vector<Scalar>& sides) {
  const std::size_t n = turns.size();
  auto at = [&](bool mirror, std::size_t start, std::size_t i) -> std::pair<int, const Scalar*> {
    std::size_t k = (start + i) % n;
    if (!mirror) return {turns[k], &sides[k]};
    return {turns[n - 1 - k], &sides[(2 * n - 2 - k) % n]};
  };
  auto less = [&](bool ma, std::size_t sa, bool mb, std::size_t sb) {
    for (std::size_t i = 0; i < n; ++i) {
      auto x = at(ma, sa, i);
      auto y = at(mb, sb, i);
      if (x.first != y.first) return x.first < y.first;
      Ordering o = cmp(*x.second, *y.second);
      if (o != Ordering::Equal) return o == Ordering::Less;
    }
    return false;
  };
  bool best_m = false;
  std::size_t best_s = 0;
  for (bool m : {false, true})
    for (std::size_t s = 0; s < n; ++s)
      if (less(m, s, best_m, best_s)) {
        best_m = m;
        best_s = s;
      }
  ShapeSignature sig;
  sig.corners.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = at(best_m, best_s, i);
    sig.corners.emplace_back(c.first, *c.second);
  }
  return sig;
}

}  // namespace detail

/// Signature of a simple polygon given counterclockwise.
inline ShapeSignature shape_signature(const std::vector<Point>& ccw, TurnTable& table) {
  const std::size_t n = ccw.size();
  std::vector<Point> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = {ccw[(i + 1) % n].x - ccw[i].x, ccw[(i + 1) % n].y - ccw[i].y};
  std::vector<int> turns(n);
  std::vector<Scalar> sides(n);
  for (std::size_t i = 0; i < n; ++i) {
    turns[i] = table.id_of(e[(i + n - 1) % n], e[i]);
    sides[i] = e[i].x * e[i].x + e[i].y * e[i].y;
  }
  return detail::canonical_signature(turns, sides);
}

/// Signatures for polygons whose sides run along the eight directions
/// E, NE, N, NW, W, SW, S, SE (diagonals of slope +-alpha). Turns come from a
/// per-direction-pair cache and squared lengths need one product per side.
class DirectionalShapes {
 public:
  explicit DirectionalShapes(const Scalar& alpha) : stretch_(constant_like(alpha, 1) + alpha * alpha) {
    const Scalar one = constant_like(alpha, 1);
    const Scalar zero = constant_like(alpha, 0);
    units_ = {Point{one, zero}, Point{one, alpha},  Point{zero, one},  Point{-one, alpha},
              Point{-one, zero}, Point{-one, -alpha}, Point{zero, -one}, Point{one, -alpha}};
  }

  /// `dirs[i]` is the direction index of the side leaving corner i.
  ShapeSignature signature(const std::vector<Point>& ccw, const std::vector<int>& dirs) {
    const std::size_t n = ccw.size();
    std::vector<int> turns(n);
    std::vector<Scalar> sides(n);
    for (std::size_t i = 0; i < n; ++i) {
      int din = dirs[(i + n - 1) % n];
      int dout = dirs[i];
      auto& cached = turn_ids_[static_cast<std::size_t>(din)][static_cast<std::size_t>(dout)];
      if (!cached) cached = table_.id_of(units_[static_cast<std::size_t>(din)], units_[static_cast<std::size_t>(dout)]);
      turns[i] = *cached;
      const Point& p = ccw[i];
      const Point& q = ccw[(i + 1) % n];
      if (dout == 2 || dout == 6) {
        Scalar dy = q.y - p.y;
        sides[i] = dy * dy;
      } else {
        Scalar dx = q.x - p.x;
        sides[i] = dout % 4 == 0 ? dx * dx : dx * dx * stretch_;
      }
    }
    return detail::canonical_signature(turns, sides);
  }

  TurnTable& table() { return table_; }

 private:
  Scalar stretch_;  // 1 + alpha^2
  std::array<Point, 8> units_;
  std::array<std::array<std::optional<int>, 8>, 8> turn_ids_{};
  TurnTable table_;
};

}  // namespace billiard
