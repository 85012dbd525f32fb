#pragma once

// Brute-force reference for the partition of [0,1/2]^2 cut out by a folded
// orbit. Shares only Scalar with the library: the orbit is re-derived from
// the halfline, faces come from vertical slabs between all pairwise crossing
// abscissae, and a double-precision raster flood fill recounts the faces.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "billiard/scalar.hpp"

namespace oracle {

using billiard::Scalar;

struct Seg {
  Scalar x0, y0, x1, y1;  // x0 < x1
};

inline Scalar dist_to_int(const Scalar& v) {
  Scalar f = v - Scalar::rational(mpq_class(v.floor()));
  Scalar g = Scalar(1) - f;
  return g < f ? g : f;
}

/// Folded pieces of (x, alpha x), 0 <= x <= M, cut wherever x or alpha x
/// passes a multiple of 1/2.
inline std::vector<Seg> folded_segments(const Scalar& alpha, const Scalar& M) {
  std::vector<Scalar> cuts{Scalar(0), M};
  const Scalar half = Scalar::rational(mpq_class(1, 2));
  for (long j = 1; Scalar(j) * half < M; ++j) cuts.push_back(Scalar(j) * half);
  for (long j = 1; Scalar(j) * half / alpha < M; ++j) cuts.push_back(Scalar(j) * half / alpha);
  std::sort(cuts.begin(), cuts.end(), billiard::ScalarLess{});
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Seg> out;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    Scalar ax = dist_to_int(cuts[i - 1]), ay = dist_to_int(alpha * cuts[i - 1]);
    Scalar bx = dist_to_int(cuts[i]), by = dist_to_int(alpha * cuts[i]);
    if (bx < ax) {
      std::swap(ax, bx);
      std::swap(ay, by);
    }
    out.push_back({ax, ay, bx, by});
  }
  return out;
}

struct Reference {
  std::size_t faces = 0;
  std::vector<Scalar> areas;  // ascending, with repetition
};

namespace detail {

inline Scalar y_at(const Seg& s, const Scalar& x) {
  return s.y0 + (s.y1 - s.y0) * (x - s.x0) / (s.x1 - s.x0);
}

struct Dsu {
  std::vector<std::size_t> p;
  std::size_t find(std::size_t i) {
    while (p[i] != i) i = p[i] = p[p[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

}  // namespace detail

/// Exact faces by slab decomposition. Within a slab no two segments cross,
/// so consecutive segments bound trapezoids; trapezoids in adjacent slabs
/// belong to one face when their open edges on the shared line overlap.
inline Reference slab_reference(const std::vector<Seg>& orbit) {
  const Scalar zero(0), half = Scalar::rational(mpq_class(1, 2));
  std::vector<Seg> segs = orbit;
  segs.push_back({zero, zero, half, zero});
  segs.push_back({zero, half, half, half});

  std::vector<Scalar> xs{zero, half};
  for (const auto& s : segs) {
    xs.push_back(s.x0);
    xs.push_back(s.x1);
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Seg& a = segs[i];
      const Seg& b = segs[j];
      Scalar sa = (a.y1 - a.y0) / (a.x1 - a.x0);
      Scalar sb = (b.y1 - b.y0) / (b.x1 - b.x0);
      if (sa == sb) continue;
      Scalar x = (b.y0 - sb * b.x0 - a.y0 + sa * a.x0) / (sa - sb);
      if (x < a.x0 || x > a.x1 || x < b.x0 || x > b.x1) continue;
      xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end(), billiard::ScalarLess{});
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  struct Piece {
    Scalar lo_l, hi_l, lo_r, hi_r;  // bounding y values at the slab's two sides
    Scalar area;
  };
  std::vector<std::vector<Piece>> slabs;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Scalar& l = xs[i - 1];
    const Scalar& r = xs[i];
    std::vector<std::pair<Scalar, Scalar>> ys;
    for (const auto& s : segs)
      if (s.x0 <= l && r <= s.x1) ys.emplace_back(detail::y_at(s, l), detail::y_at(s, r));
    std::sort(ys.begin(), ys.end(), [](const auto& p, const auto& q) {
      return p.first + p.second < q.first + q.second;
    });
    ys.erase(std::unique(ys.begin(), ys.end(),
                         [](const auto& p, const auto& q) { return p.first == q.first && p.second == q.second; }),
             ys.end());
    std::vector<Piece> pieces;
    for (std::size_t k = 1; k < ys.size(); ++k) {
      Scalar area = (r - l) * (ys[k].first - ys[k - 1].first + ys[k].second - ys[k - 1].second) * half;
      pieces.push_back({ys[k - 1].first, ys[k].first, ys[k - 1].second, ys[k].second, area});
    }
    slabs.push_back(std::move(pieces));
  }

  std::vector<std::size_t> offset{0};
  for (const auto& s : slabs) offset.push_back(offset.back() + s.size());
  detail::Dsu dsu{std::vector<std::size_t>(offset.back())};
  std::iota(dsu.p.begin(), dsu.p.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < slabs.size(); ++i) {
    for (std::size_t a = 0; a < slabs[i].size(); ++a) {
      for (std::size_t b = 0; b < slabs[i + 1].size(); ++b) {
        const Piece& p = slabs[i][a];
        const Piece& q = slabs[i + 1][b];
        if (billiard::max(p.lo_r, q.lo_l) < billiard::min(p.hi_r, q.hi_l)) dsu.join(offset[i] + a, offset[i + 1] + b);
      }
    }
  }
  std::vector<Scalar> sum(offset.back());
  std::vector<bool> root(offset.back(), false);
  for (std::size_t i = 0; i < slabs.size(); ++i) {
    for (std::size_t a = 0; a < slabs[i].size(); ++a) {
      std::size_t r = dsu.find(offset[i] + a);
      sum[r] += slabs[i][a].area;
      root[r] = true;
    }
  }
  Reference ref;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (!root[i]) continue;
    ++ref.faces;
    ref.areas.push_back(sum[i]);
  }
  std::sort(ref.areas.begin(), ref.areas.end(), billiard::ScalarLess{});
  return ref;
}

/// Faces counted by flood-filling an R x R pixel grid over the square. A pixel
/// is wall when any segment meets its closed box; walls therefore also block
/// diagonal steps, so 8-connected fill cannot leak between faces.
inline std::size_t raster_face_count(const std::vector<Seg>& orbit, int R) {
  std::vector<std::uint8_t> wall(static_cast<std::size_t>(R) * R, 0);
  const double cell = 0.5 / R;
  const double eps = 1e-12;
  auto mark = [&](int cx, int cy) {
    if (cx >= 0 && cx < R && cy >= 0 && cy < R) wall[static_cast<std::size_t>(cy) * R + cx] = 1;
  };
  for (const auto& s : orbit) {
    double x0 = s.x0.to_double(), y0 = s.y0.to_double(), x1 = s.x1.to_double(), y1 = s.y1.to_double();
    int c0 = std::max(0, static_cast<int>((x0 - eps) / cell));
    int c1 = std::min(R - 1, static_cast<int>((x1 + eps) / cell));
    for (int c = c0; c <= c1; ++c) {
      double a = std::max(x0, c * cell), b = std::min(x1, (c + 1) * cell);
      if (a > b + eps) continue;
      double ya = y0 + (y1 - y0) * (a - x0) / (x1 - x0);
      double yb = y0 + (y1 - y0) * (b - x0) / (x1 - x0);
      double lo = std::min(ya, yb) - eps, hi = std::max(ya, yb) + eps;
      int r0 = std::max(0, static_cast<int>(lo / cell) - 1);
      int r1 = std::min(R - 1, static_cast<int>(hi / cell) + 1);
      for (int r = r0; r <= r1; ++r)
        if (r * cell <= hi && lo <= (r + 1) * cell) mark(c, r);
    }
  }
  std::vector<std::uint8_t> seen(wall.size(), 0);
  std::size_t count = 0;
  std::queue<int> q;
  for (int start = 0; start < R * R; ++start) {
    if (wall[start] || seen[start]) continue;
    ++count;
    seen[start] = 1;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      int cx = v % R, cy = v / R;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          int nx = cx + dx, ny = cy + dy;
          if (nx < 0 || nx >= R || ny < 0 || ny >= R) continue;
          int w = ny * R + nx;
          if (wall[w] || seen[w]) continue;
          seen[w] = 1;
          q.push(w);
        }
      }
    }
  }
  return count;
}

}  // namespace oracle
