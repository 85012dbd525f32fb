#pragma once

// SVG views of orbits, partitions and the constructions behind them. One unit
// of length is 1000 user units and the y axis points up. Rendering reads
// finished analyses and never feeds back into them.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "billiard/arrangement.hpp"
#include "billiard/census.hpp"
#include "billiard/gaps.hpp"
#include "billiard/orbit.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

/// Accumulates SVG elements over the world rectangle [x0,x1] x [y0,y1].
class SvgCanvas {
 public:
  static constexpr double kUnit = 1000.0;

  SvgCanvas(double x0, double y0, double x1, double y1, int precision = 3)
      : x0_(x0), y0_(y0), x1_(x1), y1_(y1), precision_(precision) {}

  double sx(double x) const { return kMargin + (x - x0_) * kUnit; }
  double sy(double y) const { return kMargin + (y1_ - y) * kUnit; }

  std::string num(double v) const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", precision_, v);
    return buf;
  }

  void line(double ax, double ay, double bx, double by, const std::string& style) {
    body_ << "<line x1=\"" << num(sx(ax)) << "\" y1=\"" << num(sy(ay)) << "\" x2=\"" << num(sx(bx)) << "\" y2=\""
          << num(sy(by)) << "\" " << style << "/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      body_ << (i ? " " : "") << num(sx(pts[i].first)) << "," << num(sy(pts[i].second));
    body_ << "\" " << style << "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    body_ << "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      body_ << (i ? " " : "") << num(sx(pts[i].first)) << "," << num(sy(pts[i].second));
    body_ << "\" fill=\"none\" " << style << "/>\n";
  }

  void circle(double x, double y, double r_px, const std::string& style) {
    body_ << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"" << num(r_px) << "\" " << style
          << "/>\n";
  }

  void text(double x, double y, const std::string& s, const std::string& style = "font-size=\"14\"") {
    body_ << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(sy(y)) << "\" " << style << ">" << escape(s)
          << "</text>\n";
  }

  void rect(double ax, double ay, double bx, double by, const std::string& style) {
    body_ << "<rect x=\"" << num(sx(ax)) << "\" y=\"" << num(sy(by)) << "\" width=\"" << num((bx - ax) * kUnit)
          << "\" height=\"" << num((by - ay) * kUnit) << "\" " << style << "/>\n";
  }

  std::string document(const std::string& title) const {
    double w = (x1_ - x0_) * kUnit + 2 * kMargin;
    double h = (y1_ - y0_) * kUnit + 2 * kMargin;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n"
        << "<title>" << escape(title) << "</title>\n"
        << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" "
           "markerHeight=\"8\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/>"
           "</marker></defs>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
      }
    }
    return out;
  }

 private:
  static constexpr double kMargin = 20.0;
  double x0_, y0_, x1_, y1_;
  int precision_;
  std::ostringstream body_;
};

/// Fill colour for area class k of n, spread around the hue circle.
inline std::string class_colour(std::size_t k, std::size_t n) {
  double hue = n == 0 ? 0.0 : 360.0 * static_cast<double>(k) / static_cast<double>(n);
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.0f,65%%,70%%)", hue);
  return buf;
}

namespace detail {

inline std::pair<double, double> to_d(const Point& p) { return {p.x.to_double(), p.y.to_double()}; }

inline void draw_square_frame(SvgCanvas& c, double side) {
  c.rect(0, 0, side, side, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
}

inline void draw_orbit(SvgCanvas& c, const BilliardOrbit& o, bool arrows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : o.segments) {
    if (pts.empty()) pts.push_back(to_d(s.from));
    pts.push_back(to_d(s.to));
  }
  c.polyline(pts, "stroke=\"black\" stroke-width=\"1.5\"");
  if (!arrows || o.segments.empty()) return;
  auto arrow_style = "stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#arrow)\"";
  const auto& first = o.segments.front();
  auto a = to_d(first.from);
  auto b = to_d(first.to);
  double f = 0.15;
  c.line(a.first, a.second, a.first + f * (b.first - a.first), a.second + f * (b.second - a.second), arrow_style);
  const auto& last = o.segments.back();
  a = to_d(last.from);
  b = to_d(last.to);
  c.line(b.first - f * (b.first - a.first), b.second - f * (b.second - a.second), b.first, b.second, arrow_style);
}

}  // namespace detail

/// Partition of [0,1/2]^2 with faces filled by area class.
inline std::string render_partition(const Analysis& a, bool colour = true, int precision = 3) {
  SvgCanvas c(0, 0, 0.5, 0.5, precision);
  const Census& census = a.census;
  for (const auto& r : census.faces) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : a.subdivision.faces[r.face].polygon) pts.push_back(detail::to_d(p));
    std::string fill = colour ? class_colour(r.area_class, census.areas.size()) : std::string("white");
    c.polygon(pts, "fill=\"" + fill + "\" stroke=\"black\" stroke-width=\"1\"");
  }
  detail::draw_square_frame(c, 0.5);
  return c.document("partition for slope " + a.alpha.to_string() + ", " + std::to_string(census.distinct_areas) +
                    " areas, " + std::to_string(census.distinct_shapes) + " shapes");
}

/// Truncated orbit in [0,1/2]^2 with arrows at its start and end.
inline std::string render_orbit(const BilliardOrbit& o, int precision = 3) {
  SvgCanvas c(0, 0, 0.5, 0.5, precision);
  detail::draw_square_frame(c, 0.5);
  detail::draw_orbit(c, o, true);
  return c.document("truncated orbit for slope " + o.alpha.to_string());
}

/// A ball bouncing on [0,1/2] with step alpha: position ||k alpha|| against
/// time k (downwards), landing points marked on the interval at the top.
inline std::string render_bouncing(const Scalar& alpha, long n, int precision = 3) {
  RotationOrbit o = four_gap_points(alpha, n);
  const double dt = 1.0 / static_cast<double>(n + 2);
  SvgCanvas c(0, 0, 0.5, 1.0 + dt, precision);
  c.line(0, 1.0 + dt, 0.5, 1.0 + dt, "stroke=\"black\" stroke-width=\"3\"");
  c.line(0, 0, 0, 1.0 + dt, "stroke=\"gray\" stroke-width=\"2\"");
  c.line(0.5, 0, 0.5, 1.0 + dt, "stroke=\"gray\" stroke-width=\"2\"");
  std::vector<std::pair<double, double>> path;
  // Unfold between consecutive landings so the path shows the reflections.
  for (long k = 0; k <= n; ++k) {
    double t = 1.0 - static_cast<double>(k) * dt;
    path.emplace_back(o.points[static_cast<std::size_t>(k)].to_double(), t);
    if (k < n) {
      double raw0 = static_cast<double>(k) * alpha.to_double();
      double raw1 = raw0 + alpha.to_double();
      for (double h = std::floor(2 * raw0) + 1; h < 2 * raw1; h += 1) {
        double frac_t = (h / 2 - raw0) / (raw1 - raw0);
        double wall = std::fmod(h, 2.0) == 0.0 ? 0.0 : 0.5;
        path.emplace_back(wall, t - frac_t * dt);
      }
    }
  }
  c.polyline(path, "stroke=\"black\" stroke-width=\"1\"");
  for (const auto& p : o.points) c.circle(p.to_double(), 1.0 + dt, 4, "fill=\"red\"");
  return c.document("bouncing ball, step " + alpha.to_string() + ", " + std::to_string(n) + " bounces");
}

namespace detail {

// Pieces of (x, alpha x), 0 <= x <= M, reduced mod 1 in both coordinates.
inline std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> torus_pieces(const Scalar& alpha,
                                                                                              const Scalar& M) {
  std::vector<Scalar> xs{constant_like(alpha, 0)};
  long m = 1, k = 1;
  for (;;) {
    Scalar v = constant_like(alpha, m);
    Scalar h = constant_like(alpha, k) / alpha;
    const Scalar& next = v < h ? v : h;
    if (!(next < M)) break;
    if (!(xs.back() == next)) xs.push_back(next);
    if (v < h) {
      ++m;
    } else if (h < v) {
      ++k;
    } else {
      ++m;
      ++k;
    }
  }
  xs.push_back(M);
  std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> out;
  const Scalar half = constant_like(alpha, mpq_class(1, 2));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Scalar mid = (xs[i - 1] + xs[i]) * half;
    double fx = mid.floor().get_d();
    double fy = (alpha * mid).floor().get_d();
    double ax = xs[i - 1].to_double(), bx = xs[i].to_double(), a = alpha.to_double();
    out.push_back({{ax - fx, a * ax - fy}, {bx - fx, a * bx - fy}});
  }
  return out;
}

}  // namespace detail

/// Three panels: the halfline on the torus after N squares, the four corner
/// versions of it, and the family lines clipped to [0,1/2]^2 (the orbit).
inline std::string render_construction(const Scalar& alpha, long N, int precision = 3) {
  const double gap = 0.1;
  SvgCanvas c(0, 0, 3.0 + 2 * gap, 1.0, precision);
  Scalar M = grid_crossing_M(alpha, N);
  auto pieces = detail::torus_pieces(alpha, M);
  const std::string stroke = "stroke=\"black\" stroke-width=\"1.5\"";
  auto frame = [&](double ox) { c.rect(ox, 0, ox + 1, 1, "fill=\"none\" stroke=\"black\" stroke-width=\"2\""); };

  frame(0);
  for (const auto& [p, q] : pieces) c.line(p.first, p.second, q.first, q.second, stroke);

  const double o2 = 1 + gap;
  frame(o2);
  const char* colours[4] = {"black", "red", "blue", "green"};
  for (int corner = 0; corner < 4; ++corner) {
    bool fx = corner & 1, fy = corner & 2;
    std::string st = std::string("stroke=\"") + colours[corner] + "\" stroke-width=\"1.2\"";
    for (const auto& [p, q] : pieces) {
      auto map = [&](std::pair<double, double> v) {
        return std::pair<double, double>{o2 + (fx ? 1 - v.first : v.first), fy ? 1 - v.second : v.second};
      };
      auto a = map(p), b = map(q);
      c.line(a.first, a.second, b.first, b.second, st);
    }
  }
  c.rect(o2, 0, o2 + 0.5, 0.5, "fill=\"none\" stroke=\"gray\" stroke-width=\"2\" stroke-dasharray=\"8,6\"");

  const double o3 = 2 * (1 + gap);
  BilliardOrbit orbit = fold_orbit(TruncationSpec::at(alpha, M));
  c.rect(o3, 0, o3 + 1, 1, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
  for (const auto& s : orbit.segments) {
    auto a = detail::to_d(s.from), b = detail::to_d(s.to);
    // The right panel magnifies [0,1/2]^2 to the full frame.
    c.line(o3 + 2 * a.first, 2 * a.second, o3 + 2 * b.first, 2 * b.second, stroke);
  }
  return c.document("construction of the orbit, slope " + alpha.to_string() + ", N = " + std::to_string(N));
}

/// The unit squares S_1..S_N traversed by the halfline (x, alpha x) up to M.
inline std::string render_squares(const Scalar& alpha, long N, int precision = 3) {
  Scalar M = grid_crossing_M(alpha, N);
  double Md = M.to_double();
  double top = std::ceil(alpha.to_double() * Md);
  SvgCanvas c(0, 0, std::ceil(Md), top, precision);
  long m = 0, k = 0;  // lower-left corner of the current square
  const double a = alpha.to_double();
  for (long i = 0; i < N; ++i) {
    c.rect(static_cast<double>(m), static_cast<double>(k), static_cast<double>(m + 1), static_cast<double>(k + 1),
           "fill=\"#eef\" stroke=\"black\" stroke-width=\"2\"");
    c.text(m + 0.05, k + 0.85, "S" + std::to_string(i + 1), "font-size=\"60\"");
    Scalar vx = constant_like(alpha, m + 1);
    Scalar hx = constant_like(alpha, k + 1) / alpha;
    if (vx < hx) {
      ++m;
    } else {
      ++k;
    }
  }
  c.line(0, 0, Md, a * Md, "stroke=\"red\" stroke-width=\"3\"");
  c.text(Md, a * Md, "M = " + M.to_string(), "font-size=\"40\"");
  return c.document("squares traversed, slope " + alpha.to_string() + ", N = " + std::to_string(N));
}

}  // namespace billiard
