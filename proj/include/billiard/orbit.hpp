#pragma once

// The truncated billiard orbit {(||x||, ||alpha x||) : 0 <= x <= M} in the
// square [0,1/2]^2, built by folding the halfline, and its description as the
// intersection of the square with two families of parallel lines
// l_k^+(x) = alpha x + y_k and l_k^-(x) = -alpha x + 1 - y_k, |k| <= N.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/gaps.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

struct Point {
  Scalar x;
  Scalar y;
};

inline bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }

struct PointLess {
  bool operator()(const Point& p, const Point& q) const {
    Ordering o = cmp(p.x, q.x);
    if (o != Ordering::Equal) return o == Ordering::Less;
    return p.y < q.y;
  }
};

struct Segment {
  Point from;
  Point to;
};

enum class BoundarySide { Left, Lower, Upper, Right };

inline const char* to_string(BoundarySide s) {
  switch (s) {
    case BoundarySide::Left: return "left";
    case BoundarySide::Lower: return "lower";
    case BoundarySide::Upper: return "upper";
    case BoundarySide::Right: return "right";
  }
  return "?";
}

/// Where the halfline of slope alpha is cut: after `squares` unit squares, or
/// at an explicit abscissa M whose image lies on the boundary of the square.
struct TruncationSpec {
  Scalar alpha;
  std::optional<long> squares;
  std::optional<Scalar> M;

  static TruncationSpec after_squares(Scalar alpha, long n) { return {std::move(alpha), n, std::nullopt}; }
  static TruncationSpec at(Scalar alpha, Scalar m) { return {std::move(alpha), std::nullopt, std::move(m)}; }
};

struct BilliardOrbit {
  Scalar alpha;
  Scalar M;
  std::vector<Segment> segments;
  Point start;
  Point end;
  BoundarySide side = BoundarySide::Left;
  /// Some interior breakpoint hit a corner of the square; the fold then
  /// retraces the path.
  bool through_corner = false;
};

/// Intercepts y_k for k = -N..N. Positive-slope lines have intercept y_k,
/// negative-slope lines 1 - y_k.
struct LineFamily {
  Scalar alpha;
  long N = 0;
  std::vector<Scalar> intercepts_pos;
  std::vector<Scalar> intercepts_neg;

  const Scalar& y(long k) const { return intercepts_pos.at(static_cast<std::size_t>(k + N)); }
};

namespace detail {

inline Scalar half_like(const Scalar& v) { return constant_like(v, mpq_class(1, 2)); }
inline Scalar one_like(const Scalar& v) { return constant_like(v, 1); }
inline Scalar zero_like(const Scalar& v) { return constant_like(v, 0); }
inline Scalar int_like(const Scalar& v, long n) { return constant_like(v, n); }

inline bool is_zero_or_half(const Scalar& v) {
  return v.sign() == 0 || v == half_like(v);
}

}  // namespace detail

/// The abscissa where the halfline (x, alpha x) leaves the N-th unit square it
/// traverses: the N-th smallest element of {1, 2, ...} u {1/alpha, 2/alpha, ...}.
inline Scalar grid_crossing_M(const Scalar& alpha, long N) {
  if (alpha.sign() <= 0) throw DomainError("slope must be positive");
  if (N < 1) throw DomainError("number of squares must be positive");
  long m = 1;
  long k = 1;
  Scalar last;
  for (long i = 0; i < N; ++i) {
    Scalar vertical = detail::int_like(alpha, m);
    Scalar horizontal = detail::int_like(alpha, k) / alpha;
    switch (cmp(vertical, horizontal)) {
      case Ordering::Less:
        last = vertical;
        ++m;
        break;
      case Ordering::Greater:
        last = horizontal;
        ++k;
        break;
      case Ordering::Equal:
        throw DegenerateCrossing("halfline passes through lattice corner at x = " + vertical.to_string());
    }
  }
  return last;
}

inline Scalar resolve_M(const TruncationSpec& spec) {
  if (spec.M) {
    const Scalar& m = *spec.M;
    if (m.sign() <= 0) throw InvalidTruncation("M must be positive");
    if (!detail::is_zero_or_half(nearest_int_dist(m)) &&
        !detail::is_zero_or_half(nearest_int_dist(spec.alpha * m)))
      throw InvalidTruncation("orbit endpoint at M = " + m.to_string() +
                              " is not on the boundary of the square");
    return m;
  }
  if (!spec.squares) throw InvalidTruncation("truncation needs a square count or an abscissa");
  return grid_crossing_M(spec.alpha, *spec.squares);
}

inline Point fold_point(const Scalar& alpha, const Scalar& x) {
  return {nearest_int_dist(x), nearest_int_dist(alpha * x)};
}

inline BoundarySide boundary_side_of(const Point& p) {
  if (p.x.sign() == 0) return BoundarySide::Left;
  if (p.y.sign() == 0) return BoundarySide::Lower;
  if (p.x == detail::half_like(p.x)) return BoundarySide::Right;
  return BoundarySide::Upper;
}

/// Abscissae in (0, M) where x or alpha x crosses a multiple of 1/2, merged and
/// deduplicated, framed by 0 and M.
inline std::vector<Scalar> fold_breakpoints(const Scalar& alpha, const Scalar& M) {
  std::vector<Scalar> a;
  std::vector<Scalar> b;
  Scalar half = detail::half_like(alpha);
  for (long j = 1;; ++j) {
    Scalar x = detail::int_like(alpha, j) * half;
    if (!(x < M)) break;
    a.push_back(std::move(x));
  }
  Scalar step = half / alpha;
  for (long j = 1;; ++j) {
    Scalar x = detail::int_like(alpha, j) * step;
    if (!(x < M)) break;
    b.push_back(std::move(x));
  }
  std::vector<Scalar> out{detail::zero_like(alpha)};
  std::size_t i = 0, k = 0;
  while (i < a.size() || k < b.size()) {
    if (k == b.size() || (i < a.size() && a[i] < b[k])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[k] < a[i]) {
      out.push_back(b[k++]);
    } else {
      out.push_back(a[i++]);
      ++k;
    }
  }
  out.push_back(M);
  return out;
}

/// Folds the halfline (x, alpha x), 0 <= x <= M, into [0,1/2]^2.
inline BilliardOrbit fold_orbit(const TruncationSpec& spec) {
  if (spec.alpha.sign() <= 0) throw DomainError("slope must be positive");
  Scalar M = resolve_M(spec);
  const Scalar& alpha = spec.alpha;
  std::vector<Scalar> xs = fold_breakpoints(alpha, M);
  BilliardOrbit orbit;
  orbit.alpha = alpha;
  orbit.M = M;
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (const auto& x : xs) pts.push_back(fold_point(alpha, x));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    orbit.segments.push_back({pts[i - 1], pts[i]});
    if (i + 1 < pts.size() && detail::is_zero_or_half(pts[i].x) && detail::is_zero_or_half(pts[i].y))
      orbit.through_corner = true;
  }
  orbit.start = pts.front();
  orbit.end = pts.back();
  orbit.side = boundary_side_of(orbit.end);
  return orbit;
}

/// How the intercept recursion treats y_k == 1 - alpha, which happens only
/// when a rational slope passes through a lattice corner.
enum class CornerPolicy { Reject, FollowClosedForm };

/// y_1 = 0, y_{k+1} = y_k + alpha if y_k < 1 - alpha, y_k - 1 if y_k > 1 - alpha.
/// Returns y_1..y_N.
inline std::vector<Scalar> intercepts_recursive(const Scalar& alpha, long N,
                                                CornerPolicy policy = CornerPolicy::Reject) {
  require_unit_rotation(alpha);
  if (N < 1) throw DomainError("N must be positive");
  const Scalar one = detail::one_like(alpha);
  const Scalar threshold = one - alpha;
  std::vector<Scalar> ys{detail::zero_like(alpha)};
  ys.reserve(static_cast<std::size_t>(N));
  while (static_cast<long>(ys.size()) < N) {
    const Scalar& y = ys.back();
    switch (cmp(y, threshold)) {
      case Ordering::Less:
        ys.push_back(y + alpha);
        break;
      case Ordering::Greater:
        ys.push_back(y - one);
        break;
      case Ordering::Equal:
        if (policy == CornerPolicy::Reject)
          throw RecursionDegenerate("intercept y_" + std::to_string(ys.size()) + " equals 1 - alpha");
        ys.push_back(y - one);
        break;
    }
  }
  return ys;
}

/// y_k = (1 + alpha) {k alpha / (1 + alpha)} - alpha.
inline Scalar intercepts_closed_form(const Scalar& alpha, long k) {
  Scalar one_plus = detail::one_like(alpha) + alpha;
  return one_plus * frac(detail::int_like(alpha, k) * alpha / one_plus) - alpha;
}

/// Intercepts for |k| <= N, cross-checked three ways: recursion against closed
/// form for k >= 1, the mirror relation y_{-k} = 1 - alpha - y_k, and y_0 = -alpha.
inline LineFamily build_line_family(const Scalar& alpha, long N) {
  require_unit_rotation(alpha);
  if (N < 1) throw DomainError("N must be positive");
  const bool rational = alpha.is_rational();
  std::vector<Scalar> rec =
      intercepts_recursive(alpha, N, rational ? CornerPolicy::FollowClosedForm : CornerPolicy::Reject);
  LineFamily fam{alpha, N, {}, {}};
  const Scalar one = detail::one_like(alpha);
  for (long k = -N; k <= N; ++k) fam.intercepts_pos.push_back(intercepts_closed_form(alpha, k));
  for (long k = 1; k <= N; ++k) {
    if (!(rec[static_cast<std::size_t>(k - 1)] == fam.y(k)))
      throw TheoremViolation("recursive and closed-form intercepts differ at k = " + std::to_string(k));
    // For rational slopes {k alpha/(1+alpha)} may vanish; then y_k = -alpha and
    // its mirror is the other end of [-alpha, 1].
    bool wraps = rational && fam.y(k) == -alpha;
    if (!wraps && !(fam.y(-k) == one - alpha - fam.y(k)))
      throw TheoremViolation("mirror relation fails at k = " + std::to_string(k));
  }
  if (!(fam.y(0) == -alpha)) throw TheoremViolation("y_0 != -alpha");
  for (const auto& y : fam.intercepts_pos) {
    if (y < -alpha || y > one) throw TheoremViolation("intercept " + y.to_string() + " outside [-alpha, 1]");
    fam.intercepts_neg.push_back(one - y);
  }
  return fam;
}

/// The positive-slope intercepts as a rotation orbit on [-alpha, 1], in
/// generation order k = -N..N.
inline RotationOrbit intercept_orbit(const LineFamily& fam) {
  const Scalar one = detail::one_like(fam.alpha);
  RotationOrbit o{fam.intercepts_pos, -fam.alpha, one + fam.alpha, fam.alpha / (one + fam.alpha), -fam.N, fam.N};
  return o;
}

/// Negative-slope intercepts 1 - y_k on [0, 1 + alpha].
inline RotationOrbit mirrored_intercept_orbit(const LineFamily& fam) {
  const Scalar one = detail::one_like(fam.alpha);
  RotationOrbit o{fam.intercepts_neg, detail::zero_like(fam.alpha), one + fam.alpha,
                  fam.alpha / (one + fam.alpha), -fam.N, fam.N};
  return o;
}

/// A line y = slope * alpha * x + intercept (slope is +1 or -1).
struct LineKey {
  int slope = 1;
  Scalar intercept;
};

/// Part of a line of slope +-alpha inside [0,1/2]^2, as an x-interval.
struct Chord {
  int slope = 1;
  Scalar intercept;
  Scalar x_lo;
  Scalar x_hi;
};

inline std::optional<Chord> clip_to_square(const Scalar& alpha, int slope, const Scalar& c) {
  const Scalar zero = detail::zero_like(alpha);
  const Scalar half = detail::half_like(alpha);
  // 0 <= slope*alpha*x + c <= 1/2
  Scalar a = (zero - c) / alpha;
  Scalar b = (half - c) / alpha;
  if (slope < 0) {
    a = -a;
    b = -b;
  }
  Scalar lo = max(zero, min(a, b));
  Scalar hi = min(half, max(a, b));
  if (!(lo < hi)) return std::nullopt;
  return Chord{slope, c, lo, hi};
}

/// Slope sign and intercept of a folded segment; throws if the slope is not
/// +-alpha.
inline LineKey line_of(const Scalar& alpha, const Segment& s) {
  Scalar dx = s.to.x - s.from.x;
  Scalar dy = s.to.y - s.from.y;
  if (dx.sign() == 0) throw TheoremViolation("vertical orbit segment");
  int slope = dx.sign() * dy.sign();
  if (slope == 0 || !(dy == (slope > 0 ? alpha : -alpha) * dx))
    throw TheoremViolation("orbit segment slope is not +-alpha");
  return {slope, s.from.y - (slope > 0 ? alpha : -alpha) * s.from.x};
}

struct LinesReport {
  std::size_t segments = 0;
  std::size_t chords = 0;  // family lines meeting the square in a segment
  std::size_t points_sampled = 0;
};

namespace detail {

inline bool on_segment(const Scalar& alpha, const Segment& s, const Point& p) {
  LineKey key = line_of(alpha, s);
  Scalar expect = (key.slope > 0 ? alpha : -alpha) * p.x + key.intercept;
  if (!(expect == p.y)) return false;
  const Scalar& a = s.from.x;
  const Scalar& b = s.to.x;
  return min(a, b) <= p.x && p.x <= max(a, b);
}

}  // namespace detail

/// Checks that the folded orbit after N squares coincides with the square
/// intersected with the 2(2N+1) lines l_k^+-. Every folded segment must lie on
/// a family line, and every family chord must be covered by folded segments on
/// the same line (checked by interval union, and by sampling the chord's ends
/// and midpoint). The four corner sets A^{++}, A^{--}, A^{-+}, A^{+-} must
/// reproduce the family apart from the two k = 0 lines, which miss the square.
inline LinesReport verify_orbit_equals_lines(const Scalar& alpha, long N) {
  if (!alpha.is_exact()) throw DomainError("line equivalence needs an exact slope");
  LineFamily fam = build_line_family(alpha, N);
  BilliardOrbit orbit = fold_orbit(TruncationSpec::after_squares(alpha, N));
  LinesReport report;
  report.segments = orbit.segments.size();

  std::set<Scalar, ScalarLess> pos(fam.intercepts_pos.begin(), fam.intercepts_pos.end());
  std::set<Scalar, ScalarLess> neg(fam.intercepts_neg.begin(), fam.intercepts_neg.end());

  // Four-corner construction, k = 1..N.
  const Scalar one = detail::one_like(alpha);
  std::set<Scalar, ScalarLess> corner_pos, corner_neg;
  for (long k = 1; k <= N; ++k) {
    corner_pos.insert(fam.y(k));        // A^{++}
    corner_pos.insert(fam.y(-k));       // A^{--}
    corner_neg.insert(one - fam.y(-k));  // A^{-+}
    corner_neg.insert(one - fam.y(k));   // A^{+-}
  }
  if (clip_to_square(alpha, 1, fam.y(0)) || clip_to_square(alpha, -1, one - fam.y(0)))
    throw TheoremViolation("the k = 0 lines meet the square");
  for (const auto& c : corner_pos)
    if (!pos.count(c)) throw TheoremViolation("corner construction adds a positive line");
  for (const auto& c : corner_neg)
    if (!neg.count(c)) throw TheoremViolation("corner construction adds a negative line");
  for (long k = -N; k <= N; ++k) {
    if (k == 0) continue;
    if (!corner_pos.count(fam.y(k)) || !corner_neg.count(one - fam.y(k)))
      throw TheoremViolation("corner construction misses line k = " + std::to_string(k));
  }

  std::vector<std::pair<LineKey, Segment>> keyed;
  for (const auto& s : orbit.segments) {
    LineKey key = line_of(alpha, s);
    if (!(key.slope > 0 ? pos : neg).count(key.intercept))
      throw TheoremViolation("folded segment on a line outside the family, intercept " +
                             key.intercept.to_string());
    keyed.emplace_back(key, s);
  }

  auto check_chord = [&](int slope, const Scalar& c) {
    auto chord = clip_to_square(alpha, slope, c);
    if (!chord) return;
    ++report.chords;
    const Scalar sa = slope > 0 ? alpha : -alpha;
    std::vector<std::pair<Scalar, Scalar>> spans;
    for (const auto& [key, s] : keyed)
      if (key.slope == slope && key.intercept == c)
        spans.emplace_back(min(s.from.x, s.to.x), max(s.from.x, s.to.x));
    std::sort(spans.begin(), spans.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    Scalar reach = chord->x_lo;
    for (const auto& [lo, hi] : spans) {
      if (lo > reach) break;
      reach = max(reach, hi);
    }
    if (reach < chord->x_hi)
      throw TheoremViolation("chord of line with intercept " + c.to_string() + " not covered by the orbit");
    const Scalar half = detail::half_like(alpha);
    for (const Scalar& x : {chord->x_lo, chord->x_hi, (chord->x_lo + chord->x_hi) * half}) {
      Point p{x, sa * x + c};
      ++report.points_sampled;
      bool hit = std::any_of(orbit.segments.begin(), orbit.segments.end(),
                             [&](const Segment& s) { return detail::on_segment(alpha, s, p); });
      if (!hit) throw TheoremViolation("sample point on a family chord is not on the orbit");
    }
  };
  for (const auto& c : fam.intercepts_pos) check_chord(1, c);
  for (const auto& c : fam.intercepts_neg) check_chord(-1, c);
  return report;
}

}  // namespace billiard
