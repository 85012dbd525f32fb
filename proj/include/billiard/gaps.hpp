#pragma once

// Rotation orbits on intervals and the lengths of the gaps they leave:
// three-gap ({k*alpha}), four-gap (||k*alpha||) and the one-point extension
// bound used when an orbit grows or shrinks by a single element.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

/// Finite orbit on [base, base + length]. `points` are stored in generation
/// order, so points.back() is the most recently added element.
struct RotationOrbit {
  std::vector<Scalar> points;
  Scalar base;
  Scalar length;
  Scalar alpha;
  long lo = 0;
  long hi = 0;
};

/// Distinct gap lengths, largest first, with their multiplicities.
struct GapSet {
  std::vector<Scalar> lengths;
  std::vector<std::size_t> multiplicities;

  std::size_t size() const { return lengths.size(); }
  bool contains(const Scalar& x) const {
    return std::any_of(lengths.begin(), lengths.end(), [&](const Scalar& l) { return l == x; });
  }
};

/// Same length values, ignoring multiplicities.
inline bool same_lengths(const GapSet& a, const GapSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a.lengths[i] == b.lengths[i])) return false;
  return true;
}

/// Union of the length sets, largest first.
inline std::vector<Scalar> length_union(const GapSet& a, const GapSet& b) {
  std::vector<Scalar> out = a.lengths;
  for (const auto& l : b.lengths)
    if (!a.contains(l)) out.push_back(l);
  std::sort(out.begin(), out.end(), [](const Scalar& x, const Scalar& y) { return y < x; });
  return out;
}

/// length * T_alpha^k(0) + base for k in [lo, hi], with T_alpha(x) = {x + alpha}.
inline RotationOrbit rotation_orbit(const Scalar& alpha, const Scalar& base, const Scalar& length,
                                    long lo, long hi) {
  RotationOrbit orbit{{}, base, length, alpha, lo, hi};
  orbit.points.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) orbit.points.push_back(length * frac(constant_like(alpha, k) * alpha) + base);
  return orbit;
}

inline void require_unit_rotation(const Scalar& alpha) {
  if (alpha.sign() <= 0 || !(alpha < constant_like(alpha, 1)))
    throw DomainError("rotation amount must lie in (0,1), got " + alpha.to_string());
}

/// The n+1 points {k*alpha}, k = 0..n, on [0,1].
inline RotationOrbit three_gap_points(const Scalar& alpha, long n) {
  require_unit_rotation(alpha);
  if (n < 1) throw DomainError("n must be positive");
  return rotation_orbit(alpha, constant_like(alpha, 0), constant_like(alpha, 1), 0, n);
}

/// Landing points ||k*alpha||, k = 0..n, of a ball bouncing on [0, 1/2].
inline RotationOrbit four_gap_points(const Scalar& alpha, long n) {
  if (alpha.sign() <= 0) throw DomainError("bouncing distance must be positive");
  if (n < 1) throw DomainError("n must be positive");
  RotationOrbit orbit{{}, constant_like(alpha, 0), constant_like(alpha, mpq_class(1, 2)), alpha, 0, n};
  for (long k = 0; k <= n; ++k) orbit.points.push_back(nearest_int_dist(constant_like(alpha, k) * alpha));
  return orbit;
}

namespace detail {

inline GapSet census_of_sorted(const std::vector<Scalar>& sorted) {
  std::vector<Scalar> diffs;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    Scalar d = sorted[i] - sorted[i - 1];
    if (d.sign() != 0) diffs.push_back(std::move(d));
  }
  std::sort(diffs.begin(), diffs.end(), [](const Scalar& x, const Scalar& y) { return y < x; });
  GapSet out;
  for (auto& d : diffs) {
    if (!out.lengths.empty() && out.lengths.back() == d) {
      ++out.multiplicities.back();
    } else {
      out.lengths.push_back(std::move(d));
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

}  // namespace detail

/// Partition of the orbit's interval by its points; the interval endpoints
/// always count as boundaries and coincident points leave no zero gap.
inline GapSet gap_census(const RotationOrbit& orbit) {
  std::vector<Scalar> pts = orbit.points;
  pts.push_back(orbit.base);
  pts.push_back(orbit.base + orbit.length);
  std::sort(pts.begin(), pts.end(), ScalarLess{});
  return detail::census_of_sorted(pts);
}

/// Maintains the gap census of a growing point set on a fixed interval in
/// O(log n) per insertion.
class GapTracker {
 public:
  GapTracker(const Scalar& lo, const Scalar& hi) {
    points_.insert(lo);
    points_.insert(hi);
    if (hi > lo) gaps_[hi - lo] = 1;
  }

  void insert(const Scalar& x) {
    auto [it, fresh] = points_.insert(x);
    if (!fresh) return;
    if (it == points_.begin() || std::next(it) == points_.end())
      throw DomainError("point " + x.to_string() + " outside tracked interval");
    const Scalar& left = *std::prev(it);
    const Scalar& right = *std::next(it);
    drop(right - left);
    ++gaps_[x - left];
    ++gaps_[right - x];
  }

  std::size_t distinct() const { return gaps_.size(); }

  GapSet census() const {
    GapSet out;
    for (auto it = gaps_.rbegin(); it != gaps_.rend(); ++it) {
      out.lengths.push_back(it->first);
      out.multiplicities.push_back(it->second);
    }
    return out;
  }

 private:
  void drop(const Scalar& len) {
    auto it = gaps_.find(len);
    if (it == gaps_.end()) throw TheoremViolation("gap tracker lost a length");
    if (--it->second == 0) gaps_.erase(it);
  }

  std::set<Scalar, ScalarLess> points_;
  std::map<Scalar, std::size_t, ScalarLess> gaps_;
};

struct ThreeGapReport {
  GapSet gaps;
  bool sum_identity = false;  // largest == middle + smallest was checked
};

inline void check_three_gap(const GapSet& gaps, const std::string& where) {
  if (gaps.size() > 3)
    throw TheoremViolation(where + ": " + std::to_string(gaps.size()) + " distinct gap lengths");
  if (gaps.size() == 3 && !(gaps.lengths[0] == gaps.lengths[1] + gaps.lengths[2]))
    throw TheoremViolation(where + ": largest gap " + gaps.lengths[0].to_string() +
                           " is not the sum of the other two");
}

inline ThreeGapReport verify_three_gap(const Scalar& alpha, long n) {
  ThreeGapReport r{gap_census(three_gap_points(alpha, n))};
  check_three_gap(r.gaps, "three-gap alpha=" + alpha.to_string() + " n=" + std::to_string(n));
  r.sum_identity = r.gaps.size() == 3;
  return r;
}

struct ExtensionReport {
  GapSet full;
  GapSet shortened;
  std::vector<Scalar> union_lengths;
};

/// Compares the partition of an orbit with the one obtained by dropping its
/// last generated point; the two length sets together hold at most three.
inline ExtensionReport verify_extension_property(const RotationOrbit& orbit) {
  if (orbit.points.size() < 2) throw DomainError("orbit needs at least two points");
  RotationOrbit shorter = orbit;
  shorter.points.pop_back();
  --shorter.hi;
  ExtensionReport r{gap_census(orbit), gap_census(shorter), {}};
  r.union_lengths = length_union(r.full, r.shortened);
  if (r.union_lengths.size() > 3)
    throw TheoremViolation("one-point extension produced " + std::to_string(r.union_lengths.size()) +
                           " distinct lengths");
  return r;
}

}  // namespace billiard
