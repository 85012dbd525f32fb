#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/gaps.hpp"
#include "billiard/parse.hpp"

using namespace billiard;

namespace {

// Gap lengths by nearest right neighbour, O(n^2) in doubles: no sorting, no
// shared code with the census.
std::vector<double> neighbour_gaps(const std::vector<double>& pts, double lo, double hi) {
  std::vector<double> all = pts;
  all.push_back(lo);
  all.push_back(hi);
  std::vector<double> lens;
  for (double p : all) {
    double best = INFINITY;
    for (double r : all)
      if (r > p + 1e-13) best = std::min(best, r - p);
    if (std::isfinite(best)) lens.push_back(best);
  }
  std::sort(lens.begin(), lens.end(), std::greater<>());
  std::vector<double> distinct;
  for (double l : lens)
    if (distinct.empty() || distinct.back() - l > 1e-9) distinct.push_back(l);
  return distinct;
}

const char* kSlopes[] = {"sqrt(2)-1", "sqrt(10)/7", "(sqrt(5)-1)/2", "sqrt(3)/5", "(7-sqrt(13))/4", "sqrt(59)/9"};

}  // namespace

TEST(Gaps, ThreeGapAgreesWithNeighbourScan) {
  for (const char* s : kSlopes) {
    Scalar a = parse_alpha(s).value;
    for (long n : {1L, 2L, 5L, 17L, 60L, 200L}) {
      GapSet g = gap_census(three_gap_points(a, n));
      std::vector<double> pts;
      for (long k = 0; k <= n; ++k) {
        double x = k * a.to_double();
        pts.push_back(x - std::floor(x));
      }
      std::vector<double> ref = neighbour_gaps(pts, 0.0, 1.0);
      ASSERT_EQ(g.size(), ref.size()) << s << " n=" << n;
      for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(g.lengths[i].to_double(), ref[i], 1e-12);
      ASSERT_LE(g.size(), 3u);
      if (g.size() == 3) {
        EXPECT_EQ(g.lengths[0], g.lengths[1] + g.lengths[2]);
      }
      std::size_t total = 0;
      for (auto m : g.multiplicities) total += m;
      EXPECT_EQ(total, static_cast<std::size_t>(n + 1));
    }
  }
}

TEST(Gaps, FourGapAgreesWithNeighbourScan) {
  for (const char* s : kSlopes) {
    Scalar a = parse_alpha(s).value;
    for (long n : {3L, 16L, 99L}) {
      GapSet g = gap_census(four_gap_points(a, n));
      std::vector<double> pts;
      for (long k = 0; k <= n; ++k) {
        double x = k * a.to_double();
        pts.push_back(std::abs(x - std::round(x)));
      }
      std::vector<double> ref = neighbour_gaps(pts, 0.0, 0.5);
      ASSERT_EQ(g.size(), ref.size()) << s << " n=" << n;
      EXPECT_LE(g.size(), 4u);
    }
  }
}

TEST(Gaps, BouncingDistanceFromFigure) {
  GapSet g16 = gap_census(four_gap_points(Scalar::approx(0.1405), 16));
  EXPECT_EQ(g16.size(), 4u);
  GapSet g17 = gap_census(four_gap_points(Scalar::approx(0.1405), 17));
  EXPECT_LE(g17.size(), 4u);
}

TEST(Gaps, RationalRotationHasOneGap) {
  Scalar a = Scalar::rational(mpz_class(3), mpz_class(7));
  GapSet g = gap_census(three_gap_points(a, 20));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.lengths[0], Scalar::rational(mpz_class(1), mpz_class(7)));
}

TEST(Gaps, AffineRescalingScalesLengths) {
  Scalar a = parse_alpha("sqrt(10)/7").value;
  Scalar len = Scalar(1) + a;
  Scalar base = -a;
  GapSet unit = gap_census(rotation_orbit(a, Scalar(0), Scalar(1), -9, 9));
  GapSet scaled = gap_census(rotation_orbit(a, base, len, -9, 9));
  ASSERT_EQ(unit.size(), scaled.size());
  for (std::size_t i = 0; i < unit.size(); ++i) EXPECT_EQ(scaled.lengths[i], unit.lengths[i] * len);
  EXPECT_EQ(unit.multiplicities, scaled.multiplicities);
}

TEST(Gaps, TrackerMatchesBatchCensus) {
  Scalar a = parse_alpha("sqrt(2)-1").value;
  GapTracker t(Scalar(0), Scalar(1));
  Scalar x(0);
  for (long k = 1; k <= 300; ++k) {
    x += a;
    if (x >= Scalar(1)) x -= Scalar(1);
    t.insert(x);
    if (k % 37 == 0) {
      GapSet batch = gap_census(three_gap_points(a, k));
      GapSet inc = t.census();
      EXPECT_TRUE(same_lengths(batch, inc));
      EXPECT_EQ(batch.multiplicities, inc.multiplicities);
    }
  }
  EXPECT_THROW(t.insert(Scalar(2)), DomainError);
}

TEST(Gaps, OnePointExtensionKeepsThreeLengths) {
  Scalar a = parse_alpha("sqrt(3)/5").value;
  for (long n = 1; n <= 80; ++n) {
    ExtensionReport r = verify_extension_property(rotation_orbit(a, -a, Scalar(1) + a, -n, n + 1));
    EXPECT_LE(r.union_lengths.size(), 3u);
  }
}

TEST(Gaps, SumIdentityReported) {
  ThreeGapReport r = verify_three_gap(parse_alpha("sqrt(10)/7").value, 11);
  EXPECT_EQ(r.sum_identity, r.gaps.size() == 3);
}

TEST(Gaps, DomainChecks) {
  EXPECT_THROW(three_gap_points(Scalar(2), 5), DomainError);
  EXPECT_THROW(three_gap_points(Scalar::sqrt_of(2) - Scalar(1), 0), DomainError);
  EXPECT_THROW(four_gap_points(Scalar(0), 4), DomainError);
  EXPECT_THROW(verify_extension_property(RotationOrbit{}), DomainError);
}
