// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiard/census.hpp"
#include "billiard/gaps.hpp"
#include "billiard/orbit.hpp"
#include "billiard/parse.hpp"
#include "billiard/sweep.hpp"
#include "oracle.hpp"

using namespace billiard;

namespace {

// Pinned limits.
constexpr double kExampleSeconds = 5.0;
constexpr double kSweepSeconds = 300.0;
constexpr double kGapDecimalsTol = 5e-5;  // 4 decimal places
constexpr std::size_t kSweepAlphas = 200;
constexpr long kSweepNMin = 2;
constexpr long kSweepNMax = 40;
constexpr std::size_t kRationalPairs = 20;
constexpr long kRationalMaxQ = 30;
constexpr long kConvergentMinQ = 50;
constexpr long kGoldenMaxSquares = 60;
constexpr std::size_t kGapAlphas = 100;
constexpr long kGapMaxN = 10000;
constexpr long kOracleMaxN = 4;
constexpr int kRasterResolution = 1024;

const Scalar kQuarter = Scalar::rational(mpz_class(1), mpz_class(4));

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Invariants of every subdivision built below; reported as criterion 9.
struct Invariants {
  std::size_t checked = 0;
  std::string first_failure;
  void check(const PlanarSubdivision& sub, const std::string& where) {
    ++checked;
    if (!first_failure.empty()) return;
    if (sub.euler_characteristic() != 2)
      first_failure = where + ": V - E + F = " + std::to_string(sub.euler_characteristic());
    else if (!(sub.total_area() == kQuarter))
      first_failure = where + ": areas sum to " + sub.total_area().to_string();
  }
} invariants;

// Every (alpha, N) pair analysed; criterion 7 revisits them.
std::vector<std::pair<Scalar, long>> analysed;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

Analysis analyse(const Scalar& alpha, long N) {
  Analysis a = analyze(TruncationSpec::after_squares(alpha, N));
  invariants.check(a.subdivision, "alpha=" + alpha.to_string() + " N=" + std::to_string(N));
  analysed.emplace_back(alpha, N);
  return a;
}

Outcome example_one() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Scalar alpha = Scalar::sqrt_of(10) / Scalar(7);
  Analysis a = analyse(alpha, 11);
  FormulaReport rep = match_area_formulas(a.census, a.census.gap_set, alpha, false);
  annotate_area_table(a.census, rep);
  double t = seconds_since(t0);
  const double published_d[3] = {0.0965, 0.0658, 0.0307};
  if (a.census.distinct_areas != 13) o.fail(std::to_string(a.census.distinct_areas) + " areas");
  if (a.census.distinct_shapes != 16) o.fail(std::to_string(a.census.distinct_shapes) + " shapes");
  if (a.census.gap_set.size() != 3) {
    o.fail("|D| = " + std::to_string(a.census.gap_set.size()));
  } else {
    for (int i = 0; i < 3; ++i)
      if (std::abs(a.census.gap_set.lengths[i].to_double() - published_d[i]) > kGapDecimalsTol)
        o.fail("d" + std::to_string(i + 1) + " = " + fmt(a.census.gap_set.lengths[i].to_double(), 6));
  }
  if (!rep.violations.empty()) o.fail(rep.violations.front());
  if (!rep.free_corners.empty()) o.fail("corner face outside the d^2/8a slots");
  for (const auto& cls : a.census.area_table)
    if (cls.slots.empty()) o.fail("area " + cls.area.to_string() + " has no formula slot");
  if (!(a.subdivision.total_area() == kQuarter)) o.fail("areas do not sum to 1/4");
  if (t >= kExampleSeconds) o.fail("took " + fmt(t) + " s");
  if (o.ok)
    o.detail = "13 areas, 16 shapes, d = " + fmt(a.census.gap_set.lengths[0].to_double(), 4) + ", " +
               fmt(a.census.gap_set.lengths[1].to_double(), 4) + ", " +
               fmt(a.census.gap_set.lengths[2].to_double(), 4) + ", all areas on slots, " + fmt(t) + " s";
  return o;
}

std::vector<Scalar> sweep_alphas;

Outcome universal_sweep() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  SweepSummary s = run_sweep({1, kSweepAlphas, kSweepNMin, kSweepNMax}, [&](const Scalar& alpha, const SweepRun& r) {
    analysed.emplace_back(alpha, r.squares);
    ++invariants.checked;  // check_truncation verifies Euler and area sum
    if (!r.failure.empty() && invariants.first_failure.empty())
      invariants.first_failure = "sweep " + alpha.to_string() + ": " + r.failure;
  });
  double t = seconds_since(t0);
  sweep_alphas = s.alphas;
  if (s.alphas.size() != kSweepAlphas) o.fail("only " + std::to_string(s.alphas.size()) + " slopes");
  for (const auto& r : s.runs)
    if (!r.failure.empty()) {
      o.fail(s.alphas[r.alpha_index].to_string() + " N=" + std::to_string(r.squares) + ": " + r.failure);
      break;
    }
  if (s.max_areas > 13 || s.max_shapes > 16) o.fail("bound exceeded");
  if (t >= kSweepSeconds) o.fail("took " + fmt(t) + " s");
  if (o.ok)
    o.detail = std::to_string(s.runs.size()) + " truncations, max areas " + std::to_string(s.max_areas) +
               ", max shapes " + std::to_string(s.max_shapes) + ", 0 violations, " + fmt(t, 1) + " s";
  return o;
}

Outcome rational_collapse() {
  Outcome o;
  auto q = [](long n, long d) { return Scalar::rational(mpz_class(n), mpz_class(d)); };
  RationalReport three = verify_rational(3, 5);
  std::vector<Scalar> want{q(1, 120), q(1, 60), q(1, 30)};
  if (three.areas.size() != 3) o.fail("3/5 gives " + std::to_string(three.areas.size()) + " areas");
  else
    for (std::size_t i = 0; i < 3; ++i)
      if (!(three.areas[i] == want[i]) || !three.areas[i].is_rational()) o.fail("3/5 area " + three.areas[i].to_string());
  RationalReport one = verify_rational(1, 1);
  if (one.areas.size() != 1) o.fail("1/1 gives " + std::to_string(one.areas.size()) + " areas");

  std::mt19937_64 rng(2024);
  std::set<std::pair<long, long>> pairs;
  while (pairs.size() < kRationalPairs) {
    long qq = static_cast<long>(rng() % kRationalMaxQ) + 1;
    long pp = static_cast<long>(rng() % qq) + 1;
    if (std::gcd(pp, qq) == 1) pairs.insert({pp, qq});
  }
  for (auto [p, qq] : pairs) {
    try {
      RationalReport r = verify_rational(p, qq);
      // Past stabilisation: the census at M0 and at the period.
      Analysis at_m0 = analyze(TruncationSpec::at(Scalar::rational(mpz_class(p), mpz_class(qq)), r.M0));
      invariants.check(at_m0.subdivision, "rational " + std::to_string(p) + "/" + std::to_string(qq));
      const mpz_class pq = mpz_class(p) * qq;
      for (const auto& v : at_m0.census.areas)
        if (!(v == Scalar::rational(mpz_class(1), 2 * pq) || v == Scalar::rational(mpz_class(1), 4 * pq) ||
              v == Scalar::rational(mpz_class(1), 8 * pq)))
          o.fail(std::to_string(p) + "/" + std::to_string(qq) + " area " + v.to_string());
      if (at_m0.census.distinct_areas > 3 || r.areas.size() > 3) o.fail(std::to_string(p) + "/" + std::to_string(qq));
    } catch (const Error& e) {
      o.fail(std::to_string(p) + "/" + std::to_string(qq) + ": " + e.what());
    }
  }
  if (o.ok)
    o.detail = "3/5 -> {1/120, 1/60, 1/30}, 1/1 -> 1 area, " + std::to_string(pairs.size()) +
               " coprime p/q with q <= 30 within {1/2pq, 1/4pq, 1/8pq}";
  return o;
}

Outcome rational_sharpness() {
  Outcome o;
  // Continued fraction of sqrt(10)/7 in exact arithmetic.
  Scalar x = Scalar::sqrt_of(10) / Scalar(7);
  mpz_class h1 = 1, h0 = 0, k1 = 0, k0 = 1;
  for (int i = 0; i < 40 && k1 < kConvergentMinQ; ++i) {
    mpz_class t = x.floor();
    mpz_class h = t * h1 + h0, k = t * k1 + k0;
    h0 = h1;
    h1 = h;
    k0 = k1;
    k1 = k;
    x = Scalar(1) / (x - Scalar::rational(mpq_class(t)));
  }
  Scalar r = Scalar::rational(h1, k1);
  Analysis a = analyse(r, 11);
  if (a.census.distinct_areas != 13) o.fail(std::to_string(a.census.distinct_areas) + " areas");
  if (o.ok) o.detail = "convergent " + r.to_string() + ", N = 11 -> 13 areas";
  return o;
}

Outcome golden() {
  Outcome o;
  std::string counts;
  for (long n = 1; n <= 3; ++n) {
    try {
      GoldenReport r = verify_golden(n, kGoldenMaxSquares);
      if (r.max_areas > 12) o.fail("n=" + std::to_string(n) + ": " + std::to_string(r.max_areas) + " areas");
      if (r.early_ratio_mismatches != 0) o.fail("n=" + std::to_string(n) + ": d1 d3 != d2^2 before the pattern");
      if (r.transitions.size() < 3) o.fail("n=" + std::to_string(n) + ": fewer than three gap states");
      counts += (counts.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " +
                std::to_string(r.truncations) + " truncations, " + std::to_string(r.ratio_checks) + " with |D|=3";
    } catch (const Error& e) {
      o.fail("n=" + std::to_string(n) + ": " + e.what());
    }
  }
  if (o.ok) o.detail = counts + "; max areas <= 12, d1 d3 = d2^2, transitions match";
  return o;
}

Outcome gap_theorems() {
  Outcome o;
  std::vector<Scalar> alphas = sample_alphas(6, kGapAlphas);
  const Scalar one(1);
  const Scalar half = Scalar::rational(mpz_class(1), mpz_class(2));
  std::size_t triples = 0;
  for (const auto& a : alphas) {
    GapTracker three(Scalar(0), one);
    GapTracker four(Scalar(0), half);
    Scalar x(0);
    GapSet prev = three.census();
    for (long k = 1; k <= kGapMaxN && o.ok; ++k) {
      x += a;
      if (x >= one) x -= one;
      three.insert(x);
      four.insert(min(x, one - x));
      GapSet g = three.census();
      std::string where = a.to_string() + " n=" + std::to_string(k);
      if (g.size() > 3) o.fail(where + ": " + std::to_string(g.size()) + " three-gap lengths");
      if (g.size() == 3) {
        ++triples;
        if (!(g.lengths[0] == g.lengths[1] + g.lengths[2])) o.fail(where + ": largest is not the sum");
      }
      if (four.distinct() > 4) o.fail(where + ": " + std::to_string(four.distinct()) + " four-gap lengths");
      if (length_union(prev, g).size() > 3) o.fail(where + ": extension union above three");
      prev = std::move(g);
    }
  }
  if (o.ok)
    o.detail = std::to_string(alphas.size()) + " slopes, n <= " + std::to_string(kGapMaxN) + ", " +
               std::to_string(triples) + " three-length states all with d1 = d2 + d3";
  return o;
}

Outcome representation() {
  Outcome o;
  std::size_t done = 0;
  for (const auto& [alpha, N] : analysed) {
    std::string where = alpha.to_string() + " N=" + std::to_string(N);
    try {
      LineFamily fam = build_line_family(alpha, N);  // recursion vs closed form, mirror relation
      CornerPolicy policy = alpha.is_rational() ? CornerPolicy::FollowClosedForm : CornerPolicy::Reject;
      std::vector<Scalar> rec = intercepts_recursive(alpha, N, policy);
      for (long k = 1; k <= N; ++k)
        if (!(rec[static_cast<std::size_t>(k - 1)] == intercepts_closed_form(alpha, k))) o.fail(where);
      verify_orbit_equals_lines(alpha, N);
      if (!same_lengths(gap_census(intercept_orbit(fam)), gap_census(mirrored_intercept_orbit(fam))))
        o.fail(where + ": mirrored gap sets differ");
      ++done;
    } catch (const Error& e) {
      o.fail(where + ": " + e.what());
    }
    if (!o.ok) break;
  }
  if (o.ok)
    o.detail = std::to_string(done) + " instances: intercepts agree, orbit = line families, mirrored gaps equal";
  return o;
}

Outcome structural_oracle() {
  Outcome o;
  std::vector<Scalar> alphas{Scalar::sqrt_of(10) / Scalar(7), Scalar::sqrt_of(3) - Scalar(1),
                             Scalar(1) / (Scalar(1) + golden_phi()), Scalar::rational(mpz_class(3), mpz_class(5))};
  for (std::size_t i = 0; i < 20 && i < sweep_alphas.size(); ++i) alphas.push_back(sweep_alphas[i]);
  std::size_t cases = 0;
  for (const auto& a : alphas) {
    for (long N = 1; N <= kOracleMaxN; ++N) {
      std::string where = a.to_string() + " N=" + std::to_string(N);
      Analysis an = analyse(a, N);
      auto segs = oracle::folded_segments(an.frame_alpha, an.M);
      oracle::Reference ref = oracle::slab_reference(segs);
      std::vector<Scalar> mine;
      for (const auto& f : an.subdivision.faces) mine.push_back(f.area);
      std::sort(mine.begin(), mine.end(), ScalarLess{});
      if (ref.faces != mine.size()) o.fail(where + ": " + std::to_string(mine.size()) + " faces, oracle " +
                                           std::to_string(ref.faces));
      else
        for (std::size_t k = 0; k < mine.size(); ++k)
          if (!(mine[k] == ref.areas[k])) o.fail(where + ": area multisets differ");
      std::size_t raster = oracle::raster_face_count(segs, kRasterResolution);
      if (raster != mine.size()) o.fail(where + ": raster counts " + std::to_string(raster));
      ++cases;
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " truncations: face counts and exact area multisets match";
  return o;
}

Outcome euler_and_area() {
  Outcome o;
  if (!invariants.first_failure.empty()) o.fail(invariants.first_failure);
  if (invariants.checked == 0) o.fail("nothing checked");
  if (o.ok) o.detail = std::to_string(invariants.checked) + " subdivisions: V - E + F = 2 and areas sum to 1/4";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 8 reuses the sweep slopes and 7 revisits everything analysed
  // before it, so the order matters.
  std::vector<Criterion> criteria{
      {1, "sharpness witness", example_one},
      {2, "universal bound sweep", universal_sweep},
      {3, "rational collapse", rational_collapse},
      {4, "rational sharpness", rational_sharpness},
      {5, "golden exception", golden},
      {6, "gap theorems", gap_theorems},
      {8, "structural oracle", structural_oracle},
      {7, "representation equivalence", representation},
      {9, "Euler and partition invariants", euler_and_area},
  };
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    lines.emplace_back(c.id, std::string(o.ok ? "PASS" : "FAIL") + "  " + std::to_string(c.id) + "  " + c.name +
                                 ": " + o.detail);
    std::fprintf(stderr, "criterion %d done\n", c.id);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  return all ? 0 : 1;
}
