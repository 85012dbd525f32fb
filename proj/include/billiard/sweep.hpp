#pragma once

// Seeded property sweeps over quadratic irrational slopes (p + sqrt(d))/q.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "billiard/census.hpp"
#include "billiard/errors.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

struct SweepConfig {
  std::uint64_t seed = 1;
  std::size_t count = 200;
  long n_min = 2;
  long n_max = 40;
};

/// `count` distinct slopes (p + sqrt(d))/q in (0,1) with p in [-20,20],
/// d in [2,60] and q in [1,40], irrational after reducing the radicand.
/// Raw engine output modulo the range keeps the draw identical across
/// standard library implementations.
inline std::vector<Scalar> sample_alphas(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Scalar> out;
  std::set<std::string> seen;  // slopes from different fields are not comparable
  const Scalar one(1);
  while (out.size() < count) {
    long p = static_cast<long>(rng() % 41) - 20;
    long d = static_cast<long>(rng() % 59) + 2;
    long q = static_cast<long>(rng() % 40) + 1;
    Scalar a = Scalar::quadratic(mpq_class(p, q), mpq_class(1, q), d);
    if (a.is_rational() || a.sign() <= 0 || !(a < one)) continue;
    if (!seen.insert(a.to_string()).second) continue;
    out.push_back(std::move(a));
  }
  return out;
}

struct SweepRun {
  std::size_t alpha_index = 0;
  long squares = 0;
  std::size_t faces = 0;
  std::size_t distinct_areas = 0;
  std::size_t distinct_shapes = 0;
  std::size_t gaps = 0;
  std::string failure;  // empty when every check passed
};

struct SweepSummary {
  SweepConfig config;
  std::vector<Scalar> alphas;
  std::vector<SweepRun> runs;  // ordered by (alpha_index, squares)
  std::size_t failures = 0;
  std::size_t max_areas = 0;
  std::size_t max_shapes = 0;
};

/// One truncation after `squares` squares: the area and shape bounds, the
/// formula slots for type 1 and 2 faces, V - E + F = 2 and total area 1/4.
inline SweepRun check_truncation(const Scalar& alpha, long squares) {
  SweepRun run;
  run.squares = squares;
  try {
    Analysis a = analyze(TruncationSpec::after_squares(alpha, squares));
    run.faces = a.census.faces.size();
    run.distinct_areas = a.census.distinct_areas;
    run.distinct_shapes = a.census.distinct_shapes;
    run.gaps = a.census.gap_set.size();
    Theorem13Report rep = verify_theorem13(a);
    if (!rep.formulas.violations.empty()) run.failure = rep.formulas.violations.front();
    if (a.subdivision.euler_characteristic() != 2)
      run.failure = "Euler characteristic " + std::to_string(a.subdivision.euler_characteristic());
    if (!(a.subdivision.total_area() == Scalar::rational(mpq_class(1, 4))))
      run.failure = "face areas sum to " + a.subdivision.total_area().to_string();
  } catch (const Error& e) {
    run.failure = e.what();
  }
  return run;
}

inline SweepSummary run_sweep(const SweepConfig& cfg,
                              const std::function<void(const Scalar&, const SweepRun&)>& on_run = {}) {
  SweepSummary s;
  s.config = cfg;
  s.alphas = sample_alphas(cfg.seed, cfg.count);
  for (std::size_t i = 0; i < s.alphas.size(); ++i) {
    for (long n = cfg.n_min; n <= cfg.n_max; ++n) {
      SweepRun run = check_truncation(s.alphas[i], n);
      run.alpha_index = i;
      if (!run.failure.empty()) ++s.failures;
      s.max_areas = std::max(s.max_areas, run.distinct_areas);
      s.max_shapes = std::max(s.max_shapes, run.distinct_shapes);
      if (on_run) on_run(s.alphas[i], run);
      s.runs.push_back(std::move(run));
    }
  }
  return s;
}

}  // namespace billiard
