// Command-line front end: analyse truncated orbits, census gaps, run the
// verifiers and property sweeps, and render figures as SVG.
//
// Exit status: 0 success, 1 a verified bound or identity failed, 2 bad input.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "billiard/census.hpp"
#include "billiard/errors.hpp"
#include "billiard/gaps.hpp"
#include "billiard/io.hpp"
#include "billiard/orbit.hpp"
#include "billiard/parse.hpp"
#include "billiard/render.hpp"
#include "billiard/sweep.hpp"

namespace {

using namespace billiard;

constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Options {
  std::string alpha = "sqrt(10)/7";
  std::optional<long> squares;
  std::string M;
  std::string format = "json";
  std::string out;
  std::string svg;
  double tol = kDefaultTolerance;
  int precision = 3;
  bool faces = false;
  long n = 17;
  long p = 3;
  long q = 5;
  long golden_n = 1;
  long max_squares = 60;
  std::uint64_t seed = 1;
  std::size_t sweep_count = 200;
  long n_min = 2;
  long n_max = 40;
  int figure = 8;
};

/// A failed check that should end the run with status 1.
struct Violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw DomainError("cannot write " + o.out);
  f << text;
  spdlog::info("wrote {}", o.out);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
  spdlog::info("wrote {}", path);
}

Scalar parse_slope(const Options& o) {
  ParsedAlpha parsed = parse_alpha(o.alpha, o.tol);
  for (const auto& note : parsed.notes) spdlog::warn("{}", note);
  if (!parsed.value.is_exact()) spdlog::info("decimal slope: approximate arithmetic with tolerance {}", o.tol);
  spdlog::debug("slope {} ~ {}", parsed.value.to_string(), parsed.value.to_double());
  return parsed.value;
}

TruncationSpec truncation(const Options& o, const Scalar& alpha) {
  if (!o.M.empty()) {
    ParsedAlpha m = parse_alpha(o.M, o.tol);
    return TruncationSpec::at(alpha, m.value);
  }
  return TruncationSpec::after_squares(alpha, o.squares.value_or(11));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_analyze(const Options& o) {
  Scalar alpha = parse_slope(o);
  Analysis a = analyze(truncation(o, alpha));
  for (const auto& w : a.subdivision.warnings) spdlog::debug("{}", w);
  std::optional<Theorem13Report> rep;
  std::string failure;
  try {
    rep = verify_theorem13(a);
    annotate_area_table(a.census, rep->formulas);
    if (!rep->formulas.violations.empty()) failure = rep->formulas.violations.front();
  } catch (const TheoremViolation& e) {
    failure = e.what();
  }
  if (!o.svg.empty()) write_file(o.svg, render_partition(a, true, o.precision));
  if (o.format == "svg") {
    emit(o, render_partition(a, true, o.precision));
  } else if (o.format == "text") {
    std::ostringstream s;
    s << "slope " << a.alpha.to_string() << " (~" << a.alpha.to_double() << ")\n"
      << "squares " << a.squares << ", M " << (a.swapped ? a.M / a.alpha : a.M).to_string() << ", ends on "
      << to_string(a.side) << " side\n"
      << "faces " << a.census.faces.size() << ", distinct areas " << a.census.distinct_areas
      << ", distinct shapes " << a.census.distinct_shapes << "\n";
    for (std::size_t i = 0; i < a.census.gap_set.size(); ++i)
      s << "d" << i + 1 << " = " << a.census.gap_set.lengths[i].to_string() << " ~ "
        << a.census.gap_set.lengths[i].to_double() << "\n";
    for (const auto& cls : a.census.area_table) {
      s << "  area " << cls.area.to_double() << " x" << cls.count << " :";
      for (const auto& l : cls.slots) s << " " << l;
      s << "\n";
    }
    s << (failure.empty() ? "bounds hold\n" : "VIOLATION: " + failure + "\n");
    emit(o, s.str());
  } else {
    Json j = census_json(a, rep ? &*rep : nullptr);
    if (o.faces) j["faces"] = faces_json(a.subdivision, a.census);
    emit(o, dump(j));
  }
  if (!failure.empty()) throw Violation(failure);
  return 0;
}

int cmd_gaps(const Options& o, bool four) {
  Scalar alpha = parse_slope(o);
  RotationOrbit orbit = four ? four_gap_points(alpha, o.n) : three_gap_points(alpha, o.n);
  GapSet g = gap_census(orbit);
  std::string failure;
  if (four) {
    if (g.size() > 4) failure = std::to_string(g.size()) + " distinct lengths in the bouncing sequence";
  } else {
    try {
      check_three_gap(g, "three-gap");
    } catch (const TheoremViolation& e) {
      failure = e.what();
    }
  }
  if (o.format == "text") {
    std::ostringstream s;
    s << (four ? "four" : "three") << "-gap census, slope " << alpha.to_string() << ", n " << o.n << "\n";
    for (std::size_t i = 0; i < g.size(); ++i)
      s << "  " << g.lengths[i].to_string() << " ~ " << g.lengths[i].to_double() << " x" << g.multiplicities[i]
        << "\n";
    emit(o, s.str());
  } else {
    emit(o, dump(gaps_json(alpha, o.n, g, failure.empty())));
  }
  if (!failure.empty()) throw Violation(failure);
  return 0;
}

int cmd_verify_theorem13(const Options& o) {
  Scalar alpha = parse_slope(o);
  Theorem13Report r = verify_theorem13(truncation(o, alpha));
  Json j;
  put(j, "alpha", alpha);
  j["faces"] = r.faces;
  j["distinct_areas"] = r.distinct_areas;
  j["distinct_shapes"] = r.distinct_shapes;
  j["gap_set"] = gap_set_json(r.gap_set);
  j["occupied_slots"] = r.formulas.occupied;
  j["free_corner_faces"] = r.formulas.free_corners.size();
  j["violations"] = r.formulas.violations;
  j["theorem_ok"] = r.formulas.violations.empty();
  emit(o, dump(j));
  if (!r.formulas.violations.empty()) throw Violation(r.formulas.violations.front());
  return 0;
}

int cmd_verify_rational(const Options& o) {
  RationalReport r = verify_rational(o.p, o.q);
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["faces"] = r.faces;
  j["areas"] = scalar_list(r.areas);
  j["areas_approx"] = approx_list(r.areas);
  put(j, "period", r.period);
  put(j, "M0", r.M0);
  j["theorem_ok"] = true;
  emit(o, dump(j));
  return 0;
}

int cmd_verify_golden(const Options& o) {
  GoldenReport r = verify_golden(o.golden_n, o.max_squares);
  Json j;
  j["n"] = r.n;
  put(j, "alpha", r.alpha);
  j["truncations"] = r.truncations;
  j["max_areas"] = r.max_areas;
  j["ratio_checks"] = r.ratio_checks;
  j["early_ratio_mismatches"] = r.early_ratio_mismatches;
  Json steps = Json::array();
  for (std::size_t i = 0; i < r.transitions.size() && i < 3; ++i) steps.push_back(scalar_list(r.transitions[i]));
  j["first_transitions"] = steps;
  j["theorem_ok"] = true;
  emit(o, dump(j));
  return 0;
}

int cmd_verify_lines(const Options& o) {
  Scalar alpha = parse_slope(o);
  long N = o.squares.value_or(11);
  LinesReport r = verify_orbit_equals_lines(alpha, N);
  LineFamily fam = build_line_family(alpha, N);
  GapSet pos = gap_census(intercept_orbit(fam));
  GapSet neg = gap_census(mirrored_intercept_orbit(fam));
  bool mirrored = same_lengths(pos, neg);
  Json j;
  put(j, "alpha", alpha);
  j["squares"] = N;
  j["segments"] = r.segments;
  j["chords"] = r.chords;
  j["points_sampled"] = r.points_sampled;
  j["mirrored_gaps_equal"] = mirrored;
  j["theorem_ok"] = mirrored;
  emit(o, dump(j));
  if (!mirrored) throw Violation("intercept and mirrored intercept gap sets differ");
  return 0;
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg{o.seed, o.sweep_count, o.n_min, o.n_max};
  SweepSummary s = run_sweep(cfg, [](const Scalar& a, const SweepRun& r) {
    if (!r.failure.empty()) spdlog::error("slope {} N={}: {}", a.to_string(), r.squares, r.failure);
    spdlog::debug("slope {} N={}: {} areas, {} shapes", a.to_string(), r.squares, r.distinct_areas,
                  r.distinct_shapes);
  });
  Json j;
  j["seed"] = cfg.seed;
  j["count"] = cfg.count;
  j["n_min"] = cfg.n_min;
  j["n_max"] = cfg.n_max;
  j["runs"] = s.runs.size();
  j["failures"] = s.failures;
  j["max_areas"] = s.max_areas;
  j["max_shapes"] = s.max_shapes;
  Json fails = Json::array();
  for (const auto& r : s.runs) {
    if (r.failure.empty()) continue;
    Json f;
    f["alpha"] = s.alphas[r.alpha_index].to_string();
    f["squares"] = r.squares;
    f["failure"] = r.failure;
    fails.push_back(f);
  }
  j["failed_runs"] = fails;
  j["theorem_ok"] = s.failures == 0;
  if (o.format == "text") {
    std::ostringstream t;
    t << s.runs.size() << " truncations over " << s.alphas.size() << " slopes, " << s.failures
      << " failures, max areas " << s.max_areas << ", max shapes " << s.max_shapes << "\n";
    emit(o, t.str());
  } else {
    emit(o, dump(j));
  }
  if (s.failures) throw Violation(std::to_string(s.failures) + " sweep runs failed");
  return 0;
}

int cmd_render(Options o, bool alpha_given, bool squares_given) {
  auto slope = [&](const char* fallback) {
    if (!alpha_given) o.alpha = fallback;
    return parse_slope(o);
  };
  auto squares = [&](long fallback) { return squares_given ? *o.squares : fallback; };
  std::string svg;
  switch (o.figure) {
    case 1: {
      Scalar a = slope("sqrt(2)-1");
      svg = render_orbit(fold_orbit(TruncationSpec::after_squares(a, squares(12))), o.precision);
      break;
    }
    case 3: {
      Scalar a = slope("0.1405");
      svg = render_bouncing(a, squares_given ? *o.squares : 16, o.precision);
      break;
    }
    case 5: svg = render_construction(slope("sqrt(3)-1"), squares(4), o.precision); break;
    case 6: svg = render_squares(slope("sqrt(3)-1"), squares(8), o.precision); break;
    case 7: {
      Scalar a = slope("3/5");
      if (!a.is_rational()) throw DomainError("figure 7 needs a rational slope");
      Scalar period = Scalar::rational(mpq_class(a.rational_part().get_den()));
      svg = render_partition(analyze(TruncationSpec::at(a, period)), true, o.precision);
      break;
    }
    case 8: svg = render_partition(analyze(TruncationSpec::after_squares(slope("sqrt(10)/7"), squares(11))), true,
                                   o.precision);
      break;
    default: throw DomainError("figures 1, 3, 5, 6, 7 and 8 can be rendered");
  }
  emit(o, svg);
  return 0;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("billiard");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%l: %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("BILLIARD_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  Options o;
  CLI::App app{"Polygon partitions of the square billiard"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", o.out, "Write the main output to this file instead of stdout");
  app.add_option("--tol", o.tol, "Tolerance for decimal slopes")->check(CLI::PositiveNumber);
  app.add_option("--precision", o.precision, "Decimals in SVG coordinates")->check(CLI::Range(0, 12));

  auto add_slope = [&](CLI::App* c) { return c->add_option("--alpha", o.alpha, "Slope expression, e.g. sqrt(10)/7"); };
  auto add_trunc = [&](CLI::App* c) {
    auto sq = c->add_option("--squares,--N", o.squares, "Unit squares traversed")->check(CLI::PositiveNumber);
    c->add_option("--M", o.M, "Truncation abscissa (must end on the boundary)")->excludes(sq);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Census of one truncated orbit");
  add_slope(analyze_cmd);
  add_trunc(analyze_cmd);
  analyze_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "svg", "text"}));
  analyze_cmd->add_option("--svg", o.svg, "Also write the coloured partition to this file");
  analyze_cmd->add_flag("--faces", o.faces, "Include every face in the JSON report");

  auto* gaps_cmd = app.add_subcommand("gaps", "Gap census of a rotation orbit");
  gaps_cmd->require_subcommand(1);
  auto* three = gaps_cmd->add_subcommand("three", "Points {k alpha}, k = 0..n, on [0,1]");
  auto* four = gaps_cmd->add_subcommand("four", "Points ||k alpha||, k = 0..n, on [0,1/2]");
  for (auto* c : {three, four}) {
    add_slope(c);
    c->add_option("--n", o.n)->check(CLI::PositiveNumber);
    c->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  }

  auto* verify_cmd = app.add_subcommand("verify", "Run a verifier; exit 1 on violation");
  verify_cmd->require_subcommand(1);
  auto* v13 = verify_cmd->add_subcommand("theorem13", "Area and shape bounds for one truncation");
  add_slope(v13);
  add_trunc(v13);
  auto* vrat = verify_cmd->add_subcommand("rational", "Rational slope p/q run to its period");
  vrat->add_option("--p", o.p)->check(CLI::PositiveNumber);
  vrat->add_option("--q", o.q)->check(CLI::PositiveNumber);
  auto* vgold = verify_cmd->add_subcommand("golden", "Slope 1/(n + phi)");
  vgold->add_option("--n", o.golden_n)->check(CLI::PositiveNumber);
  vgold->add_option("--max-squares", o.max_squares)->check(CLI::PositiveNumber);
  auto* vlines = verify_cmd->add_subcommand("lines", "Folded orbit against the line families");
  add_slope(vlines);
  vlines->add_option("--squares,--N", o.squares)->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "Seeded sweep over quadratic irrational slopes");
  sweep_cmd->add_option("--seed", o.seed);
  sweep_cmd->add_option("--sweep-count", o.sweep_count)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-min", o.n_min)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-max", o.n_max)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  auto* render_cmd = app.add_subcommand("render", "Draw a figure as SVG");
  render_cmd->add_option("--figure", o.figure)->check(CLI::IsMember({1, 3, 5, 6, 7, 8}));
  auto* render_alpha = add_slope(render_cmd);
  auto* render_squares_opt = render_cmd->add_option("--squares,--N", o.squares)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o);
    if (three->parsed()) return cmd_gaps(o, false);
    if (four->parsed()) return cmd_gaps(o, true);
    if (v13->parsed()) return cmd_verify_theorem13(o);
    if (vrat->parsed()) return cmd_verify_rational(o);
    if (vgold->parsed()) return cmd_verify_golden(o);
    if (vlines->parsed()) return cmd_verify_lines(o);
    if (sweep_cmd->parsed()) return cmd_sweep(o);
    if (render_cmd->parsed()) return cmd_render(o, render_alpha->count() > 0, render_squares_opt->count() > 0);
  } catch (const Violation& e) {
    spdlog::error("violation: {}", e.what());
    return kViolation;
  } catch (const TheoremViolation& e) {
    spdlog::error("violation: {}", e.what());
    return kViolation;
  } catch (const FormulaMismatch& e) {
    spdlog::error("violation: {}", e.what());
    return kViolation;
  } catch (const Error& e) {
    spdlog::error("input error: {}", e.what());
    return kInputError;
  }
  return kInputError;
}
