#include "gsds/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gsds/json_io.hpp"
#include "gsds/polyalg.hpp"
#include "gsds/trace.hpp"

namespace gsds {

namespace {

std::uint64_t derived_seed(std::uint64_t seed, int attempt) {
  if (attempt == 0) return seed;
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (attempt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  return z ^ (z >> 27);
}

// singular solve + cross checks on an implicitized instance; returns false
// when counts cannot be matched (callers may resample)
bool analyze_instance(const GsdsProblem& problem, const ImplicitCurve& curve,
                      const PipelineOptions& opts, PipelineResult& out) {
  const InvariantSet expected = expected_invariants(problem.d1(), problem.d2());
  SolveOptions sopts = opts.solve;
  sopts.expected_count = expected.nodes + expected.cusps;
  SolveReport solve = solve_singular_points(curve, sopts);
  if (!solve.diag.count_matched || solve.n_other > 0) {
    out.solve = std::move(solve);
    return false;
  }
  out.solve = std::move(solve);

  bool direct_matched = false;
  out.cusps_direct =
      count_cusps_direct(problem, opts.solve, &direct_matched, nullptr);
  out.cusps_direct_matched = direct_matched;

  // node fibers: every node of the discriminant has exactly two preimages
  out.node_preimage_counts.clear();
  int budget = opts.node_preimage_checks;
  for (const auto& p : out.solve.points) {
    if (p.kind != SingularKind::Node) continue;
    if (budget == 0) break;
    if (budget > 0) --budget;
    out.node_preimage_counts.push_back(
        node_preimages(problem, p.u, p.v, opts.solve));
  }

  // covering degree off the discriminant
  out.fiber_counts.clear();
  Rng rng(problem.seed ^ 0xF1BE77ull);
  double span = 3.0;
  for (const auto& p : out.solve.points) {
    span = std::max({span, std::abs(p.u), std::abs(p.v)});
  }
  int wanted = opts.fiber_checks;
  for (int tries = 0; tries < 40 * wanted && static_cast<int>(out.fiber_counts.size()) < wanted;
       ++tries) {
    double u0 = rng.uniform(-span, span);
    double v0 = rng.uniform(-span, span);
    try {
      out.fiber_counts.push_back(
          fiber_count(problem, curve, u0, v0, opts.solve));
    } catch (const std::invalid_argument&) {
      // too close to the curve; redraw
    }
  }
  return true;
}

void finish_report(const GsdsProblem& problem, PipelineResult& r) {
  ComputedInvariants computed;
  computed.degree = r.curve.degree;
  computed.cusps = r.solve.n_cusps;
  computed.nodes = r.solve.n_nodes;
  computed.cusps_direct = r.cusps_direct;
  std::vector<std::string> notes;
  notes.push_back("projection_resamples=" + std::to_string(problem.resamples));
  notes.push_back("pipeline_attempts=" + std::to_string(r.attempts));
  notes.push_back(
      "theorem_chi_label_note: the closed form -d1d2(4d1d2-5(d1+d2)+6) is "
      "carried as chi(C) of the critical curve; chi(C') = chi(C) - n");
  for (const auto& c : problem.genericity_log) {
    if (!c.pass) {
      notes.push_back("genericity_warning: " + c.name +
                      (c.note.empty() ? "" : " (" + c.note + ")"));
    }
  }
  r.report = assemble_report(problem.d1(), problem.d2(), computed,
                             std::move(notes));

  // structure at infinity
  long want_distinct = problem.d1() + problem.d2();
  IdentityCheck inf_count;
  inf_count.name = "infinity_distinct_points";
  inf_count.lhs = static_cast<long long>(r.curve.infinity_points.size());
  inf_count.rhs = want_distinct;
  inf_count.pass = inf_count.lhs == inf_count.rhs;
  r.report.checks.push_back(inf_count);
  std::vector<int> mult;
  for (const auto& p : r.curve.infinity_points) mult.push_back(p.multiplicity);
  std::sort(mult.rbegin(), mult.rend());
  IdentityCheck inf_mult;
  inf_mult.name = "infinity_multiplicities";
  inf_mult.pass = mult == expected_infinity_multiset(problem.d1(), problem.d2());
  inf_mult.lhs = inf_mult.pass ? 1 : 0;
  inf_mult.rhs = 1;
  r.report.checks.push_back(inf_mult);

  IdentityCheck nodes_fibered;
  nodes_fibered.name = "node_preimages_are_2";
  nodes_fibered.pass = true;
  for (int c : r.node_preimage_counts) nodes_fibered.pass &= (c == 2);
  nodes_fibered.lhs = nodes_fibered.pass ? 2 : -1;
  nodes_fibered.rhs = 2;
  r.report.checks.push_back(nodes_fibered);

  IdentityCheck fibers;
  fibers.name = "covering_degree_off_curve";
  fibers.pass = !r.fiber_counts.empty();
  for (int c : r.fiber_counts) {
    fibers.pass &= (c == problem.d1() * problem.d2());
  }
  fibers.lhs = r.fiber_counts.empty() ? -1 : r.fiber_counts.front();
  fibers.rhs = problem.d1() * problem.d2();
  r.report.checks.push_back(fibers);

  r.report.pass = r.report.pass && inf_count.pass && inf_mult.pass &&
                  nodes_fibered.pass && fibers.pass &&
                  r.cusps_direct_matched;
}

}  // namespace

PipelineResult run_pipeline(const PlaneCurve& X, const PlaneCurve& Y,
                            const PipelineOptions& opts) {
  std::string last_error;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    GsdsProblem problem =
        sample_problem(X, Y, derived_seed(opts.seed, attempt), opts.scene);
    problem.seed = opts.seed;  // report the caller-facing seed
    PipelineResult r;
    r.attempts = attempt + 1;
    try {
      r.curve = implicitize(problem, opts.eliminate);
    } catch (const EliminationError& e) {
      if (e.kind() == EliminationError::Kind::budget) throw;
      last_error = e.what();
      continue;
    }
    if (!analyze_instance(problem, r.curve, opts, r)) {
      last_error = "singular point count did not stabilize at the closed form";
      continue;
    }
    r.problem = std::move(problem);
    finish_report(r.problem, r);
    return r;
  }
  throw EliminationError(
      EliminationError::Kind::degree_mismatch,
      "pipeline failed after " + std::to_string(opts.max_attempts) +
          " projection attempts; last error: " + last_error);
}

PipelineResult run_pipeline(const PlaneCurve& X, const PlaneCurve& Y,
                            const AffinePair& pair,
                            const PipelineOptions& opts) {
  GsdsProblem problem = pair_to_quadruple(X, Y, pair, opts.scene);
  problem.seed = opts.seed;
  PipelineResult r;
  r.curve = implicitize(problem, opts.eliminate);
  if (!analyze_instance(problem, r.curve, opts, r)) {
    throw std::runtime_error(
        "count mismatch: singular points did not stabilize at the closed "
        "form for the supplied affine pair");
  }
  r.problem = std::move(problem);
  finish_report(r.problem, r);
  return r;
}

PlaneCurve parse_curve_xy(const std::string& text) {
  Poly p = drop_unused_variables(parse_poly(text));
  for (const auto& v : p.variables()) {
    if (v != "x" && v != "y") {
      throw std::invalid_argument("curve must use variables x, y (got " + v +
                                  ")");
    }
  }
  return PlaneCurve::make(p, {"x", "y"});
}

PlaneCurve parse_curve_zw(const std::string& text) {
  Poly p = drop_unused_variables(parse_poly(text));
  bool uses_xy = false, uses_zw = false;
  for (const auto& v : p.variables()) {
    if (v == "x" || v == "y") uses_xy = true;
    if (v == "z" || v == "w") uses_zw = true;
  }
  if (uses_xy && uses_zw) {
    throw std::invalid_argument("second curve mixes x,y with z,w");
  }
  if (uses_xy) p = rename_variables(p, {{"x", "z"}, {"y", "w"}});
  return PlaneCurve::make(p, {"z", "w"});
}

AffineMap parse_affine_map(const std::string& text) {
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  std::istringstream is(norm);
  std::vector<Rational> vals;
  std::string tok;
  while (is >> tok) vals.push_back(rational_from_string(tok));
  if (vals.size() != 6) {
    throw std::invalid_argument(
        "affine map needs 6 rationals: m00 m01 m10 m11 t0 t1");
  }
  AffineMap m;
  m.m[0][0] = vals[0];
  m.m[0][1] = vals[1];
  m.m[1][0] = vals[2];
  m.m[1][1] = vals[3];
  m.t[0] = vals[4];
  m.t[1] = vals[5];
  return m;
}

namespace {

struct CliConfig {
  std::string curve1, curve2, curve_file;
  std::uint64_t seed = 1;
  double tol_dedup = 1e-8;
  double tol_residual = 1e-8;
  int starts_factor = 50;
  double window = 0.0;
  int resolution = 512;
  std::string out_dir = ".";
  std::string format = "json";
  std::string affine_g, affine_h;
  int max_attempts = 6;

  PipelineOptions pipeline() const {
    PipelineOptions p;
    p.seed = seed;
    p.max_attempts = max_attempts;
    p.solve.tol_dedup = tol_dedup;
    p.solve.tol_residual = tol_residual;
    p.solve.starts_factor = starts_factor;
    p.solve.seed = seed ^ 0x5EED5EEDull;
    return p;
  }
};

void load_curves(CliConfig& cfg, PlaneCurve& X, PlaneCurve& Y) {
  std::string c1 = cfg.curve1, c2 = cfg.curve2;
  if (!cfg.curve_file.empty()) {
    std::ifstream is(cfg.curve_file);
    if (!is) throw std::invalid_argument("cannot read " + cfg.curve_file);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) {
      if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
        lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("empty curve file");
    c1 = lines[0];
    if (lines.size() > 1) c2 = lines[1];
  }
  if (c1.empty()) throw std::invalid_argument("no curve given");
  if (c2.empty()) c2 = c1;  // the single-curve case: the pair (X, X)
  X = parse_curve_xy(c1);
  Y = parse_curve_zw(c2);
}

int mapped_exit(const std::exception& e) {
  if (dynamic_cast<const EliminationError*>(&e)) {
    std::cerr << "elimination error: " << e.what() << "\n";
    const auto& ee = static_cast<const EliminationError&>(e);
    if (ee.kind() == EliminationError::Kind::degree_mismatch &&
        std::string(e.what()).find("pipeline failed") != std::string::npos) {
      return kExitCountMismatch;
    }
    return kExitElimination;
  }
  if (dynamic_cast<const std::invalid_argument*>(&e)) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "error: " << e.what() << "\n";
  const std::string what = e.what();
  if (what.find("curve checks fail") != std::string::npos ||
      what.find("genericity") != std::string::npos) {
    return kExitGenericity;
  }
  if (what.find("count mismatch") != std::string::npos) {
    return kExitCountMismatch;
  }
  return kExitUsage;
}

void write_run_artifacts(const CliConfig& cfg, const PipelineResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  auto path = [&](const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
  };
  nlohmann::json curve_json = to_json(r.curve);
  curve_json["problem"] = to_json(r.problem);
  write_text_file(path("implicit_curve.json"), stable_dump(curve_json));
  write_text_file(path("solve_report.json"), stable_dump(to_json(r.solve)));
  nlohmann::json rep = to_json(r.report);
  rep["seed"] = r.problem.seed;
  rep["node_preimage_counts"] = r.node_preimage_counts;
  rep["fiber_counts"] = r.fiber_counts;
  write_text_file(path("invariant_report.json"), stable_dump(rep));
}

int cmd_run(CliConfig& cfg) {
  PlaneCurve X, Y;
  load_curves(cfg, X, Y);
  PipelineOptions opts = cfg.pipeline();
  PipelineResult r;
  if (!cfg.affine_g.empty() || !cfg.affine_h.empty()) {
    AffinePair pair{cfg.affine_g.empty() ? AffineMap::identity()
                                         : parse_affine_map(cfg.affine_g),
                    cfg.affine_h.empty() ? AffineMap::identity()
                                         : parse_affine_map(cfg.affine_h)};
    r = run_pipeline(X, Y, pair, opts);
  } else {
    r = run_pipeline(X, Y, opts);
  }
  write_run_artifacts(cfg, r);
  std::cout << stable_dump(to_json(r.report));
  return r.report.pass ? kExitOk : kExitCountMismatch;
}

int cmd_invariants(int d1, int d2) {
  InvariantSet s = expected_invariants(d1, d2);
  nlohmann::json j{{"degree", s.degree}, {"cusps", s.cusps},
                   {"nodes", s.nodes},   {"genus", s.genus},
                   {"chi_C", s.chi_c},   {"chi_Cprime", s.chi_cprime}};
  std::cout << stable_dump(j);
  return kExitOk;
}

int cmd_eliminate(CliConfig& cfg) {
  PlaneCurve X, Y;
  load_curves(cfg, X, Y);
  GsdsProblem problem;
  if (!cfg.affine_g.empty() || !cfg.affine_h.empty()) {
    AffinePair pair{cfg.affine_g.empty() ? AffineMap::identity()
                                         : parse_affine_map(cfg.affine_g),
                    cfg.affine_h.empty() ? AffineMap::identity()
                                         : parse_affine_map(cfg.affine_h)};
    problem = pair_to_quadruple(X, Y, pair);
  } else {
    problem = sample_problem(X, Y, cfg.seed);
  }
  ImplicitCurve curve = implicitize(problem);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  nlohmann::json j = to_json(curve);
  j["problem"] = to_json(problem);
  write_text_file((fs::path(cfg.out_dir) / "implicit_curve.json").string(),
                  stable_dump(j));
  std::cout << stable_dump(j);
  return kExitOk;
}

int cmd_trace(CliConfig& cfg) {
  PlaneCurve X, Y;
  load_curves(cfg, X, Y);
  PipelineOptions opts = cfg.pipeline();
  PipelineResult r;
  if (!cfg.affine_g.empty() || !cfg.affine_h.empty()) {
    AffinePair pair{cfg.affine_g.empty() ? AffineMap::identity()
                                         : parse_affine_map(cfg.affine_g),
                    cfg.affine_h.empty() ? AffineMap::identity()
                                         : parse_affine_map(cfg.affine_h)};
    r = run_pipeline(X, Y, pair, opts);
  } else {
    r = run_pipeline(X, Y, opts);
  }
  TraceOptions topts;
  topts.resolution = cfg.resolution;
  if (cfg.window > 0) topts.probe_halfwidth = cfg.window;
  RealTrace trace = build_real_trace(r.problem, r.curve, r.solve, topts);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  if (cfg.format == "svg" || cfg.format == "json") {
    write_svg((fs::path(cfg.out_dir) / "trace.svg").string(), trace);
  }
  if (cfg.format == "csv" || cfg.format == "json") {
    write_csv((fs::path(cfg.out_dir) / "midpoints.csv").string(),
              trace.midpoint_samples);
  }
  std::cout << "midpoint samples: " << trace.midpoint_samples.size()
            << ", contour polylines: " << trace.contour_polylines.size()
            << ", real cusps: " << trace.real_cusps.size() << "\n";
  return kExitOk;
}

int cmd_figure1(CliConfig& cfg) {
  AffinePair pair{AffineMap::identity(), AffineMap::identity()};
  pair.H.m[0][0] = make_rational(11, 10);
  pair.H.m[0][1] = make_rational(1, 10);
  pair.H.m[1][0] = make_rational(-1, 5);
  pair.H.m[1][1] = make_rational(9, 10);

  PipelineOptions opts = cfg.pipeline();
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  TraceOptions topts;
  topts.resolution = cfg.resolution;

  struct Job {
    const char* name;
    const char* curve;
    const char* svg;
    int expected_real_cusps;
  };
  const Job jobs[2] = {{"circle", "x^2 + y^2 - 1", "gsds_circle.svg", 4},
                       {"hyperbola", "x*y - 1", "gsds_hyperbola.svg", 2}};
  bool all_ok = true;
  for (const Job& job : jobs) {
    PlaneCurve X = parse_curve_xy(job.curve);
    PlaneCurve Y = parse_curve_zw(job.curve);
    PipelineResult r = run_pipeline(X, Y, pair, opts);
    RealTrace trace = build_real_trace(r.problem, r.curve, r.solve, topts);
    write_svg((fs::path(cfg.out_dir) / job.svg).string(), trace);
    int real_cusps = count_real_cusps(r.solve);
    bool ok = r.report.pass && real_cusps == job.expected_real_cusps;
    all_ok = all_ok && ok;
    std::cout << job.name << ": degree " << r.curve.degree << ", cusps "
              << r.solve.n_cusps << " (" << real_cusps << " real), nodes "
              << r.solve.n_nodes << " -> " << (ok ? "ok" : "MISMATCH")
              << " [" << job.svg << "]\n";
  }
  return all_ok ? kExitOk : kExitCountMismatch;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"generic symmetry defect sets of plane curve pairs"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_common = [&](CLI::App* sub, bool curves) {
    sub->add_option("--seed", cfg.seed, "RNG seed for the projection draw");
    sub->add_option("--tol-dedup", cfg.tol_dedup, "dedup tolerance");
    sub->add_option("--tol-residual", cfg.tol_residual, "residual tolerance");
    sub->add_option("--starts-factor", cfg.starts_factor,
                    "Newton start budget per expected root");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", cfg.format, "json|csv|svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_option("--window", cfg.window, "half-width of the probe window");
    sub->add_option("--resolution", cfg.resolution, "grid/sampling density");
    sub->add_option("--max-attempts", cfg.max_attempts,
                    "projection resample attempts");
    if (curves) {
      sub->add_option("--curve", cfg.curve1, "first curve, in x and y");
      sub->add_option("--curve2", cfg.curve2,
                      "second curve (defaults to the first)");
      sub->add_option("--curve-file", cfg.curve_file,
                      "file with one curve per line");
      sub->add_option("--affine-g", cfg.affine_g,
                      "affine map for X: m00 m01 m10 m11 t0 t1");
      sub->add_option("--affine-h", cfg.affine_h,
                      "affine map for Y: m00 m01 m10 m11 t0 t1");
    }
  };

  int d1 = 0, d2 = 0;
  CLI::App* inv = app.add_subcommand(
      "invariants", "closed-form degree/cusp/node/genus oracle");
  inv->add_option("d1", d1, "degree of the first curve")->required();
  inv->add_option("d2", d2, "degree of the second curve")->required();

  CLI::App* run = app.add_subcommand("run", "full pipeline with reports");
  add_common(run, true);
  CLI::App* elim = app.add_subcommand("eliminate", "implicitize only");
  add_common(elim, true);
  CLI::App* trace = app.add_subcommand("trace", "real caustic rendering");
  add_common(trace, true);
  CLI::App* fig = app.add_subcommand("figure1",
                                     "circle and hyperbola reference figures");
  add_common(fig, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (inv->parsed()) {
      if (d1 < 2 || d2 < 2) {
        std::cerr << "degrees must be >= 2\n";
        return kExitUsage;
      }
      return cmd_invariants(d1, d2);
    }
    if (run->parsed()) return cmd_run(cfg);
    if (elim->parsed()) return cmd_eliminate(cfg);
    if (trace->parsed()) return cmd_trace(cfg);
    if (fig->parsed()) return cmd_figure1(cfg);
  } catch (const std::exception& e) {
    return mapped_exit(e);
  }
  return kExitUsage;
}

}  // namespace gsds
