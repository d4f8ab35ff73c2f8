// Command-line orchestration over the full pipeline and the reusable
// pipeline driver (scene -> eliminate -> singular -> invariants).
//
// Exit codes are a stable contract:
//   0  success (report verdict pass)
//   2  usage error / invalid input (including degrees < 2)
//   3  genericity exhaustion (curve checks fail or resampling exhausted)
//   4  elimination failure (including budget aborts)
//   5  count mismatch between measured and closed-form values

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsds/eliminate.hpp"
#include "gsds/invariants.hpp"
#include "gsds/scene.hpp"
#include "gsds/singular.hpp"

namespace gsds {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,
  kExitGenericity = 3,
  kExitElimination = 4,
  kExitCountMismatch = 5,
};

struct PipelineOptions {
  std::uint64_t seed = 1;
  int max_attempts = 6;      // quadruple resamples after elimination failures
  SceneOptions scene;
  EliminateOptions eliminate;
  SolveOptions solve;
  int node_preimage_checks = -1;  // -1: every node
  int fiber_checks = 10;
};

struct PipelineResult {
  GsdsProblem problem;
  ImplicitCurve curve;
  SolveReport solve;
  InvariantReport report;
  long cusps_direct = -1;
  bool cusps_direct_matched = false;
  std::vector<int> node_preimage_counts;
  std::vector<int> fiber_counts;
  int attempts = 1;
};

// Seeded-quadruple pipeline; resamples the projection (derived seeds) when
// elimination or count matching fails. Throws EliminationError /
// std::runtime_error on exhaustion.
PipelineResult run_pipeline(const PlaneCurve& X, const PlaneCurve& Y,
                            const PipelineOptions& opts);

// Fixed affine-pair pipeline (no resampling).
PipelineResult run_pipeline(const PlaneCurve& X, const PlaneCurve& Y,
                            const AffinePair& pair,
                            const PipelineOptions& opts);

// Parses curve text in (x,y); `second` renames to (z,w).
PlaneCurve parse_curve_xy(const std::string& text);
PlaneCurve parse_curve_zw(const std::string& text);

// Six rationals, row-major matrix then translation: m00 m01 m10 m11 t0 t1.
AffineMap parse_affine_map(const std::string& text);

int run_cli(int argc, const char* const* argv);

}  // namespace gsds
