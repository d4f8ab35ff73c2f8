// Locates and classifies the singular points of the discriminant curve and
// cross-checks the counts against the curve-pair systems.
//
// Root finding is numeric: exact resultants bound candidate coordinates
// where the Sylvester size stays small, multi-start damped Newton fills in
// everywhere, and the global certificate is exact count matching against
// the closed forms. At a cusp the gradient system has a multiple root, so
// Newton converges linearly there; the damped iteration still lands well
// inside the dedup tolerance.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsds/eliminate.hpp"
#include "gsds/numeric.hpp"
#include "gsds/scene.hpp"

namespace gsds {

enum class SingularKind { Node, Cusp, Other };

std::string to_string(SingularKind k);

struct SingularPoint {
  Complex u, v;
  SingularKind kind = SingularKind::Other;
  double residual = 0.0;  // max |P|, |P_u|, |P_v| on the normalized curve
  bool is_real = false;
  // local form data: quadratic (c20, c11, c02) and cubic (c30..c03) Taylor
  // coefficients at the point
  std::vector<Complex> quad_form;
  std::vector<Complex> cubic_form;
};

struct SolveDiagnostics {
  long starts_used = 0;
  int dedup_merges = 0;
  double worst_residual = 0.0;
  int escalations = 0;
  bool count_matched = true;  // against the expected count when given
  bool used_exact_bounding = false;
};

struct SolveReport {
  std::vector<SingularPoint> points;
  int n_nodes = 0;
  int n_cusps = 0;
  int n_other = 0;
  SolveDiagnostics diag;
};

struct SolveOptions {
  double tol_dedup = 1e-8;
  double tol_residual = 1e-8;
  double tol_class = 1e-6;
  int starts_factor = 50;
  int escalation_factor = 4;
  int stable_batches = 3;
  int exact_bound_max_dim = 24;  // Sylvester size cap for exact bounding
  double box_radius = 6.0;
  std::uint64_t seed = 0x5EED5EEDull;
  std::optional<long> expected_count;  // n + c when known
};

// P = P_u = P_v = 0 over complex pairs; points deduplicated and classified.
SolveReport solve_singular_points(const ImplicitCurve& curve,
                                  const SolveOptions& opts = {});

// Local A1/A2 test from Taylor coefficients of exact derivatives.
// Throws std::domain_error when the entire 2-jet vanishes (multiplicity
// >= 3, not expected generically).
SingularKind classify_local(const Poly& P, Complex u, Complex v,
                            const SolveOptions& opts = {});

// Number of solutions of f = g = h = s = 0, stopping early once the
// closed-form cusp count is reached and stable. Returns the count found;
// matched reports whether it equals the closed form.
long count_cusps_direct(const GsdsProblem& problem,
                        const SolveOptions& opts = {},
                        bool* matched = nullptr,
                        SolveDiagnostics* diag = nullptr);

// Distinct points of C = {f=g=h=0} over a node of the discriminant; 2 for
// a true node.
int node_preimages(const GsdsProblem& problem, Complex node_u, Complex node_v,
                   const SolveOptions& opts = {});

// Covering degree: distinct fiber points of X x Y over an off-curve point;
// throws std::invalid_argument if the point is too close to the
// discriminant (|P| <= 1e-3 normalized).
int fiber_count(const GsdsProblem& problem, const ImplicitCurve& curve,
                double u0, double v0, const SolveOptions& opts = {});

}  // namespace gsds
