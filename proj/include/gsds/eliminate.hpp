// Implicitization of the discriminant curve: substitute the fiber
// coordinates, eliminate by iterated resultants, strip extraneous factors
// against numeric samples of the critical set, and read off the structure
// at infinity.
//
// Iterated resultants pick up factors that do not lie on the projected
// curve (same-coordinate collisions of different fiber roots, leading
// coefficient degenerations). Arbitration is numeric — a factor survives
// iff it vanishes at >= 90% of sampled critical-set images — with an exact
// backstop: the retained product must have exactly the closed-form degree
// d1 d2 (d1 + d2 - 2).

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsds/numeric.hpp"
#include "gsds/poly.hpp"
#include "gsds/scene.hpp"

namespace gsds {

class EliminationError : public std::runtime_error {
 public:
  enum class Kind { degenerate, budget, no_factor, degree_mismatch };
  EliminationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct EliminateOptions {
  int order = 0;  // 0: eliminate w then z; 1: z then w
  bool try_other_order_on_failure = true;
  std::size_t term_budget = 200000;
  std::size_t coeff_bit_budget = 1000000;
  int sample_count = 20;
  double sample_residual = 1e-10;
  double vanish_tol = 1e-6;
  double vanish_fraction = 0.9;
  int sample_start_budget = 4000;
  double sample_box_radius = 4.0;
  std::uint64_t sample_seed = 0;  // 0: derived from the problem seed
};

struct FactorRecord {
  int degree = 0;
  int multiplicity = 0;
  int vanished_at = 0;  // samples where the factor vanished
  bool kept = false;
};

struct Provenance {
  std::string elimination_order;
  int deg_r1 = 0, deg_r2 = 0, deg_r3 = 0;
  int samples_used = 0;
  std::vector<FactorRecord> factors;
  std::string notes;
};

struct InfinityPoint {
  Complex alpha, beta;  // projective (alpha : beta)
  int multiplicity = 0;
};

struct ImplicitCurve {
  Poly P;  // primitive, squarefree, positive leading coefficient, in (u,v)
  int degree = 0;
  std::vector<InfinityPoint> infinity_points;
  Provenance provenance;
};

// F1 = f(u-az-bw, v-cz-dw), F2 = g(z,w), F3 = h(u-az-bw, v-cz-dw, z, w).
std::array<Poly, 3> substitute_fiber(const GsdsProblem& problem);

// Numeric points on the critical set f = g = h = 0, found by Newton on
// randomly sliced systems; returns 4-tuples over (x,y,z,w).
std::vector<CVec> sample_critical_points(const GsdsProblem& problem,
                                         const EliminateOptions& opts);

// pi(x,y,z,w) with double quadruple entries.
std::array<Complex, 2> project_point(const GsdsProblem& problem,
                                     const CVec& xyzw);

// Factor filter; expected_degree < 0 disables the degree backstop.
// Exposed for testing on synthetic inputs.
Poly remove_extraneous_core(const Poly& P_raw,
                            const std::vector<std::array<Complex, 2>>& samples,
                            long expected_degree, const EliminateOptions& opts,
                            Provenance* prov = nullptr);

// Spec-level wrapper: expected degree comes from the problem's (d1, d2).
Poly remove_extraneous(const Poly& P_raw, const GsdsProblem& problem,
                       const std::vector<std::array<Complex, 2>>& samples,
                       const EliminateOptions& opts = {});

ImplicitCurve implicitize(const GsdsProblem& problem,
                          const EliminateOptions& opts = {});

// Exact structure of top_form(P): distinct points with multiplicities (a
// Yun decomposition; root coordinates are numeric, multiplicities exact).
std::vector<InfinityPoint> compute_infinity_points(const Poly& P);

// Validates the distinct-point count against d1 + d2; throws
// EliminationError on mismatch.
std::vector<InfinityPoint> infinity_profile(const ImplicitCurve& curve,
                                            const GsdsProblem& problem);

// d1 copies of d2(d2-1) and d2 copies of d1(d1-1), sorted descending.
std::vector<int> expected_infinity_multiset(int d1, int d2);

}  // namespace gsds
