// Builds validated problem instances: the curve pair, the projection
// quadruple, the critical-system polynomial h and the cusp polynomial s.
//
// "Generic position" is operationalized as an explicit checklist evaluated
// with exact arithmetic plus seeded resampling of the quadruple:
//
//   G1  each curve is smooth (resultant certificate over deterministic
//       shears, refined by a numeric singular-point search when the
//       certificate degenerates)
//   G2  the top form of each curve is squarefree (distinct points at
//       infinity)
//   G3  neither partial of the top form vanishes at any infinity point
//   G4  every infinity pairing constant A_ij is nonzero (checked through
//       two nested binary-form resultants, no root extraction)
//   G5  ad - bc != 0
//   G6  infinity points of the two projected families stay distinct
//   G7  leading w-coefficients of the fiber system are nonzero, so the
//       first-stage resultants are nondegenerate (advisory; elimination
//       survives failures via extraneous-factor removal)
//
// G1-G3 depend only on the curves; G4-G7 also on the quadruple. G3 and G7
// are advisory for explicitly supplied affine pairs: the canonical
// hyperbola xy=1 violates G3 at infinity yet has a perfectly good
// discriminant, certified downstream by the exact degree and count checks.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsds/poly.hpp"

namespace gsds {

struct PlaneCurve {
  Poly poly;                      // exactly two variables
  std::array<std::string, 2> vars;
  int degree = 0;

  // Validates: nonzero, total degree >= 2, variables within `vars`.
  static PlaneCurve make(Poly p, std::array<std::string, 2> vars);
};

struct Quadruple {
  Rational a, b, c, d;
  Rational det() const { return a * d - b * c; }
};

// 2x2 rational matrix plus translation; an affine map of the plane.
struct AffineMap {
  std::array<std::array<Rational, 2>, 2> m;
  std::array<Rational, 2> t;

  Rational det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  AffineMap inverse() const;  // throws std::invalid_argument if singular
  static AffineMap identity();
};

struct AffinePair {
  AffineMap G, H;
};

struct GenericityCheck {
  std::string name;
  bool pass = false;
  bool advisory = false;
  std::string note;
};

struct GsdsProblem {
  PlaneCurve X;  // in (x, y)
  PlaneCurve Y;  // in (z, w)
  Quadruple quad;
  Poly h;  // critical-system polynomial over (x,y,z,w)
  Poly s;  // cusp polynomial over (x,y,z,w)
  std::uint64_t seed = 0;
  int resamples = 0;
  std::vector<GenericityCheck> genericity_log;

  int d1() const { return X.degree; }
  int d2() const { return Y.degree; }
};

struct SceneOptions {
  long quad_height = 64;   // numerators/denominators drawn from [1, height]
  int max_resamples = 64;
  int smooth_check_starts = 256;
};

// h = b f_x g_z - a f_x g_w + d f_y g_z - c f_y g_w, expanded exactly.
// Throws on variable collision between f and g.
Poly build_h(const PlaneCurve& X, const PlaneCurve& Y, const Quadruple& q);

// s = h_x (a g_w - b g_z) + h_y (c g_w - d g_z) - h_z g_w + h_w g_z.
Poly build_s(const PlaneCurve& X, const PlaneCurve& Y, const Poly& h,
             const Quadruple& q);

// Runs the full checklist; never throws, callers decide on failures.
std::vector<GenericityCheck> validate_genericity(const PlaneCurve& X,
                                                 const PlaneCurve& Y,
                                                 const Quadruple& quad,
                                                 const SceneOptions& opts = {});

// Curve-only checks G1-G3.
std::vector<GenericityCheck> validate_curves(const PlaneCurve& X,
                                             const PlaneCurve& Y,
                                             const SceneOptions& opts = {});

// Draws quadruples from a seeded deterministic RNG until the checklist
// passes. Throws std::runtime_error if the curves fail G1-G3 or the retry
// budget is exhausted.
GsdsProblem sample_problem(const PlaneCurve& X, const PlaneCurve& Y,
                           std::uint64_t seed, const SceneOptions& opts = {});

// Transforms the pair by G^-1, H^-1 exactly and uses the plain projection
// quadruple (1,0,0,1) (the midpoint map with the overall 1/2 dropped).
// Hard checks: G1, G2, G4, G5, G6; advisory: G3, G7.
GsdsProblem pair_to_quadruple(const PlaneCurve& X, const PlaneCurve& Y,
                              const AffinePair& pair,
                              const SceneOptions& opts = {});

// f composed with the inverse of an affine map (image curve's equation).
Poly transform_curve(const Poly& f, const std::array<std::string, 2>& vars,
                     const AffineMap& map);

bool all_passed(const std::vector<GenericityCheck>& checks,
                bool include_advisory = false);
std::string failed_names(const std::vector<GenericityCheck>& checks,
                         bool include_advisory = false);

}  // namespace gsds
