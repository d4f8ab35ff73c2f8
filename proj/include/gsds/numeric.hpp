// Double-precision machinery shared by the solvers and the tracer:
// compiled polynomial evaluators, damped Newton iteration, univariate
// complex root finding, deterministic RNG and point deduplication.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gsds/poly.hpp"

namespace gsds {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

// Deterministic RNG; identical sequences across platforms for a given
// seed (raw xorshift-mixed mt19937_64 draws, no distribution objects).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next();
  // uniform in [0,1)
  double uniform01();
  // uniform in [lo, hi], inclusive
  long uniform_int(long lo, long hi);
  double uniform(double lo, double hi);
  Complex complex_in_box(double radius);

 private:
  std::uint64_t state_;
};

// Sparse polynomial compiled over a fixed variable order for fast repeated
// evaluation with doubles.
class DoublePoly {
 public:
  DoublePoly() = default;
  static DoublePoly compile(const Poly& p,
                            const std::vector<std::string>& var_order);

  Complex eval(const CVec& point) const;
  double eval_real(const std::vector<double>& point) const;
  std::size_t n_vars() const { return max_deg_.size(); }
  // largest |coefficient| before normalization; eval uses coefficients as
  // compiled (callers decide whether to normalize the Poly first)
  double max_abs_coefficient() const { return max_abs_; }

 private:
  struct Term {
    std::vector<int> e;
    double c;
  };
  std::vector<Term> terms_;
  std::vector<int> max_deg_;
  double max_abs_ = 0.0;
  mutable std::vector<Complex> pow_scratch_;
  mutable std::vector<double> pow_scratch_real_;
};

// F and (optionally) its Jacobian evaluated at a point. J is row-major n*n.
using SystemFn = std::function<void(const CVec& x, CVec& f)>;
using JacobianFn = std::function<void(const CVec& x, std::vector<Complex>& jac)>;

struct NewtonOptions {
  int max_iterations = 200;
  int max_halvings = 40;
  double target_residual = 1e-13;
};

struct NewtonResult {
  CVec x;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Damped Newton: full step, halve until the residual decreases.
NewtonResult damped_newton(const SystemFn& F, const JacobianFn& J,
                           std::size_t n, const CVec& start,
                           const NewtonOptions& opts = {});

// Solves A x = b in place (partial pivoting); false if A is singular to
// working precision.
bool solve_linear(std::vector<Complex>& A, CVec& b, std::size_t n);

// All complex roots of sum coeffs[k] z^k (ascending), multiplicities
// repeated, via the Durand-Kerner iteration. Leading zeros are stripped;
// returns empty for constants.
CVec polynomial_roots(const CVec& coeffs);

// Greedy deterministic dedup: points within `tol` in the max norm over all
// coordinates collapse to their first representative (after sorting).
std::vector<CVec> dedup_points(std::vector<CVec> points, double tol,
                               int* merges = nullptr);

// True if the multiset of points is stable under coordinatewise complex
// conjugation within tol.
bool conjugation_symmetric(const std::vector<CVec>& points, double tol);

}  // namespace gsds
