// Sparse multivariate polynomials over the rationals.
//
// Terms live in a map keyed by exponent vectors under graded-lex order
// (total degree first, then lexicographic by the polynomial's own variable
// order), iterated leading-term first. That ordering is canonical for
// printing, hashing and sign normalization throughout the project.
//
// Operations auto-align operands over the union of their variable lists,
// so polynomials in (x,y) and (z,w) combine transparently. All values are
// immutable in practice: every operation returns a fresh polynomial.

#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsds/rational.hpp"

namespace gsds {

using Exponents = std::vector<int>;

// Graded-lex, descending: leading term sorts first.
struct GradedLexDesc {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexDesc>;

  Poly() = default;  // zero polynomial over no variables
  explicit Poly(const Rational& constant);

  static Poly zero(std::vector<std::string> vars);
  static Poly constant(const Rational& value);
  static Poly variable(const std::string& name);
  // name^e * coeff over an explicit variable list
  static Poly monomial(std::vector<std::string> vars, Exponents exps,
                       const Rational& coeff);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()

  // Total degree; -1 is the zero polynomial's sentinel (negative-infinity
  // semantics: callers must check is_zero() before trusting arithmetic on
  // degrees).
  int total_degree() const;
  int degree_in(const std::string& var) const;
  int var_index(const std::string& var) const;  // -1 if absent

  // Leading term under graded-lex over this poly's variable order.
  const Rational& leading_coefficient() const;
  std::size_t term_count() const { return terms_.size(); }
  std::size_t max_coefficient_bits() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Rational& c, const Poly& p);

  // Semantic equality: compares over the union variable list, so the same
  // polynomial expressed over different variable orders compares equal.
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Renders terms leading-first, e.g. "3/2*x^2*y - v + 1".
  std::string to_string() const;
  std::uint64_t stable_hash() const;  // FNV over the canonical rendering

  // Extends/permutes to exactly `vars` (which must contain all variables
  // this polynomial actually uses).
  Poly aligned_to(const std::vector<std::string>& vars) const;

  // Direct term-map surgery used by the algebra layer; drops zeros.
  static Poly from_terms(std::vector<std::string> vars, TermMap terms);

 private:
  std::vector<std::string> vars_;
  TermMap terms_;  // invariant: no zero coefficients; exponent length == vars_
};

// -- spec-level operations ---------------------------------------------------

Poly partial_derivative(const Poly& p, const std::string& var);

// Homogeneous component of top total degree. Errors on zero input.
Poly top_form(const Poly& p);

// Exact evaluation; every variable of p must be bound.
Rational eval_exact(const Poly& p, const std::map<std::string, Rational>& at);

// Horner-style complex evaluation, one variable at a time.
std::complex<double> eval_complex(
    const Poly& p, const std::map<std::string, std::complex<double>>& at);

// -- structural helpers ------------------------------------------------------

// Coefficients of var^0, var^1, ... as polynomials over the same variable
// list (with var-exponent zero). Result has size degree_in(var)+1; a zero
// polynomial yields {}.
std::vector<Poly> coefficients_in(const Poly& p, const std::string& var);

Poly from_coefficients(const std::vector<Poly>& coeffs,
                       const std::string& var);

// p with each bound variable replaced by a polynomial (exact composition).
Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings);

// Union of variable lists, first operand's order first.
std::vector<std::string> variable_union(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b);

// Renames variables in place (old -> new); new names must not collide.
Poly rename_variables(const Poly& p,
                      const std::map<std::string, std::string>& renames);

// -- text format ---------------------------------------------------------

// Parses the interchange syntax: identifiers, '^' powers, '*' optional
// between factors, rational coefficients like 3/2, parentheses, unary
// minus. '/' is only allowed when the divisor is a nonzero constant.
Poly parse_poly(const std::string& text);

// -- homogenization -----------------------------------------------------

// A polynomial all of whose terms have the same total degree, carried in
// one extra variable.
struct HomogPoly {
  Poly base;            // includes the homogenizing variable
  int claimed_degree = 0;

  bool check() const;   // every term has total degree == claimed_degree
};

HomogPoly homogenize(const Poly& p, const std::string& t_var);
Poly dehomogenize(const HomogPoly& hp, const std::string& var_set_to_one);

}  // namespace gsds
