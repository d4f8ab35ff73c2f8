// Elimination-theory primitives on top of Poly: exact division, contents,
// gcd, squarefree splitting, Sylvester resultants.
//
// Conventions, frozen here and used everywhere:
//
//  * resultant(p, q, var) is the determinant of the Sylvester-type matrix
//    whose first deg_var(q) rows hold p's coefficients in ASCENDING degree
//    (row i starting at column i), followed by deg_var(p) rows of q's
//    coefficients in the same layout. This equals the classical resultant
//    times (-1)^(deg_var(p) * deg_var(q)). Fixed points of the convention:
//    Res_x(x - a, x - b) = b - a and Res_x(x^2 - u, x) = -u.
//
//  * "primitive normalized" means integer coprime coefficients with a
//    positive leading coefficient in graded-lex order.
//
//  * gcd results are primitive normalized; gcd of rational constants is the
//    nonnegative rational gcd(numerators)/lcm(denominators).

#pragma once

#include <optional>
#include <vector>

#include "gsds/poly.hpp"

namespace gsds {

// Quotient a/b when b divides a exactly; std::nullopt otherwise.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

// exact_divide that throws std::logic_error on failure.
Poly divexact(const Poly& a, const Poly& b);

// gcd(numerators)/lcm(denominators) over all coefficients, >= 0.
Rational rational_content(const Poly& p);

// p scaled to integer coprime coefficients, leading sign preserved.
Poly integer_primitive_part(const Poly& p);

// Integer coprime coefficients and positive graded-lex leading coefficient.
Poly primitive_normalize(const Poly& p);

// Removes variables that no term uses (keeps relative order).
Poly drop_unused_variables(const Poly& p);

// Multivariate gcd by primitive pseudo-remainder sequences.
Poly poly_gcd(const Poly& a, const Poly& b);

// gcd of the var^k coefficient polynomials (poly in the other variables,
// rational content included).
Poly content_wrt(const Poly& p, const std::string& var);

bool is_squarefree_in(const Poly& p, const std::string& var);

// Yun splitting with respect to var: returns (factor, multiplicity) pairs
// with each factor squarefree, pairwise coprime, positive degree in var,
// such that p = content * prod factor_i^mult_i. Factors are primitive
// normalized; p must have positive degree in var.
std::vector<std::pair<Poly, int>> yun_decomposition(const Poly& p,
                                                    const std::string& var);

// Same zero set, every irreducible factor once, primitive normalized.
// main_var seeds the recursion over the remaining variables.
Poly squarefree_primitive_part(const Poly& p, const std::string& main_var);

// Fraction-free (Bareiss) determinant; all entries must share a variable
// context (they are aligned internally).
Poly poly_determinant(std::vector<std::vector<Poly>> m);

// Sylvester matrix in the frozen layout above. Both degrees must be >= 1.
std::vector<std::vector<Poly>> sylvester_matrix(const Poly& p, const Poly& q,
                                                const std::string& var);

Poly resultant(const Poly& p, const Poly& q, const std::string& var);

// Resultant of two homogeneous binary forms in (v1, v2) with polynomial
// coefficients, by claimed degrees; no dehomogenization corner cases. A
// constant form (claimed degree 0) c yields c^(other degree).
Poly binary_form_resultant(const Poly& F, const Poly& G,
                           const std::string& v1, const std::string& v2,
                           int deg_f, int deg_g);

}  // namespace gsds
