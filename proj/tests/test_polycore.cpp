#include <complex>
#include <random>

#include "doctest.h"
#include "gsds/poly.hpp"
#include "gsds/polyalg.hpp"

using namespace gsds;

namespace {

Poly P(const std::string& s) { return parse_poly(s); }

// deterministic random polynomial: degree <= max_deg per variable,
// small integer coefficients, guaranteed positive degree in vars[0]
Poly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars,
                 int max_deg, int n_terms) {
  Poly acc = Poly::zero(vars);
  for (int t = 0; t < n_terms; ++t) {
    Exponents e(vars.size());
    for (auto& k : e) k = static_cast<int>(rng() % (max_deg + 1));
    long c = static_cast<long>(rng() % 19) - 9;
    if (c == 0) c = 1;
    acc += Poly::monomial(vars, e, Rational(c));
  }
  if (acc.is_zero() || acc.degree_in(vars[0]) < 1) {
    Exponents e(vars.size(), 0);
    e[0] = 1;
    acc += Poly::monomial(vars, e, Rational(1));
  }
  return acc;
}

}  // namespace

TEST_CASE("arithmetic basics") {
  CHECK(P("x+y") + P("x-y") == P("2x"));
  CHECK(P("(x+1)*(x-1)") == P("x^2-1"));
  Poly p = P("3/2*x^2*y - 7");
  CHECK(p + Poly() == p);
  CHECK(p - p == Poly());
  CHECK(P("x") * P("y") == P("y") * P("x"));
}

TEST_CASE("parser and printing") {
  CHECK(P("x^2 + y^2 - 1").total_degree() == 2);
  CHECK(P("3/2").constant_value() == make_rational(3, 2));
  CHECK(P("xy").variables().size() == 1);  // identifiers are maximal words
  CHECK(P("2(x+1)") == P("2x+2"));
  CHECK(P("-x^2") == -P("x^2"));
  CHECK_THROWS(parse_poly("x +"));
  CHECK_THROWS(parse_poly("x / y"));
  Poly q = P("x^3 - 2/3*x*y + y - 5");
  CHECK(parse_poly(q.to_string()) == q);
  CHECK(Poly().to_string() == "0");
}

TEST_CASE("partial derivatives") {
  CHECK(partial_derivative(P("x^2+y^2-1"), "x") == P("2x"));
  // x^2 regarded in Q[x,y]: derivative in y is 0
  Poly x2 = P("x^2").aligned_to({"x", "y"});
  CHECK(partial_derivative(x2, "y") == Poly());
  // a variable outside the polynomial's context is an error
  CHECK_THROWS(partial_derivative(P("x^2"), "q"));
  CHECK(partial_derivative(P("b*x*z - a*x*w"), "x") == P("b*z - a*w"));
}

TEST_CASE("top form") {
  CHECK(top_form(P("x^2+y^2-1")) == P("x^2+y^2"));
  CHECK(top_form(P("x*y-1")) == P("x*y"));
  CHECK(top_form(P("x^3+x")) == P("x^3"));
  CHECK_THROWS(top_form(Poly()));
}

TEST_CASE("evaluation") {
  std::map<std::string, Rational> at{{"x", Rational(1)}, {"y", Rational(0)}};
  CHECK(eval_exact(P("x^2+y^2-1"), at) == 0);
  at["x"] = Rational(2);
  CHECK(eval_exact(P("x^2+y^2-1"), at) == 3);
  std::map<std::string, Rational> hyp{{"x", Rational(4)},
                                      {"y", make_rational(1, 4)}};
  CHECK(eval_exact(P("x*y-1"), hyp) == 0);
  CHECK_THROWS(eval_exact(P("x+y"), {{"x", Rational(1)}}));
}

TEST_CASE("resultant frozen convention") {
  // Res_x(x-a, x-b) = b - a
  CHECK(resultant(P("x-a"), P("x-b"), "x") == P("b-a"));
  // Res_x(x^2+1, x^2-1) = 4
  CHECK(resultant(P("x^2+1"), P("x^2-1"), "x") == P("4"));
  // Res_x(x^2-u, x) = -u
  CHECK(resultant(P("x^2-u"), P("x"), "x") == P("0-u"));
  CHECK_THROWS(resultant(P("x+1"), P("y"), "x"));  // degree 0 in x
}

TEST_CASE("resultant swap sign and multiplicativity") {
  std::mt19937_64 rng(20240811);
  for (int it = 0; it < 40; ++it) {
    Poly p = random_poly(rng, {"x", "y"}, 3, 4);
    Poly q = random_poly(rng, {"x", "y"}, 3, 4);
    Poly r = random_poly(rng, {"x", "y"}, 2, 3);
    int m = p.degree_in("x");
    int n = q.degree_in("x");
    Poly rs = resultant(p, q, "x");
    Poly sr = resultant(q, p, "x");
    Poly expect = ((m * n) % 2 == 0) ? rs : -rs;
    CHECK(sr == expect);
    // multiplicativity in the second argument
    Poly lhs = resultant(p, q * r, "x");
    Poly rhs = resultant(p, q, "x") * resultant(p, r, "x");
    CHECK(lhs == rhs);
  }
}

TEST_CASE("squarefree primitive part") {
  Poly a = make_rational(3, 2) * (P("u-v") * P("u-v"));
  CHECK(squarefree_primitive_part(a, "u") == P("u-v"));
  CHECK(squarefree_primitive_part(P("u^2-v^2"), "u") == P("u^2-v^2"));
  Poly b = P("v") * P("(u^2+v^2)^2");
  CHECK(squarefree_primitive_part(b, "u") == P("v") * P("u^2+v^2"));
  CHECK_THROWS(squarefree_primitive_part(Poly(), "u"));
  // idempotence on random inputs
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    Poly p = random_poly(rng, {"u", "v"}, 3, 4);
    Poly s1 = squarefree_primitive_part(p, "u");
    CHECK(squarefree_primitive_part(s1, "u") == s1);
  }
}

TEST_CASE("gcd and yun") {
  Poly g = poly_gcd(P("x^2-1") * P("x+2"), P("x^2+3x+2"));
  // common factor: (x+1)(x+2)
  CHECK(g == P("(x+1)*(x+2)"));
  CHECK(poly_gcd(P("x+1"), P("x-1")).is_constant());
  Poly f = P("(x+y)^3") * P("(x-y)^2") * P("x+1");
  auto yun = yun_decomposition(f, "x");
  REQUIRE(yun.size() == 3);
  CHECK(yun[0].first == P("x+1"));
  CHECK(yun[0].second == 1);
  CHECK(yun[1].first == P("x-y"));
  CHECK(yun[1].second == 2);
  CHECK(yun[2].first == P("x+y"));
  CHECK(yun[2].second == 3);
}

TEST_CASE("top form degree properties") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 20; ++it) {
    Poly p = random_poly(rng, {"x", "y", "z"}, 3, 5);
    Poly t = top_form(p);
    CHECK(t.total_degree() == p.total_degree());
    Poly rest = p - t;
    if (!rest.is_zero()) CHECK(rest.total_degree() < p.total_degree());
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 100; ++it) {
    Poly p = random_poly(rng, {"x", "y"}, 3, 4);
    Poly q = random_poly(rng, {"x", "y"}, 3, 4);
    std::map<std::string, Rational> at{
        {"x", make_rational(static_cast<long>(rng() % 21) - 10,
                            1 + static_cast<long>(rng() % 6))},
        {"y", make_rational(static_cast<long>(rng() % 21) - 10,
                            1 + static_cast<long>(rng() % 6))}};
    CHECK(eval_exact(p * q, at) == eval_exact(p, at) * eval_exact(q, at));
    CHECK(eval_exact(p + q, at) == eval_exact(p, at) + eval_exact(q, at));
  }
}

TEST_CASE("float evaluation tracks exact evaluation") {
  std::mt19937_64 rng(777);
  for (int it = 0; it < 50; ++it) {
    Poly acc = Poly::zero({"x", "y"});
    for (int t = 0; t < 6; ++t) {
      Exponents e{static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
      long c = static_cast<long>(rng() % 2000001) - 1000000;
      acc += Poly::monomial({"x", "y"}, e, Rational(c));
    }
    if (acc.is_zero()) continue;
    long xi = static_cast<long>(rng() % 21) - 10;
    long yi = static_cast<long>(rng() % 21) - 10;
    Rational ex = eval_exact(
        acc, {{"x", Rational(xi)}, {"y", Rational(yi)}});
    std::complex<double> fl = eval_complex(
        acc, {{"x", {double(xi), 0.0}}, {"y", {double(yi), 0.0}}});
    double exd = to_double(ex);
    if (exd == 0.0) {
      CHECK(std::abs(fl) < 1e-6);
    } else {
      CHECK(std::abs(fl.real() - exd) / std::abs(exd) < 1e-12);
    }
  }
}

TEST_CASE("bareiss determinant") {
  std::vector<std::vector<Poly>> m{
      {P("x"), P("1"), P("0")},
      {P("1"), P("x"), P("1")},
      {P("0"), P("1"), P("x")},
  };
  CHECK(poly_determinant(m) == P("x^3 - 2x"));
  std::vector<std::vector<Poly>> sing{
      {P("x"), P("x")},
      {P("y"), P("y")},
  };
  CHECK(poly_determinant(sing).is_zero());
  // pivoting path: zero in the corner
  std::vector<std::vector<Poly>> piv{
      {P("0"), P("1")},
      {P("1"), P("0")},
  };
  CHECK(poly_determinant(piv) == P("0-1"));
}

TEST_CASE("homogenization") {
  HomogPoly hp = homogenize(P("x^2+y^2-1"), "t");
  CHECK(hp.claimed_degree == 2);
  CHECK(hp.check());
  CHECK(hp.base == P("x^2+y^2-t^2"));
  CHECK(dehomogenize(hp, "t") == P("x^2+y^2-1"));
  CHECK_THROWS(homogenize(P("x+t"), "t"));
}

TEST_CASE("binary form resultant") {
  // x^2+y^2 and 2x as forms of degree 2 and 1: no common projective root
  Poly rf = binary_form_resultant(P("x^2+y^2"), P("2x"), "x", "y", 2, 1);
  CHECK(rf.is_constant());
  CHECK(rf.constant_value() != 0);
  // xy and y share the root (1:0)
  Poly rg = binary_form_resultant(P("x*y"), P("y"), "x", "y", 2, 1);
  CHECK(rg.is_zero());
  CHECK_THROWS(binary_form_resultant(P("x^2+y"), P("x"), "x", "y", 2, 1));
}
