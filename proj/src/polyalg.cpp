#include "gsds/polyalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gsds {

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly::zero(a.variables());
  if (b.is_constant()) {
    return (Rational(1) / b.constant_value()) * a;
  }
  auto vars = variable_union(a.variables(), b.variables());
  Poly::TermMap rem = a.aligned_to(vars).terms();
  const Poly d = b.aligned_to(vars);
  const auto& dlt = *d.terms().begin();
  Poly::TermMap q;
  Exponents e(vars.size());
  Exponents shifted(vars.size());
  while (!rem.empty()) {
    const auto& rlt = *rem.begin();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      e[i] = rlt.first[i] - dlt.first[i];
      if (e[i] < 0) return std::nullopt;
    }
    Rational c = rlt.second / dlt.second;
    // rem -= c * x^e * d, in place
    for (const auto& [eb, cb] : d.terms()) {
      for (std::size_t i = 0; i < vars.size(); ++i) shifted[i] = e[i] + eb[i];
      auto [it, fresh] = rem.emplace(shifted, Rational(0));
      it->second -= c * cb;
      if (it->second == 0) rem.erase(it);
    }
    q.emplace(e, std::move(c));
  }
  return Poly::from_terms(vars, std::move(q));
}

Poly divexact(const Poly& a, const Poly& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("divexact: inexact division");
  return *q;
}

Rational rational_content(const Poly& p) {
  Integer num(0), den(1);
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (num == 0) return Rational(0);
  return make_rational(num, den);
}

Poly integer_primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  return (Rational(1) / rational_content(p)) * p;
}

Poly primitive_normalize(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = integer_primitive_part(p);
  if (q.leading_coefficient() < 0) q = -q;
  return q;
}

Poly drop_unused_variables(const Poly& p) {
  const auto& vars = p.variables();
  std::vector<bool> used(vars.size(), false);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) used[i] = true;
    }
  }
  std::vector<std::string> nv;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (used[i]) nv.push_back(vars[i]);
  }
  if (nv.size() == vars.size()) return p;
  Poly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    Exponents ne;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (used[i]) ne.push_back(e[i]);
    }
    out.emplace(std::move(ne), c);
  }
  return Poly::from_terms(std::move(nv), std::move(out));
}

namespace {

Rational rational_gcd(const Rational& a, const Rational& b) {
  Integer num, den;
  mpz_gcd(num.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  if (num == 0) return Rational(0);
  return make_rational(num, den);
}

Poly sign_fix(const Poly& p) {
  if (p.is_zero()) return p;
  return p.leading_coefficient() < 0 ? -p : p;
}

// lc(B)-scaled remainder of A by B in var; any overall lc(B)^j factor is
// acceptable here because callers re-primitivize.
Poly pseudo_remainder(const Poly& A, const Poly& B, const std::string& var) {
  int db = B.degree_in(var);
  auto bc = coefficients_in(B, var);
  const Poly& lb = bc.back();
  Poly r = A;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    auto rc = coefficients_in(r, var);
    Poly shift = Poly::monomial({var}, {dr - db}, Rational(1));
    r = lb * r - rc.back() * shift * B;
  }
  return r;
}

// Primitive PRS on polynomials with positive degree in var; A, B primitive.
Poly prs_gcd(Poly A, Poly B, const std::string& var) {
  if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
  while (true) {
    if (B.is_zero()) return sign_fix(A);
    Poly R = pseudo_remainder(A, B, var);
    if (R.is_zero()) return sign_fix(B);
    if (R.degree_in(var) == 0) return Poly::constant(Rational(1));
    R = divexact(R, content_wrt(R, var));
    A = std::move(B);
    B = std::move(R);
  }
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return sign_fix(b);
  if (b.is_zero()) return sign_fix(a);
  if (a.is_constant() && b.is_constant()) {
    return Poly::constant(rational_gcd(a.constant_value(), b.constant_value()));
  }
  if (a.is_constant()) {
    return Poly::constant(rational_gcd(a.constant_value(), rational_content(b)));
  }
  if (b.is_constant()) {
    return Poly::constant(rational_gcd(b.constant_value(), rational_content(a)));
  }
  auto vars = variable_union(a.variables(), b.variables());
  Poly pa = drop_unused_variables(a);
  Poly pb = drop_unused_variables(b);

  // main variable: lowest combined degree among those used by either
  std::string var;
  long best = -1;
  for (const auto& v : vars) {
    int da = pa.degree_in(v) > 0 && pa.var_index(v) >= 0 ? pa.degree_in(v) : 0;
    int db = pb.degree_in(v) > 0 && pb.var_index(v) >= 0 ? pb.degree_in(v) : 0;
    if (pa.var_index(v) < 0) da = 0;
    if (pb.var_index(v) < 0) db = 0;
    if (da == 0 && db == 0) continue;
    long score = std::max(da, db);
    if (best < 0 || score < best) {
      best = score;
      var = v;
    }
  }
  if (var.empty()) {
    // both effectively constants after dropping unused variables
    return Poly::constant(
        rational_gcd(rational_content(pa), rational_content(pb)));
  }
  int da = pa.var_index(var) >= 0 ? pa.degree_in(var) : 0;
  int db = pb.var_index(var) >= 0 ? pb.degree_in(var) : 0;
  if (da == 0) return poly_gcd(content_wrt(pb, var), pa);
  if (db == 0) return poly_gcd(content_wrt(pa, var), pb);

  auto u = variable_union(pa.variables(), pb.variables());
  pa = pa.aligned_to(u);
  pb = pb.aligned_to(u);
  Poly ca = content_wrt(pa, var);
  Poly cb = content_wrt(pb, var);
  Poly cg = poly_gcd(ca, cb);
  Poly G = prs_gcd(divexact(pa, ca), divexact(pb, cb), var);
  return primitive_normalize(cg * G);
}

Poly content_wrt(const Poly& p, const std::string& var) {
  if (p.is_zero()) return Poly::zero(p.variables());
  auto coeffs = coefficients_in(p, var);
  Poly g = Poly::constant(Rational(0));
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant() && g.constant_value() == 1) break;
  }
  return g;
}

bool is_squarefree_in(const Poly& p, const std::string& var) {
  if (p.is_zero() || p.degree_in(var) < 1) return !p.is_zero();
  Poly g = poly_gcd(p, partial_derivative(p, var));
  return g.is_constant();
}

std::vector<std::pair<Poly, int>> yun_decomposition(const Poly& p,
                                                    const std::string& var) {
  if (p.is_zero() || p.degree_in(var) < 1) {
    throw std::invalid_argument("yun_decomposition: degree in var must be >=1");
  }
  Poly f = divexact(p, content_wrt(p, var));
  f = primitive_normalize(f);
  Poly fp = partial_derivative(f, var);
  Poly g = poly_gcd(f, fp);
  std::vector<std::pair<Poly, int>> out;
  if (g.is_constant()) {
    out.emplace_back(primitive_normalize(f), 1);
    return out;
  }
  Poly c = divexact(f, g);
  Poly d = divexact(fp, g) - partial_derivative(c, var);
  int i = 1;
  while (!(c.is_constant())) {
    Poly ai = poly_gcd(c, d);
    if (!(ai.is_constant())) out.emplace_back(primitive_normalize(ai), i);
    c = divexact(c, ai);
    d = divexact(d, ai) - partial_derivative(c, var);
    ++i;
  }
  return out;
}

Poly squarefree_primitive_part(const Poly& p, const std::string& main_var) {
  if (p.is_zero()) {
    throw std::invalid_argument("squarefree_primitive_part of zero");
  }
  Poly q = drop_unused_variables(p);
  if (q.is_constant()) return Poly::constant(Rational(1));
  std::string var = main_var;
  if (q.var_index(var) < 0 || q.degree_in(var) == 0) {
    var = q.variables().front();  // fall back to first used variable
  }
  Poly content = content_wrt(q, var);
  Poly w = divexact(q, content);
  Poly sf = divexact(w, poly_gcd(w, partial_derivative(w, var)));
  // content may carry factors in the remaining variables; recurse
  Poly rest = content.is_constant()
                  ? Poly::constant(Rational(1))
                  : squarefree_primitive_part(content, main_var);
  return primitive_normalize(sf * rest);
}

Poly poly_determinant(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  for (auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant: not square");
  }
  if (n == 0) return Poly::constant(Rational(1));
  // common variable context
  std::vector<std::string> vars;
  for (const auto& row : m) {
    for (const auto& e : row) vars = variable_union(vars, e.variables());
  }
  for (auto& row : m) {
    for (auto& e : row) e = e.aligned_to(vars);
  }
  int sign = 1;
  Poly prev = Poly::constant(Rational(1)).aligned_to(vars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Poly::zero(vars);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = Poly::zero(vars);
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

std::vector<std::vector<Poly>> sylvester_matrix(const Poly& p, const Poly& q,
                                                const std::string& var) {
  int dp = p.degree_in(var);
  int dq = q.degree_in(var);
  if (p.var_index(var) < 0 || q.var_index(var) < 0 || dp < 1 || dq < 1) {
    throw std::invalid_argument(
        "resultant: both arguments need positive degree in " + var);
  }
  auto pc = coefficients_in(p, var);
  auto qc = coefficients_in(q, var);
  const std::size_t n = static_cast<std::size_t>(dp + dq);
  std::vector<std::vector<Poly>> m(
      n, std::vector<Poly>(n, Poly::constant(Rational(0))));
  // dq rows of p, ascending coefficients, row i starting at column i
  for (int i = 0; i < dq; ++i) {
    for (int j = 0; j <= dp; ++j) m[i][i + j] = pc[j];
  }
  for (int i = 0; i < dp; ++i) {
    for (int j = 0; j <= dq; ++j) m[dq + i][i + j] = qc[j];
  }
  return m;
}

Poly resultant(const Poly& p, const Poly& q, const std::string& var) {
  Poly det = poly_determinant(sylvester_matrix(p, q, var));
  return drop_unused_variables(det);
}

Poly binary_form_resultant(const Poly& F, const Poly& G, const std::string& v1,
                           const std::string& v2, int deg_f, int deg_g) {
  auto form_coeffs = [&](const Poly& f, int deg) {
    std::vector<Poly> out(static_cast<std::size_t>(deg) + 1,
                          Poly::constant(Rational(0)));
    if (f.is_zero()) return out;
    int i1 = f.var_index(v1);
    int i2 = f.var_index(v2);
    for (const auto& [e, c] : f.terms()) {
      int k1 = i1 >= 0 ? e[i1] : 0;
      int k2 = i2 >= 0 ? e[i2] : 0;
      if (k1 + k2 != deg) {
        throw std::invalid_argument(
            "binary_form_resultant: not homogeneous of claimed degree");
      }
      Exponents ne = e;
      if (i1 >= 0) ne[i1] = 0;
      if (i2 >= 0) ne[i2] = 0;
      Poly mono = Poly::monomial(f.variables(), std::move(ne), c);
      out[k1] += mono;
    }
    return out;
  };
  auto fc = form_coeffs(F, deg_f);
  auto gc = form_coeffs(G, deg_g);
  if (deg_f == 0 && deg_g == 0) return Poly::constant(Rational(1));
  if (deg_f == 0) {
    Poly acc = Poly::constant(Rational(1));
    for (int i = 0; i < deg_g; ++i) acc *= fc[0];
    return drop_unused_variables(acc);
  }
  if (deg_g == 0) {
    Poly acc = Poly::constant(Rational(1));
    for (int i = 0; i < deg_f; ++i) acc *= gc[0];
    return drop_unused_variables(acc);
  }
  const std::size_t n = static_cast<std::size_t>(deg_f + deg_g);
  std::vector<std::vector<Poly>> m(
      n, std::vector<Poly>(n, Poly::constant(Rational(0))));
  for (int i = 0; i < deg_g; ++i) {
    for (int j = 0; j <= deg_f; ++j) m[i][i + j] = fc[j];
  }
  for (int i = 0; i < deg_f; ++i) {
    for (int j = 0; j <= deg_g; ++j) m[deg_g + i][i + j] = gc[j];
  }
  return drop_unused_variables(poly_determinant(std::move(m)));
}

}  // namespace gsds
