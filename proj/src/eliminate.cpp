#include "gsds/eliminate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsds/polyalg.hpp"

namespace gsds {

namespace {

void check_budget(const Poly& p, const EliminateOptions& opts,
                  const std::string& stage) {
  if (p.term_count() > opts.term_budget) {
    throw EliminationError(EliminationError::Kind::budget,
                           stage + ": term count " +
                               std::to_string(p.term_count()) +
                               " exceeds budget");
  }
  if (p.max_coefficient_bits() > opts.coeff_bit_budget) {
    throw EliminationError(EliminationError::Kind::budget,
                           stage + ": coefficient bits exceed budget");
  }
}

}  // namespace

std::array<Poly, 3> substitute_fiber(const GsdsProblem& problem) {
  const auto& xv = problem.X.vars;
  const auto& yv = problem.Y.vars;
  for (const auto& v : {xv[0], xv[1], yv[0], yv[1]}) {
    if (v == "u" || v == "v") {
      throw std::invalid_argument(
          "curve variables collide with image coordinates u, v");
    }
  }
  Poly u = Poly::variable("u");
  Poly v = Poly::variable("v");
  Poly z = Poly::variable(yv[0]);
  Poly w = Poly::variable(yv[1]);
  std::map<std::string, Poly> subs;
  subs.emplace(xv[0], u - problem.quad.a * z - problem.quad.b * w);
  subs.emplace(xv[1], v - problem.quad.c * z - problem.quad.d * w);
  std::vector<std::string> fiber_vars{yv[0], yv[1], "u", "v"};
  Poly F1 = drop_unused_variables(substitute(problem.X.poly, subs));
  Poly F2 = drop_unused_variables(problem.Y.poly);
  Poly F3 = drop_unused_variables(substitute(problem.h, subs));
  return {F1.aligned_to(fiber_vars), F2.aligned_to(fiber_vars),
          F3.aligned_to(fiber_vars)};
}

std::vector<CVec> sample_critical_points(const GsdsProblem& problem,
                                         const EliminateOptions& opts) {
  const auto& xv = problem.X.vars;
  const auto& yv = problem.Y.vars;
  std::vector<std::string> vars{xv[0], xv[1], yv[0], yv[1]};
  const Poly& f = problem.X.poly;
  const Poly& g = problem.Y.poly;
  const Poly& h = problem.h;
  auto scale_of = [](const Poly& p) {
    double m = 0.0;
    for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
    return m > 0 ? m : 1.0;
  };
  double sf = scale_of(f), sg = scale_of(g), sh = scale_of(h);
  DoublePoly df = DoublePoly::compile(f, vars);
  DoublePoly dg = DoublePoly::compile(g, vars);
  DoublePoly dh = DoublePoly::compile(h, vars);
  std::vector<DoublePoly> jf, jg, jh;
  for (const auto& vn : vars) {
    auto dpart = [&](const Poly& p) {
      return p.var_index(vn) >= 0 ? partial_derivative(p, vn)
                                  : Poly::zero(p.variables());
    };
    jf.push_back(DoublePoly::compile(dpart(f), vars));
    jg.push_back(DoublePoly::compile(dpart(g), vars));
    jh.push_back(DoublePoly::compile(dpart(h), vars));
  }
  std::uint64_t seed = opts.sample_seed
                           ? opts.sample_seed
                           : (problem.seed * 0x9e3779b97f4a7c15ull + 0x5151u);
  Rng rng(seed);
  std::vector<CVec> samples;
  CVec slice(5);  // l0 + l1 x + l2 y + l3 z + l4 w
  auto new_slice = [&]() {
    for (auto& c : slice) c = rng.complex_in_box(1.0);
  };
  new_slice();
  SystemFn F = [&](const CVec& p, CVec& out) {
    out[0] = df.eval(p) / sf;
    out[1] = dg.eval(p) / sg;
    out[2] = dh.eval(p) / sh;
    out[3] = slice[0] + slice[1] * p[0] + slice[2] * p[1] + slice[3] * p[2] +
             slice[4] * p[3];
  };
  JacobianFn J = [&](const CVec& p, std::vector<Complex>& jac) {
    for (int k = 0; k < 4; ++k) {
      jac[0 * 4 + k] = jf[k].eval(p) / sf;
      jac[1 * 4 + k] = jg[k].eval(p) / sg;
      jac[2 * 4 + k] = jh[k].eval(p) / sh;
      jac[3 * 4 + k] = slice[k + 1];
    }
  };
  int since_new_slice = 0;
  for (int s = 0; s < opts.sample_start_budget &&
                  samples.size() < static_cast<std::size_t>(opts.sample_count);
       ++s) {
    if (++since_new_slice > 6) {
      new_slice();
      since_new_slice = 0;
    }
    CVec start(4);
    for (auto& c : start) c = rng.complex_in_box(opts.sample_box_radius);
    NewtonResult r = damped_newton(F, J, 4, start);
    if (!r.converged) continue;
    double rf = std::abs(df.eval(r.x)) / sf;
    double rg = std::abs(dg.eval(r.x)) / sg;
    double rh = std::abs(dh.eval(r.x)) / sh;
    if (std::max({rf, rg, rh}) > opts.sample_residual) continue;
    bool dup = false;
    for (const auto& old : samples) {
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(old[i] - r.x[i]));
      if (d < 1e-6) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      samples.push_back(r.x);
      new_slice();
      since_new_slice = 0;
    }
  }
  return samples;
}

std::array<Complex, 2> project_point(const GsdsProblem& problem,
                                     const CVec& xyzw) {
  double a = to_double(problem.quad.a), b = to_double(problem.quad.b);
  double c = to_double(problem.quad.c), d = to_double(problem.quad.d);
  return {xyzw[0] + a * xyzw[2] + b * xyzw[3],
          xyzw[1] + c * xyzw[2] + d * xyzw[3]};
}

namespace {

struct CandidateFactor {
  Poly poly;
  int multiplicity;
};

// splits content (factors missing one of u, v) and Yun levels
std::vector<CandidateFactor> split_factors(const Poly& P_raw) {
  std::vector<CandidateFactor> out;
  Poly W = drop_unused_variables(P_raw).aligned_to({"u", "v"});
  auto push_single_var = [&](const Poly& c) {
    // c uses at most one variable; split it by multiplicity as well
    Poly cc = drop_unused_variables(c);
    if (cc.is_constant()) return;
    const std::string mv = cc.variables().front();
    for (auto& [fac, mult] : yun_decomposition(cc, mv)) {
      out.push_back({fac.aligned_to({"u", "v"}), mult});
    }
  };
  Poly cu = content_wrt(W, "u");  // factors free of u
  if (!cu.is_constant()) {
    W = divexact(W, cu);
    push_single_var(cu);
  }
  Poly cv = content_wrt(W, "v");  // factors free of v
  if (!cv.is_constant()) {
    W = divexact(W, cv);
    push_single_var(cv);
  }
  if (!W.is_constant() && W.degree_in("u") >= 1) {
    for (auto& [fac, mult] : yun_decomposition(W, "u")) {
      out.push_back({fac, mult});
    }
  }
  return out;
}

}  // namespace

Poly remove_extraneous_core(const Poly& P_raw,
                            const std::vector<std::array<Complex, 2>>& samples,
                            long expected_degree, const EliminateOptions& opts,
                            Provenance* prov) {
  if (samples.size() < static_cast<std::size_t>(opts.sample_count)) {
    throw std::invalid_argument(
        "remove_extraneous: need at least " +
        std::to_string(opts.sample_count) + " samples, got " +
        std::to_string(samples.size()));
  }
  if (P_raw.is_zero()) {
    throw EliminationError(EliminationError::Kind::degenerate,
                           "eliminated polynomial is identically zero");
  }
  auto factors = split_factors(P_raw);
  const int need = static_cast<int>(
      std::ceil(opts.vanish_fraction * static_cast<double>(samples.size())));
  Poly kept = Poly::constant(Rational(1));
  for (const auto& cf : factors) {
    // relative vanishing: |A(s)| against the term-magnitude sum at s
    std::vector<std::pair<std::array<int, 2>, double>> terms;
    int iu = cf.poly.var_index("u");
    int iv = cf.poly.var_index("v");
    for (const auto& [e, c] : cf.poly.terms()) {
      std::array<int, 2> ee{iu >= 0 ? e[iu] : 0, iv >= 0 ? e[iv] : 0};
      terms.emplace_back(ee, to_double(c));
    }
    int vanished = 0;
    for (const auto& s : samples) {
      Complex acc(0, 0);
      double scale = 0.0;
      double au = std::abs(s[0]), av = std::abs(s[1]);
      for (const auto& [e, c] : terms) {
        Complex m = c * std::pow(s[0], e[0]) * std::pow(s[1], e[1]);
        acc += m;
        scale += std::abs(c) * std::pow(au, e[0]) * std::pow(av, e[1]);
      }
      if (scale <= 0) scale = 1.0;
      if (std::abs(acc) < opts.vanish_tol * scale) ++vanished;
    }
    bool keep = vanished >= need;
    if (keep) kept *= cf.poly;
    if (prov) {
      FactorRecord rec;
      rec.degree = cf.poly.total_degree();
      rec.multiplicity = cf.multiplicity;
      rec.vanished_at = vanished;
      rec.kept = keep;
      prov->factors.push_back(rec);
    }
  }
  if (prov) prov->samples_used = static_cast<int>(samples.size());
  if (kept.is_constant()) {
    throw EliminationError(EliminationError::Kind::no_factor,
                           "no factor vanishes on the critical-set samples");
  }
  Poly P = primitive_normalize(kept);
  if (expected_degree >= 0 && P.total_degree() != expected_degree) {
    std::ostringstream os;
    os << "retained degree " << P.total_degree() << " != closed-form degree "
       << expected_degree;
    throw EliminationError(EliminationError::Kind::degree_mismatch, os.str());
  }
  return P;
}

Poly remove_extraneous(const Poly& P_raw, const GsdsProblem& problem,
                       const std::vector<std::array<Complex, 2>>& samples,
                       const EliminateOptions& opts) {
  long d1 = problem.d1(), d2 = problem.d2();
  return remove_extraneous_core(P_raw, samples, d1 * d2 * (d1 + d2 - 2), opts,
                                nullptr);
}

namespace {

Poly eliminate_once(const std::array<Poly, 3>& F, const std::string& first,
                    const std::string& second, const EliminateOptions& opts,
                    Provenance* prov) {
  auto res = [&](const Poly& p, const Poly& q, const std::string& var) {
    if (p.degree_in(var) < 1 || q.degree_in(var) < 1) {
      throw EliminationError(
          EliminationError::Kind::degenerate,
          "fiber system degenerate: no " + var + " dependence");
    }
    return resultant(p, q, var);
  };
  Poly R1 = res(F[0], F[1], first);
  check_budget(R1, opts, "R1");
  Poly R2 = res(F[0], F[2], first);
  check_budget(R2, opts, "R2");
  if (R1.is_zero() || R2.is_zero()) {
    throw EliminationError(EliminationError::Kind::degenerate,
                           "first-stage resultant vanished identically");
  }
  Poly R3 = res(R1, R2, second);
  check_budget(R3, opts, "R3");
  if (R3.is_zero()) {
    throw EliminationError(EliminationError::Kind::degenerate,
                           "second-stage resultant vanished identically");
  }
  if (prov) {
    prov->elimination_order = first + " then " + second;
    prov->deg_r1 = R1.total_degree();
    prov->deg_r2 = R2.total_degree();
    prov->deg_r3 = R3.total_degree();
  }
  return R3;
}

}  // namespace

ImplicitCurve implicitize(const GsdsProblem& problem,
                          const EliminateOptions& opts) {
  auto F = substitute_fiber(problem);
  const std::string zvar = problem.Y.vars[0];
  const std::string wvar = problem.Y.vars[1];
  std::string first = opts.order == 0 ? wvar : zvar;
  std::string second = opts.order == 0 ? zvar : wvar;

  auto points = sample_critical_points(problem, opts);
  if (points.size() < static_cast<std::size_t>(opts.sample_count)) {
    throw EliminationError(
        EliminationError::Kind::degenerate,
        "could not sample enough critical points (" +
            std::to_string(points.size()) + " of " +
            std::to_string(opts.sample_count) + ")");
  }
  std::vector<std::array<Complex, 2>> samples;
  samples.reserve(points.size());
  for (const auto& p : points) samples.push_back(project_point(problem, p));

  long d1 = problem.d1(), d2 = problem.d2();
  long expected = d1 * d2 * (d1 + d2 - 2);

  ImplicitCurve out;
  try {
    Poly R3 = eliminate_once(F, first, second, opts, &out.provenance);
    out.P = remove_extraneous_core(R3, samples, expected, opts,
                                   &out.provenance);
  } catch (const EliminationError& e) {
    if (!opts.try_other_order_on_failure ||
        e.kind() == EliminationError::Kind::budget) {
      throw;
    }
    // retry with the other elimination order before giving up
    out.provenance = Provenance{};
    out.provenance.notes = std::string("first order failed: ") + e.what();
    Poly R3 = eliminate_once(F, second, first, opts, &out.provenance);
    out.P = remove_extraneous_core(R3, samples, expected, opts,
                                   &out.provenance);
  }
  out.degree = out.P.total_degree();
  out.infinity_points = compute_infinity_points(out.P);
  return out;
}

std::vector<InfinityPoint> compute_infinity_points(const Poly& P) {
  Poly T = top_form(P.aligned_to(
      variable_union(P.variables(), std::vector<std::string>{"u", "v"})));
  int D = T.total_degree();
  // univariate restriction t(u) = T(u, 1)
  Poly tu = drop_unused_variables(
      substitute(T, {{"v", Poly::constant(Rational(1))}}));
  std::vector<InfinityPoint> out;
  int deg_u = tu.is_constant() ? 0 : tu.degree_in("u");
  int at_one_zero = D - deg_u;
  if (at_one_zero > 0) {
    out.push_back({Complex(1, 0), Complex(0, 0), at_one_zero});
  }
  if (deg_u >= 1) {
    for (const auto& [fac, mult] : yun_decomposition(tu, "u")) {
      // numeric roots of this squarefree level
      auto coeffs = coefficients_in(fac, "u");
      CVec c;
      double scale = 0.0;
      for (const auto& cp : coeffs) {
        double val = cp.is_zero() ? 0.0 : to_double(cp.constant_value());
        scale = std::max(scale, std::abs(val));
        c.push_back(Complex(val, 0));
      }
      if (scale > 0) {
        for (auto& x : c) x /= scale;
      }
      for (const auto& r : polynomial_roots(c)) {
        out.push_back({r, Complex(1, 0), mult});
      }
    }
  }
  // deterministic order: by multiplicity desc, then by coordinates
  std::sort(out.begin(), out.end(), [](const InfinityPoint& a,
                                       const InfinityPoint& b) {
    if (a.multiplicity != b.multiplicity)
      return a.multiplicity > b.multiplicity;
    if (a.beta.real() != b.beta.real()) return a.beta.real() < b.beta.real();
    if (a.alpha.real() != b.alpha.real())
      return a.alpha.real() < b.alpha.real();
    return a.alpha.imag() < b.alpha.imag();
  });
  return out;
}

std::vector<InfinityPoint> infinity_profile(const ImplicitCurve& curve,
                                            const GsdsProblem& problem) {
  long want = problem.d1() + problem.d2();
  long got = static_cast<long>(curve.infinity_points.size());
  if (got != want) {
    std::ostringstream os;
    os << "distinct infinity points " << got << " != d1+d2 = " << want
       << " (non-generic instance)";
    throw EliminationError(EliminationError::Kind::degree_mismatch, os.str());
  }
  return curve.infinity_points;
}

std::vector<int> expected_infinity_multiset(int d1, int d2) {
  std::vector<int> m;
  for (int i = 0; i < d1; ++i) m.push_back(d2 * (d2 - 1));
  for (int i = 0; i < d2; ++i) m.push_back(d1 * (d1 - 1));
  std::sort(m.rbegin(), m.rend());
  return m;
}

}  // namespace gsds
