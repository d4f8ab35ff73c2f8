#include "gsds/scene.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gsds/numeric.hpp"
#include "gsds/polyalg.hpp"

namespace gsds {

PlaneCurve PlaneCurve::make(Poly p, std::array<std::string, 2> vars) {
  if (p.is_zero()) throw std::invalid_argument("curve polynomial is zero");
  Poly q = drop_unused_variables(p);
  for (const auto& v : q.variables()) {
    if (v != vars[0] && v != vars[1]) {
      throw std::invalid_argument("curve uses unexpected variable " + v);
    }
  }
  PlaneCurve c;
  c.poly = q.aligned_to({vars[0], vars[1]});
  c.vars = vars;
  c.degree = c.poly.total_degree();
  if (c.degree < 2) {
    throw std::invalid_argument("curve degree must be >= 2 (got " +
                                std::to_string(c.degree) + ")");
  }
  return c;
}

AffineMap AffineMap::identity() {
  AffineMap a;
  a.m = {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  a.t = {Rational(0), Rational(0)};
  return a;
}

AffineMap AffineMap::inverse() const {
  Rational dt = det();
  if (dt == 0) throw std::invalid_argument("singular affine map");
  AffineMap inv;
  inv.m[0][0] = m[1][1] / dt;
  inv.m[0][1] = -m[0][1] / dt;
  inv.m[1][0] = -m[1][0] / dt;
  inv.m[1][1] = m[0][0] / dt;
  inv.t[0] = -(inv.m[0][0] * t[0] + inv.m[0][1] * t[1]);
  inv.t[1] = -(inv.m[1][0] * t[0] + inv.m[1][1] * t[1]);
  return inv;
}

Poly transform_curve(const Poly& f, const std::array<std::string, 2>& vars,
                     const AffineMap& map) {
  Poly X = Poly::variable(vars[0]);
  Poly Y = Poly::variable(vars[1]);
  std::map<std::string, Poly> b;
  b.emplace(vars[0], Rational(map.m[0][0]) * X + map.m[0][1] * Y +
                         Poly::constant(map.t[0]));
  b.emplace(vars[1], Rational(map.m[1][0]) * X + map.m[1][1] * Y +
                         Poly::constant(map.t[1]));
  return substitute(f, b);
}

Poly build_h(const PlaneCurve& X, const PlaneCurve& Y, const Quadruple& q) {
  for (const auto& v : X.vars) {
    if (v == Y.vars[0] || v == Y.vars[1]) {
      throw std::invalid_argument("variable collision between curves: " + v);
    }
  }
  Poly fx = partial_derivative(X.poly, X.vars[0]);
  Poly fy = partial_derivative(X.poly, X.vars[1]);
  Poly gz = partial_derivative(Y.poly, Y.vars[0]);
  Poly gw = partial_derivative(Y.poly, Y.vars[1]);
  return q.b * (fx * gz) - q.a * (fx * gw) + q.d * (fy * gz) -
         q.c * (fy * gw);
}

Poly build_s(const PlaneCurve& X, const PlaneCurve& Y, const Poly& h,
             const Quadruple& q) {
  std::vector<std::string> all{X.vars[0], X.vars[1], Y.vars[0], Y.vars[1]};
  Poly ha = h.aligned_to(variable_union(h.variables(), all));
  Poly hx = partial_derivative(ha, X.vars[0]);
  Poly hy = partial_derivative(ha, X.vars[1]);
  Poly hz = partial_derivative(ha, Y.vars[0]);
  Poly hw = partial_derivative(ha, Y.vars[1]);
  Poly gz = partial_derivative(Y.poly, Y.vars[0]);
  Poly gw = partial_derivative(Y.poly, Y.vars[1]);
  return hx * (q.a * gw - q.b * gz) + hy * (q.c * gw - q.d * gz) - hz * gw +
         hw * gz;
}

namespace {

GenericityCheck make_check(std::string name, bool pass, std::string note = "",
                           bool advisory = false) {
  GenericityCheck c;
  c.name = std::move(name);
  c.pass = pass;
  c.advisory = advisory;
  c.note = std::move(note);
  return c;
}

// Exact smoothness certificate: after a shear making f regular in y,
// Res_x(Res_y(f, f_x), Res_y(f, f_y)) != 0 proves f = f_x = f_y = 0 has no
// solution. A vanishing certificate is disambiguated by a seeded numeric
// hunt for an actual singular point.
GenericityCheck check_smooth(const PlaneCurve& curve, const std::string& tag,
                             const SceneOptions& opts) {
  const std::string name = "G1_smooth_" + tag;
  const Poly& f = curve.poly;
  const std::string& xv = curve.vars[0];
  const std::string& yv = curve.vars[1];
  Poly fx = partial_derivative(f, xv);
  Poly fy = partial_derivative(f, yv);

  // repeated factors make every point of them singular
  Poly g = poly_gcd(poly_gcd(f, fx), fy);
  if (!g.is_constant()) {
    return make_check(name, false, "repeated factor: " + g.to_string());
  }
  // single-variable curves: squarefree <=> smooth
  if (fx.is_zero() || fy.is_zero()) {
    const Poly& nz = fx.is_zero() ? fy : fx;
    Poly gg = poly_gcd(f, nz);
    bool ok = gg.is_constant();
    return make_check(name, ok, ok ? "single-variable curve, squarefree"
                                   : "single-variable curve, repeated root");
  }

  Poly tf = top_form(f);
  for (long lambda : {0L, 1L, -1L, 2L, -2L, 3L}) {
    // needs lc_y(sheared f) constant
    if (eval_exact(tf, {{xv, Rational(lambda)}, {yv, Rational(1)}}) == 0) {
      continue;
    }
    Poly fs = lambda == 0
                  ? f
                  : substitute(f, {{xv, Poly::variable(xv) +
                                            Rational(lambda) *
                                                Poly::variable(yv)}});
    Poly fsx = partial_derivative(fs, xv);
    Poly fsy = partial_derivative(fs, yv);
    if (fsx.is_zero() || fsy.is_zero()) continue;
    if (fs.degree_in(yv) < 1 || fsx.degree_in(yv) < 1 || fsy.degree_in(yv) < 1)
      continue;
    Poly A = resultant(fs, fsx, yv);
    Poly B = resultant(fs, fsy, yv);
    if (A.is_zero() || B.is_zero()) continue;
    if (A.is_constant() || B.is_constant()) {
      return make_check(name, true, "certificate (constant resultant)");
    }
    if (A.degree_in(xv) < 1 || B.degree_in(xv) < 1) continue;
    Poly C = resultant(A, B, xv);
    if (!C.is_zero()) {
      return make_check(name, true, "certificate (shear " +
                                        std::to_string(lambda) + ")");
    }
  }

  // certificate degenerate on every shear: hunt for a witness
  std::vector<std::string> vars{xv, yv};
  double scale = 1.0;
  for (const auto& [e, c] : f.terms()) {
    scale = std::max(scale, std::abs(to_double(c)));
  }
  DoublePoly df = DoublePoly::compile(f, vars);
  DoublePoly dfx = DoublePoly::compile(fx, vars);
  DoublePoly dfy = DoublePoly::compile(fy, vars);
  DoublePoly dfxx = DoublePoly::compile(partial_derivative(fx, xv), vars);
  DoublePoly dfxy = DoublePoly::compile(partial_derivative(fx, yv), vars);
  DoublePoly dfyy = DoublePoly::compile(partial_derivative(fy, yv), vars);
  SystemFn F = [&](const CVec& p, CVec& out) {
    out[0] = dfx.eval(p);
    out[1] = dfy.eval(p);
  };
  JacobianFn J = [&](const CVec& p, std::vector<Complex>& jac) {
    jac[0] = dfxx.eval(p);
    jac[1] = dfxy.eval(p);
    jac[2] = dfxy.eval(p);
    jac[3] = dfyy.eval(p);
  };
  Rng rng(0xC0FFEEull);
  for (int s = 0; s < opts.smooth_check_starts; ++s) {
    CVec start{rng.complex_in_box(8.0), rng.complex_in_box(8.0)};
    NewtonResult r = damped_newton(F, J, 2, start);
    if (!r.converged) continue;
    double fv = std::abs(df.eval(r.x));
    if (fv < 1e-10 * scale) {
      std::ostringstream os;
      os << "singular point near (" << r.x[0].real() << (r.x[0].imag() < 0 ? "" : "+")
         << r.x[0].imag() << "i, " << r.x[1].real()
         << (r.x[1].imag() < 0 ? "" : "+") << r.x[1].imag() << "i)";
      return make_check(name, false, os.str());
    }
  }
  return make_check(name, false,
                    "resultant certificate degenerate on all shears and no "
                    "witness found; rejected conservatively");
}

GenericityCheck check_topform_squarefree(const PlaneCurve& curve,
                                         const std::string& tag) {
  const std::string name = "G2_infinity_simple_" + tag;
  Poly T = top_form(curve.poly);
  Poly Tx = partial_derivative(T, curve.vars[0]);
  Poly Ty = partial_derivative(T, curve.vars[1]);
  int d = curve.degree;
  Poly r = binary_form_resultant(Tx, Ty, curve.vars[0], curve.vars[1], d - 1,
                                 d - 1);
  bool ok = !r.is_zero();
  return make_check(name, ok,
                    ok ? "" : "top form has a repeated projective root");
}

GenericityCheck check_partials_at_infinity(const PlaneCurve& curve,
                                           const std::string& tag) {
  const std::string name = "G3_partials_at_infinity_" + tag;
  Poly T = top_form(curve.poly);
  Poly Tx = partial_derivative(T, curve.vars[0]);
  Poly Ty = partial_derivative(T, curve.vars[1]);
  int d = curve.degree;
  Poly r1 =
      binary_form_resultant(T, Tx, curve.vars[0], curve.vars[1], d, d - 1);
  Poly r2 =
      binary_form_resultant(T, Ty, curve.vars[0], curve.vars[1], d, d - 1);
  bool ok = !r1.is_zero() && !r2.is_zero();
  return make_check(
      name, ok,
      ok ? "" : "a top-form partial vanishes at an infinity point");
}

GenericityCheck check_pairing(const PlaneCurve& X, const PlaneCurve& Y,
                              const Quadruple& q) {
  const std::string name = "G4_infinity_pairing";
  Poly Tf = top_form(X.poly);
  Poly Tg = top_form(Y.poly);
  Poly Tfx = partial_derivative(Tf, X.vars[0]);
  Poly Tfy = partial_derivative(Tf, X.vars[1]);
  Poly Tgz = partial_derivative(Tg, Y.vars[0]);
  Poly Tgw = partial_derivative(Tg, Y.vars[1]);
  Poly U = Tfx * (q.b * Tgz - q.a * Tgw) + Tfy * (q.d * Tgz - q.c * Tgw);
  if (U.is_zero()) return make_check(name, false, "pairing form vanishes");
  int d1 = X.degree, d2 = Y.degree;
  Poly V = binary_form_resultant(Tg, U, Y.vars[0], Y.vars[1], d2, d2 - 1);
  if (V.is_zero()) {
    return make_check(name, false, "pairing constant A_ij vanishes");
  }
  Poly W = binary_form_resultant(Tf, V, X.vars[0], X.vars[1], d1,
                                 d2 * (d1 - 1));
  bool ok = !W.is_zero();
  return make_check(name, ok, ok ? "" : "pairing constant A_ij vanishes");
}

GenericityCheck check_infinity_images_distinct(const PlaneCurve& X,
                                               const PlaneCurve& Y,
                                               const Quadruple& q) {
  const std::string name = "G6_infinity_images_distinct";
  if (q.det() == 0) return make_check(name, false, "skipped: quad singular");
  Poly Tf = rename_variables(top_form(X.poly),
                             {{X.vars[0], "u"}, {X.vars[1], "v"}});
  // image of Y's infinity directions under (z,w) |-> (az+bw, cz+dw):
  // substitute the adjugate
  Poly u = Poly::variable("u");
  Poly v = Poly::variable("v");
  std::map<std::string, Poly> adj;
  adj.emplace(Y.vars[0], q.d * u - q.b * v);
  adj.emplace(Y.vars[1], -(q.c * u) + q.a * v);
  Poly M = substitute(top_form(Y.poly), adj);
  Poly r = binary_form_resultant(Tf, M, "u", "v", X.degree, Y.degree);
  bool ok = !r.is_zero();
  return make_check(name, ok,
                    ok ? "" : "projected infinity points collide");
}

GenericityCheck check_elimination_regularity(const PlaneCurve& X,
                                             const PlaneCurve& Y,
                                             const Quadruple& q,
                                             const Poly& h) {
  const std::string name = "G7_elimination_regularity";
  Poly Tf = top_form(X.poly);
  Poly Tg = top_form(Y.poly);
  Poly Th = top_form(h);
  const auto& xv = X.vars;
  const auto& yv = Y.vars;
  auto at = [&](const Poly& p, Rational a0, Rational a1, Rational a2,
                Rational a3) {
    std::map<std::string, Rational> pt{
        {xv[0], a0}, {xv[1], a1}, {yv[0], a2}, {yv[1], a3}};
    std::map<std::string, Rational> use;
    for (const auto& vn : p.variables()) use.emplace(vn, pt.at(vn));
    return eval_exact(p, use);
  };
  std::vector<std::string> bad;
  if (at(Tf, -q.a, -q.c, Rational(0), Rational(0)) == 0) bad.push_back("lc_z(F1)");
  if (at(Tf, -q.b, -q.d, Rational(0), Rational(0)) == 0) bad.push_back("lc_w(F1)");
  if (at(Tg, Rational(0), Rational(0), Rational(1), Rational(0)) == 0)
    bad.push_back("lc_z(F2)");
  if (at(Tg, Rational(0), Rational(0), Rational(0), Rational(1)) == 0)
    bad.push_back("lc_w(F2)");
  if (at(Th, -q.a, -q.c, Rational(1), Rational(0)) == 0) bad.push_back("lc_z(F3)");
  if (at(Th, -q.b, -q.d, Rational(0), Rational(1)) == 0) bad.push_back("lc_w(F3)");
  bool ok = bad.empty();
  std::string note;
  for (const auto& b : bad) note += (note.empty() ? "" : ", ") + b;
  if (!ok) note = "degenerate leading coefficients: " + note;
  return make_check(name, ok, note, /*advisory=*/true);
}

}  // namespace

std::vector<GenericityCheck> validate_curves(const PlaneCurve& X,
                                             const PlaneCurve& Y,
                                             const SceneOptions& opts) {
  std::vector<GenericityCheck> out;
  out.push_back(check_smooth(X, "X", opts));
  out.push_back(check_smooth(Y, "Y", opts));
  out.push_back(check_topform_squarefree(X, "X"));
  out.push_back(check_topform_squarefree(Y, "Y"));
  out.push_back(check_partials_at_infinity(X, "X"));
  out.push_back(check_partials_at_infinity(Y, "Y"));
  return out;
}

std::vector<GenericityCheck> validate_genericity(const PlaneCurve& X,
                                                 const PlaneCurve& Y,
                                                 const Quadruple& quad,
                                                 const SceneOptions& opts) {
  std::vector<GenericityCheck> out = validate_curves(X, Y, opts);
  out.push_back(
      make_check("G5_projection_nondegenerate", quad.det() != 0,
                 quad.det() == 0 ? "ad - bc = 0" : ""));
  out.push_back(check_pairing(X, Y, quad));
  out.push_back(check_infinity_images_distinct(X, Y, quad));
  Poly h = build_h(X, Y, quad);
  if (h.is_zero()) {
    out.push_back(make_check("G7_elimination_regularity", false,
                             "critical polynomial vanishes", true));
  } else {
    out.push_back(check_elimination_regularity(X, Y, quad, h));
  }
  return out;
}

bool all_passed(const std::vector<GenericityCheck>& checks,
                bool include_advisory) {
  for (const auto& c : checks) {
    if (!c.pass && (include_advisory || !c.advisory)) return false;
  }
  return true;
}

std::string failed_names(const std::vector<GenericityCheck>& checks,
                         bool include_advisory) {
  std::string out;
  for (const auto& c : checks) {
    if (!c.pass && (include_advisory || !c.advisory)) {
      out += (out.empty() ? "" : ", ") + c.name;
    }
  }
  return out;
}

namespace {

std::vector<GenericityCheck> quad_checks(const PlaneCurve& X,
                                         const PlaneCurve& Y,
                                         const Quadruple& quad) {
  std::vector<GenericityCheck> out;
  out.push_back(make_check("G5_projection_nondegenerate", quad.det() != 0,
                           quad.det() == 0 ? "ad - bc = 0" : ""));
  if (quad.det() == 0) return out;
  out.push_back(check_pairing(X, Y, quad));
  out.push_back(check_infinity_images_distinct(X, Y, quad));
  Poly h = build_h(X, Y, quad);
  if (h.is_zero()) {
    out.push_back(make_check("G7_elimination_regularity", false,
                             "critical polynomial vanishes", true));
  } else {
    out.push_back(check_elimination_regularity(X, Y, quad, h));
  }
  return out;
}

}  // namespace

GsdsProblem sample_problem(const PlaneCurve& X, const PlaneCurve& Y,
                           std::uint64_t seed, const SceneOptions& opts) {
  auto curve_log = validate_curves(X, Y, opts);
  if (!all_passed(curve_log, /*include_advisory=*/true)) {
    throw std::runtime_error("curve checks fail: " +
                             failed_names(curve_log, true));
  }
  Rng rng(seed);
  for (int attempt = 0; attempt <= opts.max_resamples; ++attempt) {
    Quadruple quad;
    auto draw = [&]() {
      long num = rng.uniform_int(1, opts.quad_height);
      long den = rng.uniform_int(1, opts.quad_height);
      return make_rational(num, den);
    };
    quad.a = draw();
    quad.b = draw();
    quad.c = draw();
    quad.d = draw();
    auto qc = quad_checks(X, Y, quad);
    // G7 is advisory in general but resampling is free here, so require it
    if (!all_passed(qc, /*include_advisory=*/true)) continue;
    GsdsProblem p;
    p.X = X;
    p.Y = Y;
    p.quad = quad;
    p.h = build_h(X, Y, quad);
    p.s = build_s(X, Y, p.h, quad);
    p.seed = seed;
    p.resamples = attempt;
    p.genericity_log = curve_log;
    for (auto& c : qc) p.genericity_log.push_back(std::move(c));
    return p;
  }
  throw std::runtime_error("genericity resampling exhausted after " +
                           std::to_string(opts.max_resamples + 1) +
                           " attempts");
}

GsdsProblem pair_to_quadruple(const PlaneCurve& X, const PlaneCurve& Y,
                              const AffinePair& pair,
                              const SceneOptions& opts) {
  if (pair.G.det() == 0 || pair.H.det() == 0) {
    throw std::invalid_argument("singular G or H");
  }
  Poly fprime = transform_curve(X.poly, X.vars, pair.G.inverse());
  Poly gprime = transform_curve(Y.poly, Y.vars, pair.H.inverse());
  PlaneCurve Xt = PlaneCurve::make(fprime, X.vars);
  PlaneCurve Yt = PlaneCurve::make(gprime, Y.vars);
  Quadruple quad{Rational(1), Rational(0), Rational(0), Rational(1)};

  auto log = validate_genericity(Xt, Yt, quad, opts);
  // G3 and G7 are advisory here: the projection cannot be resampled and the
  // exact degree/count backstops certify the instance downstream.
  for (auto& c : log) {
    if (c.name.rfind("G3_", 0) == 0) c.advisory = true;
  }
  if (!all_passed(log, /*include_advisory=*/false)) {
    throw std::runtime_error("genericity failure for affine pair: " +
                             failed_names(log, false));
  }
  GsdsProblem p;
  p.X = Xt;
  p.Y = Yt;
  p.quad = quad;
  p.h = build_h(Xt, Yt, quad);
  p.s = build_s(Xt, Yt, p.h, quad);
  p.seed = 0;
  p.resamples = 0;
  p.genericity_log = std::move(log);
  return p;
}

}  // namespace gsds
