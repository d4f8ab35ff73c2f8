#include "gsds/singular.hpp"

#include <algorithm>
#include <cmath>

#include "gsds/polyalg.hpp"

namespace gsds {

std::string to_string(SingularKind k) {
  switch (k) {
    case SingularKind::Node:
      return "node";
    case SingularKind::Cusp:
      return "cusp";
    default:
      return "other";
  }
}

namespace {

double max_abs_coeff(const Poly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
  return m > 0 ? m : 1.0;
}

// Taylor data of P at a point, from exact derivative polynomials.
struct LocalJets {
  // jets[i][j] = d^(i+j) P / du^i dv^j / (i! j!), i + j <= 3
  Complex c[4][4];
};

struct JetEvaluator {
  std::vector<std::string> vars{"u", "v"};
  Poly derivs[4][4];
  double scale;

  explicit JetEvaluator(const Poly& P) {
    Poly base = drop_unused_variables(P).aligned_to(
        variable_union(drop_unused_variables(P).variables(), vars));
    scale = max_abs_coeff(base);
    derivs[0][0] = base;
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 3 - i; ++j) {
        if (i == 0 && j == 0) continue;
        if (j > 0) {
          derivs[i][j] = partial_derivative(derivs[i][j - 1], "v");
        } else {
          derivs[i][j] = partial_derivative(derivs[i - 1][0], "u");
        }
      }
    }
  }

  LocalJets at(Complex u, Complex v) const {
    LocalJets out;
    static const double fact[4] = {1.0, 1.0, 2.0, 6.0};
    std::map<std::string, Complex> pt{{"u", u}, {"v", v}};
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 3 - i; ++j) {
        out.c[i][j] =
            eval_complex(derivs[i][j], pt) / (fact[i] * fact[j] * scale);
      }
    }
    return out;
  }
};

SingularKind classify_from_jets(const LocalJets& jets, double tol_class) {
  const Complex c20 = jets.c[2][0], c11 = jets.c[1][1], c02 = jets.c[0][2];
  const Complex c30 = jets.c[3][0], c21 = jets.c[2][1], c12 = jets.c[1][2],
                c03 = jets.c[0][3];
  double n2 = std::max({std::abs(c20), std::abs(c11), std::abs(c02)});
  double n3 = std::max({std::abs(c30), std::abs(c21), std::abs(c12),
                        std::abs(c03)});
  if (n2 <= tol_class * std::max(n2, n3) || (n2 == 0.0 && n3 == 0.0)) {
    throw std::domain_error(
        "classify_local: quadratic part below threshold (multiplicity >= 3)");
  }
  Complex disc = c11 * c11 - 4.0 * c20 * c02;
  if (std::abs(disc) > tol_class * n2 * n2) return SingularKind::Node;
  // rank-one quadratic part; kernel direction of [[2 c20, c11],[c11, 2 c02]]
  Complex k1, k2;
  if (std::max(std::abs(c20), std::abs(c11)) >=
      std::max(std::abs(c02), std::abs(c11))) {
    k1 = c11;
    k2 = -2.0 * c20;
  } else {
    k1 = 2.0 * c02;
    k2 = -c11;
  }
  double kn = std::max(std::abs(k1), std::abs(k2));
  if (kn == 0.0) return SingularKind::Other;
  k1 /= kn;
  k2 /= kn;
  Complex cubic_along_kernel =
      c30 * k1 * k1 * k1 + c21 * k1 * k1 * k2 + c12 * k1 * k2 * k2 +
      c03 * k2 * k2 * k2;
  if (n3 > 0 && std::abs(cubic_along_kernel) > tol_class * n3) {
    return SingularKind::Cusp;
  }
  return SingularKind::Other;
}

// shared multi-start collector for small square systems
struct MultiStart {
  std::size_t n;
  SystemFn F;
  JacobianFn J;
  double box_radius;
  Rng rng;
  std::vector<CVec> found;
  long starts_used = 0;

  MultiStart(std::size_t n_, SystemFn f, JacobianFn j, double radius,
             std::uint64_t seed)
      : n(n_), F(std::move(f)), J(std::move(j)), box_radius(radius),
        rng(seed) {}

  // returns number of new distinct points found in this batch
  int run_batch(int batch, double dedup_tol, double accept_residual) {
    int fresh = 0;
    for (int s = 0; s < batch; ++s) {
      ++starts_used;
      CVec start(n);
      for (auto& c : start) c = rng.complex_in_box(box_radius);
      NewtonResult r = damped_newton(F, J, n, start);
      if (!r.converged || r.residual > accept_residual) continue;
      bool dup = false;
      for (const auto& old : found) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          d = std::max(d, std::abs(old[i] - r.x[i]));
        }
        if (d < dedup_tol) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        found.push_back(r.x);
        ++fresh;
      }
    }
    return fresh;
  }
};

}  // namespace

SingularKind classify_local(const Poly& P, Complex u, Complex v,
                            const SolveOptions& opts) {
  JetEvaluator jets(P);
  return classify_from_jets(jets.at(u, v), opts.tol_class);
}

SolveReport solve_singular_points(const ImplicitCurve& curve,
                                  const SolveOptions& opts) {
  SolveReport report;
  const Poly P = drop_unused_variables(curve.P).aligned_to(
      variable_union(drop_unused_variables(curve.P).variables(),
                     std::vector<std::string>{"u", "v"}));
  const std::vector<std::string> vars{"u", "v"};
  const double scale = max_abs_coeff(P);
  Poly Pu = partial_derivative(P, "u");
  Poly Pv = partial_derivative(P, "v");
  Poly Puu = partial_derivative(Pu, "u");
  Poly Puv = partial_derivative(Pu, "v");
  Poly Pvv = partial_derivative(Pv, "v");
  DoublePoly dP = DoublePoly::compile(P, vars);
  DoublePoly dPu = DoublePoly::compile(Pu, vars);
  DoublePoly dPv = DoublePoly::compile(Pv, vars);
  DoublePoly dPuu = DoublePoly::compile(Puu, vars);
  DoublePoly dPuv = DoublePoly::compile(Puv, vars);
  DoublePoly dPvv = DoublePoly::compile(Pvv, vars);

  SystemFn F = [&](const CVec& x, CVec& out) {
    out[0] = dPu.eval(x) / scale;
    out[1] = dPv.eval(x) / scale;
  };
  JacobianFn J = [&](const CVec& x, std::vector<Complex>& jac) {
    jac[0] = dPuu.eval(x) / scale;
    jac[1] = dPuv.eval(x) / scale;
    jac[2] = jac[1];
    jac[3] = dPvv.eval(x) / scale;
  };

  auto polish_and_keep = [&](std::vector<CVec>& sink, const CVec& cand) {
    NewtonResult r = damped_newton(F, J, 2, cand);
    if (!r.converged || r.residual > 1e-10) return;
    if (std::abs(dP.eval(r.x)) / scale > opts.tol_residual) return;
    sink.push_back(r.x);
  };

  std::vector<CVec> accepted;

  // exact candidate bounding where the Sylvester matrices stay small
  int dim = std::max(Pu.degree_in("v") + Pv.degree_in("v"),
                     Pu.degree_in("u") + Pv.degree_in("u"));
  if (Pu.degree_in("v") >= 1 && Pv.degree_in("v") >= 1 &&
      dim <= opts.exact_bound_max_dim) {
    report.diag.used_exact_bounding = true;
    Poly Ru = resultant(Pu, Pv, "v");  // candidates for u
    auto coeffs = coefficients_in(drop_unused_variables(Ru), "u");
    CVec cu;
    double cmax = 0.0;
    for (const auto& cp : coeffs) {
      double val = cp.is_zero() ? 0.0 : to_double(cp.constant_value());
      cmax = std::max(cmax, std::abs(val));
      cu.push_back(Complex(val, 0));
    }
    if (cmax > 0 && std::isfinite(cmax)) {
      for (auto& val : cu) val /= cmax;
      for (const Complex& u0 : polynomial_roots(cu)) {
        // v-candidates from both partials restricted to u = u0
        for (const Poly* q : {&Pu, &Pv}) {
          auto qc = coefficients_in(*q, "v");
          CVec uc;
          double qmax = 0.0;
          std::map<std::string, Complex> bind{{"u", u0}, {"v", Complex(0, 0)}};
          for (const auto& cp : qc) {
            Complex val = eval_complex(cp, bind);
            qmax = std::max(qmax, std::abs(val));
            uc.push_back(val);
          }
          if (qmax <= 0 || !std::isfinite(qmax)) continue;
          for (auto& val : uc) val /= qmax;
          for (const Complex& v0 : polynomial_roots(uc)) {
            polish_and_keep(accepted, CVec{u0, v0});
          }
        }
      }
    }
  }

  // multi-start sweep; the exact candidates above are already in `accepted`
  long expected = opts.expected_count.value_or(-1);
  long target_points = expected > 0 ? expected : 32;
  MultiStart ms(2, F, J, opts.box_radius, opts.seed);
  long budget = static_cast<long>(opts.starts_factor) * target_points;
  int escalations = 0;
  const int batch = static_cast<int>(std::max<long>(64, 2 * target_points));
  while (true) {
    int stable = 0;
    while (ms.starts_used < budget) {
      ms.run_batch(batch, opts.tol_dedup, 1e-10);
      std::vector<CVec> merged = accepted;
      for (const auto& p : ms.found) {
        if (std::abs(dP.eval(p)) / scale <= opts.tol_residual) {
          merged.push_back(p);
        }
      }
      merged = dedup_points(std::move(merged), opts.tol_dedup);
      if (expected > 0) {
        if (static_cast<long>(merged.size()) == expected) {
          if (++stable >= opts.stable_batches) break;
        } else {
          stable = 0;
        }
      }
    }
    std::vector<CVec> merged = accepted;
    for (const auto& p : ms.found) {
      if (std::abs(dP.eval(p)) / scale <= opts.tol_residual) {
        merged.push_back(p);
      }
    }
    int merges = 0;
    merged = dedup_points(std::move(merged), opts.tol_dedup, &merges);
    report.diag.dedup_merges = merges;
    accepted = std::move(merged);
    if (expected <= 0 || static_cast<long>(accepted.size()) == expected ||
        escalations >= 1) {
      break;
    }
    budget *= opts.escalation_factor;
    ++escalations;
  }
  report.diag.escalations = escalations;
  report.diag.starts_used = ms.starts_used;
  report.diag.count_matched =
      expected <= 0 || static_cast<long>(accepted.size()) == expected;

  JetEvaluator jets(P);
  for (const auto& pt : accepted) {
    SingularPoint sp;
    sp.u = pt[0];
    sp.v = pt[1];
    double ru = std::abs(dPu.eval(pt)) / scale;
    double rv = std::abs(dPv.eval(pt)) / scale;
    double rp = std::abs(dP.eval(pt)) / scale;
    sp.residual = std::max({ru, rv, rp});
    report.diag.worst_residual =
        std::max(report.diag.worst_residual, sp.residual);
    sp.is_real = std::abs(pt[0].imag()) < 1e-8 && std::abs(pt[1].imag()) < 1e-8;
    LocalJets lj = jets.at(pt[0], pt[1]);
    sp.quad_form = {lj.c[2][0], lj.c[1][1], lj.c[0][2]};
    sp.cubic_form = {lj.c[3][0], lj.c[2][1], lj.c[1][2], lj.c[0][3]};
    try {
      sp.kind = classify_from_jets(lj, opts.tol_class);
    } catch (const std::domain_error&) {
      sp.kind = SingularKind::Other;
    }
    switch (sp.kind) {
      case SingularKind::Node:
        ++report.n_nodes;
        break;
      case SingularKind::Cusp:
        ++report.n_cusps;
        break;
      default:
        ++report.n_other;
    }
    report.points.push_back(std::move(sp));
  }
  // deterministic ordering for reports
  std::sort(report.points.begin(), report.points.end(),
            [](const SingularPoint& a, const SingularPoint& b) {
              if (a.u.real() != b.u.real()) return a.u.real() < b.u.real();
              if (a.u.imag() != b.u.imag()) return a.u.imag() < b.u.imag();
              if (a.v.real() != b.v.real()) return a.v.real() < b.v.real();
              return a.v.imag() < b.v.imag();
            });
  return report;
}

long count_cusps_direct(const GsdsProblem& problem, const SolveOptions& opts,
                        bool* matched, SolveDiagnostics* diag) {
  const auto& xv = problem.X.vars;
  const auto& yv = problem.Y.vars;
  std::vector<std::string> vars{xv[0], xv[1], yv[0], yv[1]};
  std::vector<Poly> sys{problem.X.poly, problem.Y.poly, problem.h, problem.s};
  std::vector<double> scales;
  std::vector<DoublePoly> dsys;
  std::vector<std::vector<DoublePoly>> djac(4);
  for (int i = 0; i < 4; ++i) {
    scales.push_back(max_abs_coeff(sys[i]));
    dsys.push_back(DoublePoly::compile(sys[i], vars));
    for (const auto& vn : vars) {
      Poly d = sys[i].var_index(vn) >= 0 ? partial_derivative(sys[i], vn)
                                         : Poly::zero(sys[i].variables());
      djac[i].push_back(DoublePoly::compile(d, vars));
    }
  }
  SystemFn F = [&](const CVec& x, CVec& out) {
    for (int i = 0; i < 4; ++i) out[i] = dsys[i].eval(x) / scales[i];
  };
  JacobianFn J = [&](const CVec& x, std::vector<Complex>& jac) {
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < 4; ++k) {
        jac[i * 4 + k] = djac[i][k].eval(x) / scales[i];
      }
    }
  };
  long d1 = problem.d1(), d2 = problem.d2();
  long expected = 3 * d1 * d2 * (d1 - 1) * (d2 - 1);
  MultiStart ms(4, F, J, opts.box_radius, opts.seed ^ 0xC45Dull);
  long budget = opts.starts_factor * expected;
  const int batch = static_cast<int>(std::max<long>(100, expected));
  int stable = 0;
  int escalations = 0;
  while (true) {
    while (ms.starts_used < budget) {
      int fresh = ms.run_batch(batch, opts.tol_dedup, 1e-10);
      long count = static_cast<long>(ms.found.size());
      if (count == expected && fresh == 0) {
        if (++stable >= opts.stable_batches) break;
      } else {
        stable = 0;
      }
    }
    if (static_cast<long>(ms.found.size()) == expected || escalations >= 1) {
      break;
    }
    budget *= opts.escalation_factor;
    ++escalations;
  }
  if (matched) *matched = static_cast<long>(ms.found.size()) == expected;
  if (diag) {
    diag->starts_used = ms.starts_used;
    diag->escalations = escalations;
    diag->count_matched = static_cast<long>(ms.found.size()) == expected;
  }
  return static_cast<long>(ms.found.size());
}

namespace {

// fiber solver over a fixed image point: f and g restricted to the fiber
// plane x = u0 - a z - b w, y = v0 - c z - d w
struct FiberSystem {
  DoublePoly df, dfx, dfy, dg, dgz, dgw, dh;
  Complex a, b, c, d;
  Complex u0, v0;
  double sf, sg, sh;

  FiberSystem(const GsdsProblem& problem, Complex u, Complex v) {
    const auto& xv = problem.X.vars;
    const auto& yv = problem.Y.vars;
    std::vector<std::string> fxy{xv[0], xv[1]};
    std::vector<std::string> fzw{yv[0], yv[1]};
    std::vector<std::string> all{xv[0], xv[1], yv[0], yv[1]};
    df = DoublePoly::compile(problem.X.poly, fxy);
    dfx = DoublePoly::compile(partial_derivative(problem.X.poly, xv[0]), fxy);
    dfy = DoublePoly::compile(partial_derivative(problem.X.poly, xv[1]), fxy);
    dg = DoublePoly::compile(problem.Y.poly, fzw);
    dgz = DoublePoly::compile(partial_derivative(problem.Y.poly, yv[0]), fzw);
    dgw = DoublePoly::compile(partial_derivative(problem.Y.poly, yv[1]), fzw);
    dh = DoublePoly::compile(problem.h, all);
    a = to_double(problem.quad.a);
    b = to_double(problem.quad.b);
    c = to_double(problem.quad.c);
    d = to_double(problem.quad.d);
    u0 = u;
    v0 = v;
    sf = df.max_abs_coefficient() > 0 ? df.max_abs_coefficient() : 1.0;
    sg = dg.max_abs_coefficient() > 0 ? dg.max_abs_coefficient() : 1.0;
    sh = dh.max_abs_coefficient() > 0 ? dh.max_abs_coefficient() : 1.0;
  }

  CVec xy_of(const CVec& zw) const {
    return {u0 - a * zw[0] - b * zw[1], v0 - c * zw[0] - d * zw[1]};
  }

  SystemFn system() const {
    return [this](const CVec& zw, CVec& out) {
      CVec xy = xy_of(zw);
      out[0] = df.eval(xy) / sf;
      out[1] = dg.eval(zw) / sg;
    };
  }
  JacobianFn jacobian() const {
    return [this](const CVec& zw, std::vector<Complex>& jac) {
      CVec xy = xy_of(zw);
      Complex fx = dfx.eval(xy), fy = dfy.eval(xy);
      jac[0] = (-a * fx - c * fy) / sf;
      jac[1] = (-b * fx - d * fy) / sf;
      jac[2] = dgz.eval(zw) / sg;
      jac[3] = dgw.eval(zw) / sg;
    };
  }
  double h_residual(const CVec& zw) const {
    CVec xy = xy_of(zw);
    CVec all4{xy[0], xy[1], zw[0], zw[1]};
    return std::abs(dh.eval(all4)) / sh;
  }
};

// collect distinct fiber points until the count is stable
std::vector<CVec> solve_fiber(const FiberSystem& fs, long d1d2,
                              const SolveOptions& opts, std::uint64_t salt) {
  MultiStart ms(2, fs.system(), fs.jacobian(), opts.box_radius,
                opts.seed ^ salt);
  long budget = opts.starts_factor * std::max<long>(d1d2, 4);
  const int batch = 64;
  int stable = 0;
  while (ms.starts_used < budget) {
    int fresh = ms.run_batch(batch, opts.tol_dedup, 1e-9);
    if (fresh == 0) {
      if (++stable >= opts.stable_batches) break;
    } else {
      stable = 0;
    }
  }
  return ms.found;
}

}  // namespace

int node_preimages(const GsdsProblem& problem, Complex node_u, Complex node_v,
                   const SolveOptions& opts) {
  FiberSystem fs(problem, node_u, node_v);
  long d1d2 = static_cast<long>(problem.d1()) * problem.d2();
  auto fiber = solve_fiber(fs, d1d2, opts, 0x0DE5ull);
  int critical = 0;
  for (const auto& zw : fiber) {
    if (fs.h_residual(zw) < 1e-6) ++critical;
  }
  return critical;
}

int fiber_count(const GsdsProblem& problem, const ImplicitCurve& curve,
                double u0, double v0, const SolveOptions& opts) {
  // precondition: safely off the discriminant
  Poly P = drop_unused_variables(curve.P);
  double scale = max_abs_coeff(P);
  Complex val = eval_complex(
      P.aligned_to(variable_union(P.variables(),
                                  std::vector<std::string>{"u", "v"})),
      {{"u", Complex(u0, 0)}, {"v", Complex(v0, 0)}});
  if (std::abs(val) / scale <= 1e-3) {
    throw std::invalid_argument("fiber_count: point too close to the curve");
  }
  FiberSystem fs(problem, Complex(u0, 0), Complex(v0, 0));
  long d1d2 = static_cast<long>(problem.d1()) * problem.d2();
  auto fiber = solve_fiber(fs, d1d2, opts, 0xF1BE2ull);
  return static_cast<int>(fiber.size());
}

}  // namespace gsds
