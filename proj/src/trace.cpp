#include "gsds/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "gsds/numeric.hpp"
#include "gsds/polyalg.hpp"

namespace gsds {

namespace {

// edge key inside the grid: horizontal edges run along u, vertical along v
struct EdgeKey {
  int i, j;
  bool horizontal;
  bool operator<(const EdgeKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return horizontal < o.horizontal;
  }
  bool operator==(const EdgeKey& o) const {
    return i == o.i && j == o.j && horizontal == o.horizontal;
  }
};

}  // namespace

std::vector<Polyline> contour(const Poly& p, const Window& window,
                              int resolution, double input_scale) {
  if (resolution < 2) throw std::invalid_argument("contour: resolution < 2");
  Poly q = drop_unused_variables(p);
  std::vector<std::string> vars{"u", "v"};
  DoublePoly dp = DoublePoly::compile(
      q.aligned_to(variable_union(q.variables(), vars)), vars);
  const int n = resolution;
  const double du = window.width() / n;
  const double dv = window.height() / n;
  std::vector<double> grid(static_cast<std::size_t>(n + 1) * (n + 1));
  auto uat = [&](int i) { return window.umin + du * i; };
  auto vat = [&](int j) { return window.vmin + dv * j; };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      grid[j * (n + 1) + i] =
          dp.eval_real({input_scale * uat(i), input_scale * vat(j)});
    }
  }
  auto value = [&](int i, int j) { return grid[j * (n + 1) + i]; };

  // interpolated crossing point on an edge
  auto edge_point = [&](const EdgeKey& e) -> PlanePoint {
    if (e.horizontal) {
      double f1 = value(e.i, e.j), f2 = value(e.i + 1, e.j);
      double t = f1 / (f1 - f2);
      t = std::clamp(t, 0.0, 1.0);
      return {uat(e.i) + t * du, vat(e.j)};
    }
    double f1 = value(e.i, e.j), f2 = value(e.i, e.j + 1);
    double t = f1 / (f1 - f2);
    t = std::clamp(t, 0.0, 1.0);
    return {uat(e.i), vat(e.j) + t * dv};
  };

  // per-cell segments between crossing edges
  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      bool bl = value(i, j) >= 0;
      bool br = value(i + 1, j) >= 0;
      bool tr = value(i + 1, j + 1) >= 0;
      bool tl = value(i, j + 1) >= 0;
      int code = (bl ? 1 : 0) | (br ? 2 : 0) | (tr ? 4 : 0) | (tl ? 8 : 0);
      if (code == 0 || code == 15) continue;
      EdgeKey bottom{i, j, true};
      EdgeKey top{i, j + 1, true};
      EdgeKey left{i, j, false};
      EdgeKey right{i + 1, j, false};
      auto add = [&](EdgeKey a, EdgeKey b) { segments.emplace_back(a, b); };
      switch (code) {
        case 1: case 14: add(left, bottom); break;
        case 2: case 13: add(bottom, right); break;
        case 3: case 12: add(left, right); break;
        case 4: case 11: add(right, top); break;
        case 6: case 9:  add(bottom, top); break;
        case 7: case 8:  add(top, left); break;
        case 5: case 10: {
          // saddle: decide by the center sample
          double c = dp.eval_real({input_scale * (uat(i) + 0.5 * du),
                                   input_scale * (vat(j) + 0.5 * dv)});
          bool center_pos = c >= 0;
          bool same_as_bl = (code == 5) == center_pos;
          if (same_as_bl) {
            add(left, top);
            add(bottom, right);
          } else {
            add(left, bottom);
            add(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }

  // chain segments through shared edges
  std::map<EdgeKey, std::vector<int>> touches;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    touches[segments[s].first].push_back(s);
    touches[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> out;
  auto walk = [&](int start_seg, const EdgeKey& start_edge) {
    Polyline line;
    EdgeKey edge = start_edge;
    int seg = start_seg;
    line.push_back(edge_point(edge));
    while (true) {
      used[seg] = true;
      EdgeKey next = (segments[seg].first == edge) ? segments[seg].second
                                                   : segments[seg].first;
      line.push_back(edge_point(next));
      edge = next;
      int follow = -1;
      for (int cand : touches[edge]) {
        if (!used[cand]) {
          follow = cand;
          break;
        }
      }
      if (follow < 0) break;
      seg = follow;
    }
    return line;
  };
  // open chains first (start at edges touched once), then loops
  for (int pass = 0; pass < 2; ++pass) {
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
      if (used[s]) continue;
      if (pass == 0) {
        bool open_a = touches[segments[s].first].size() == 1;
        bool open_b = touches[segments[s].second].size() == 1;
        if (!open_a && !open_b) continue;
        out.push_back(walk(s, open_a ? segments[s].first : segments[s].second));
      } else {
        out.push_back(walk(s, segments[s].first));
      }
    }
  }
  // normalize orientation: CCW loops, lexicographically ordered open ends
  for (auto& line : out) {
    if (line.size() < 2) continue;
    bool closed = std::abs(line.front()[0] - line.back()[0]) < 1e-12 &&
                  std::abs(line.front()[1] - line.back()[1]) < 1e-12;
    if (closed) {
      double area2 = 0.0;
      for (std::size_t k = 0; k + 1 < line.size(); ++k) {
        area2 += line[k][0] * line[k + 1][1] - line[k + 1][0] * line[k][1];
      }
      if (area2 < 0) std::reverse(line.begin(), line.end());
    } else if (line.back() < line.front()) {
      std::reverse(line.begin(), line.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// evenly spaced (by arclength) positions along a set of polylines
std::vector<PlanePoint> resample_polylines(const std::vector<Polyline>& lines,
                                           int total_points) {
  double total_len = 0.0;
  std::vector<double> lens;
  for (const auto& line : lines) {
    double l = 0.0;
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      l += std::hypot(line[k + 1][0] - line[k][0], line[k + 1][1] - line[k][1]);
    }
    lens.push_back(l);
    total_len += l;
  }
  std::vector<PlanePoint> out;
  if (total_len <= 0) return out;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& line = lines[li];
    int quota = std::max(2, static_cast<int>(std::round(
                                total_points * lens[li] / total_len)));
    double step = lens[li] / quota;
    double want = 0.0;
    double walked = 0.0;
    std::size_t k = 0;
    const std::size_t cap = static_cast<std::size_t>(total_points) + 2 * (li + 1);
    while (k + 1 < line.size() && out.size() < cap) {
      double seg = std::hypot(line[k + 1][0] - line[k][0],
                              line[k + 1][1] - line[k][1]);
      if (walked + seg >= want) {
        double t = seg > 0 ? (want - walked) / seg : 0.0;
        out.push_back({line[k][0] + t * (line[k + 1][0] - line[k][0]),
                       line[k][1] + t * (line[k + 1][1] - line[k][1])});
        want += step;
      } else {
        walked += seg;
        ++k;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<PlanePoint> trace_midpoints(const GsdsProblem& problem,
                                        int resolution,
                                        const TraceOptions& opts) {
  Window probe{-opts.probe_halfwidth, opts.probe_halfwidth,
               -opts.probe_halfwidth, opts.probe_halfwidth};
  const auto& xv = problem.X.vars;
  const auto& yv = problem.Y.vars;
  Poly fx = rename_variables(problem.X.poly, {{xv[0], "u"}, {xv[1], "v"}});
  Poly gy = rename_variables(problem.Y.poly, {{yv[0], "u"}, {yv[1], "v"}});
  int grid = std::max(resolution, 256);
  auto x_lines = contour(fx, probe, grid);
  auto y_lines = contour(gy, probe, grid);
  if (x_lines.empty()) {
    throw std::runtime_error("trace: first curve has empty real locus");
  }
  if (y_lines.empty()) {
    throw std::runtime_error("trace: second curve has empty real locus");
  }
  auto x_samples = resample_polylines(x_lines, resolution);
  auto y_samples = resample_polylines(y_lines, 4 * resolution);

  std::vector<std::string> vars_xy{xv[0], xv[1]};
  std::vector<std::string> vars_zw{yv[0], yv[1]};
  std::vector<std::string> vars_all{xv[0], xv[1], yv[0], yv[1]};
  DoublePoly df = DoublePoly::compile(problem.X.poly, vars_xy);
  DoublePoly dfx =
      DoublePoly::compile(partial_derivative(problem.X.poly, xv[0]), vars_xy);
  DoublePoly dfy =
      DoublePoly::compile(partial_derivative(problem.X.poly, xv[1]), vars_xy);
  DoublePoly dg = DoublePoly::compile(problem.Y.poly, vars_zw);
  DoublePoly dgz =
      DoublePoly::compile(partial_derivative(problem.Y.poly, yv[0]), vars_zw);
  DoublePoly dgw =
      DoublePoly::compile(partial_derivative(problem.Y.poly, yv[1]), vars_zw);
  DoublePoly dh = DoublePoly::compile(problem.h, vars_all);
  std::vector<DoublePoly> dh_grad;
  for (const auto& vn : vars_all) {
    dh_grad.push_back(DoublePoly::compile(partial_derivative(problem.h, vn),
                                          vars_all));
  }
  double sg = dg.max_abs_coefficient() > 0 ? dg.max_abs_coefficient() : 1.0;
  double sh = dh.max_abs_coefficient() > 0 ? dh.max_abs_coefficient() : 1.0;

  // pull a sample exactly onto f = 0 along the gradient
  auto polish_onto_x = [&](PlanePoint p) {
    for (int it = 0; it < 12; ++it) {
      std::vector<double> at{p[0], p[1]};
      double fv = df.eval_real(at);
      double gx = dfx.eval_real(at), gy2 = dfy.eval_real(at);
      double g2 = gx * gx + gy2 * gy2;
      if (g2 < 1e-14) break;
      p[0] -= fv * gx / g2;
      p[1] -= fv * gy2 / g2;
      if (std::abs(fv) < 1e-14) break;
    }
    return p;
  };

  double a = to_double(problem.quad.a), b = to_double(problem.quad.b);
  double c = to_double(problem.quad.c), d = to_double(problem.quad.d);

  std::vector<PlanePoint> midpoints;
  std::vector<double> hvals(y_samples.size());
  for (auto& px : x_samples) {
    px = polish_onto_x(px);
    for (std::size_t k = 0; k < y_samples.size(); ++k) {
      hvals[k] = dh.eval_real(
                     {px[0], px[1], y_samples[k][0], y_samples[k][1]}) /
                 sh;
    }
    for (std::size_t k = 0; k + 1 < y_samples.size(); ++k) {
      // consecutive samples on the same polyline only: distant jumps are
      // polyline boundaries
      double gap = std::hypot(y_samples[k + 1][0] - y_samples[k][0],
                              y_samples[k + 1][1] - y_samples[k][1]);
      if (gap > 4.0 * probe.width() / grid * 8.0) continue;
      if (!(hvals[k] == 0.0) && !(hvals[k] * hvals[k + 1] < 0.0)) continue;
      // bisection along the segment
      PlanePoint lo = y_samples[k], hi = y_samples[k + 1];
      double flo = hvals[k];
      for (int it = 0; it < 40; ++it) {
        PlanePoint mid{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
        double fm = dh.eval_real({px[0], px[1], mid[0], mid[1]}) / sh;
        if (flo * fm <= 0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      PlanePoint q{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
      // polish (g, h(p, .)) = 0 in (z, w)
      SystemFn F = [&](const CVec& zw, CVec& out) {
        out[0] = dg.eval(zw) / sg;
        out[1] = dh.eval({Complex(px[0], 0), Complex(px[1], 0), zw[0], zw[1]}) /
                 sh;
      };
      JacobianFn J = [&](const CVec& zw, std::vector<Complex>& jac) {
        jac[0] = dgz.eval(zw) / sg;
        jac[1] = dgw.eval(zw) / sg;
        CVec all4{Complex(px[0], 0), Complex(px[1], 0), zw[0], zw[1]};
        jac[2] = dh_grad[2].eval(all4) / sh;
        jac[3] = dh_grad[3].eval(all4) / sh;
      };
      NewtonResult r =
          damped_newton(F, J, 2, CVec{Complex(q[0], 0), Complex(q[1], 0)});
      if (!r.converged || r.residual > 1e-9) continue;
      if (std::abs(r.x[0].imag()) > 1e-9 || std::abs(r.x[1].imag()) > 1e-9) {
        continue;
      }
      double z0 = r.x[0].real(), w0 = r.x[1].real();
      midpoints.push_back(
          {0.5 * (px[0] + a * z0 + b * w0), 0.5 * (px[1] + c * z0 + d * w0)});
    }
  }
  return midpoints;
}

int count_real_cusps(const SolveReport& report) {
  int n = 0;
  for (const auto& p : report.points) {
    if (p.kind == SingularKind::Cusp && p.is_real) ++n;
  }
  return n;
}

RealTrace build_real_trace(const GsdsProblem& problem,
                           const ImplicitCurve& curve,
                           const SolveReport& report,
                           const TraceOptions& opts) {
  RealTrace t;
  t.midpoint_samples = trace_midpoints(problem, opts.resolution, opts);
  double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
  for (const auto& p : t.midpoint_samples) {
    umin = std::min(umin, p[0]);
    umax = std::max(umax, p[0]);
    vmin = std::min(vmin, p[1]);
    vmax = std::max(vmax, p[1]);
  }
  if (umin > umax) {
    umin = -1;
    umax = 1;
    vmin = -1;
    vmax = 1;
  }
  double pu = (umax - umin) * opts.pad_fraction + 1e-6;
  double pv = (vmax - vmin) * opts.pad_fraction + 1e-6;
  t.window = {umin - pu, umax + pu, vmin - pv, vmax + pv};
  // contour of P in display (half) coordinates: evaluate P(2u, 2v)
  t.contour_polylines = contour(curve.P, t.window, opts.resolution, 2.0);
  for (const auto& p : report.points) {
    if (p.kind == SingularKind::Cusp && p.is_real) {
      t.real_cusps.push_back({0.5 * p.u.real(), 0.5 * p.v.real()});
    }
  }
  return t;
}

void write_csv(const std::string& path,
               const std::vector<PlanePoint>& points) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  char buf[80];
  os << "u,v\n";
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", p[0], p[1]);
    os << buf;
  }
}

void write_svg(const std::string& path, const RealTrace& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  const double W = 800, H = 800, margin = 20;
  const Window& w = trace.window;
  double sx = (W - 2 * margin) / w.width();
  double sy = (H - 2 * margin) / w.height();
  double s = std::min(sx, sy);
  auto X = [&](double u) { return margin + (u - w.umin) * s; };
  auto Y = [&](double v) { return H - margin - (v - w.vmin) * s; };
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // implicit contour
  for (const auto& line : trace.contour_polylines) {
    if (line.size() < 2) continue;
    os << "<path fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" d=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%c%.2f %.2f", k == 0 ? 'M' : 'L',
                    X(line[k][0]), Y(line[k][1]));
      os << buf;
    }
    os << "\"/>\n";
  }
  // midpoint cloud (subsampled if huge)
  std::size_t stride =
      std::max<std::size_t>(1, trace.midpoint_samples.size() / 4000);
  for (std::size_t k = 0; k < trace.midpoint_samples.size(); k += stride) {
    const auto& p = trace.midpoint_samples[k];
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"0.8\" fill=\"#2ca02c\" "
                  "fill-opacity=\"0.5\"/>\n",
                  X(p[0]), Y(p[1]));
    os << buf;
  }
  // cusp markers
  for (const auto& p : trace.real_cusps) {
    double cx = X(p[0]), cy = Y(p[1]);
    std::snprintf(buf, sizeof buf,
                  "<g stroke=\"#d62728\" stroke-width=\"1.5\">"
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>"
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>"
                  "</g>\n",
                  cx - 6, cy - 6, cx + 6, cy + 6, cx - 6, cy + 6, cx + 6,
                  cy - 6);
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace gsds
