#include "gsds/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsds {

std::uint64_t Rng::next() {
  // splitmix64; stable across platforms
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

long Rng::uniform_int(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

Complex Rng::complex_in_box(double radius) {
  return {uniform(-radius, radius), uniform(-radius, radius)};
}

DoublePoly DoublePoly::compile(const Poly& p,
                               const std::vector<std::string>& var_order) {
  DoublePoly out;
  out.max_deg_.assign(var_order.size(), 0);
  std::vector<int> where(p.variables().size(), -1);
  for (std::size_t i = 0; i < p.variables().size(); ++i) {
    auto it = std::find(var_order.begin(), var_order.end(), p.variables()[i]);
    if (it == var_order.end()) {
      if (p.degree_in(p.variables()[i]) > 0) {
        throw std::invalid_argument("DoublePoly: variable not in order: " +
                                    p.variables()[i]);
      }
    } else {
      where[i] = static_cast<int>(it - var_order.begin());
    }
  }
  for (const auto& [e, c] : p.terms()) {
    Term t;
    t.e.assign(var_order.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t.e[where[i]] = e[i];
    }
    t.c = to_double(c);
    for (std::size_t k = 0; k < t.e.size(); ++k) {
      out.max_deg_[k] = std::max(out.max_deg_[k], t.e[k]);
    }
    out.max_abs_ = std::max(out.max_abs_, std::abs(t.c));
    out.terms_.push_back(std::move(t));
  }
  return out;
}

Complex DoublePoly::eval(const CVec& point) const {
  const std::size_t nv = max_deg_.size();
  std::size_t need = 0;
  for (std::size_t k = 0; k < nv; ++k) need += max_deg_[k] + 1;
  auto& pw = pow_scratch_;
  pw.assign(need, Complex(1.0, 0.0));
  std::size_t off = 0;
  std::vector<std::size_t> offs(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    offs[k] = off;
    for (int d = 1; d <= max_deg_[k]; ++d) pw[off + d] = pw[off + d - 1] * point[k];
    off += max_deg_[k] + 1;
  }
  Complex acc(0.0, 0.0);
  for (const auto& t : terms_) {
    Complex m(t.c, 0.0);
    for (std::size_t k = 0; k < nv; ++k) {
      if (t.e[k] > 0) m *= pw[offs[k] + t.e[k]];
    }
    acc += m;
  }
  return acc;
}

double DoublePoly::eval_real(const std::vector<double>& point) const {
  const std::size_t nv = max_deg_.size();
  std::size_t need = 0;
  for (std::size_t k = 0; k < nv; ++k) need += max_deg_[k] + 1;
  auto& pw = pow_scratch_real_;
  pw.assign(need, 1.0);
  std::size_t off = 0;
  std::vector<std::size_t> offs(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    offs[k] = off;
    for (int d = 1; d <= max_deg_[k]; ++d) pw[off + d] = pw[off + d - 1] * point[k];
    off += max_deg_[k] + 1;
  }
  double acc = 0.0;
  for (const auto& t : terms_) {
    double m = t.c;
    for (std::size_t k = 0; k < nv; ++k) {
      if (t.e[k] > 0) m *= pw[offs[k] + t.e[k]];
    }
    acc += m;
  }
  return acc;
}

bool solve_linear(std::vector<Complex>& A, CVec& b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(A[k * n + k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      double v = std::abs(A[r * n + k]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-300) return false;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      Complex f = A[r * n + k] / A[k * n + k];
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t j = k; j < n; ++j) A[r * n + j] -= f * A[k * n + j];
      b[r] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= A[k * n + j] * b[j];
    b[k] = s / A[k * n + k];
  }
  return true;
}

namespace {

double residual_norm(const CVec& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

NewtonResult damped_newton(const SystemFn& F, const JacobianFn& J,
                           std::size_t n, const CVec& start,
                           const NewtonOptions& opts) {
  NewtonResult out;
  CVec x = start;
  CVec fx(n), ftrial(n);
  std::vector<Complex> jac(n * n);
  F(x, fx);
  double res = residual_norm(fx);
  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it;
    if (!std::isfinite(res)) break;
    if (res < opts.target_residual) {
      out.converged = true;
      break;
    }
    J(x, jac);
    std::vector<Complex> A = jac;
    CVec step(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = -fx[i];
    if (!solve_linear(A, step, n)) break;
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      CVec trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + lambda * step[i];
      F(trial, ftrial);
      double rt = residual_norm(ftrial);
      if (std::isfinite(rt) && rt < res) {
        x = std::move(trial);
        fx = ftrial;
        res = rt;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;  // stalled
  }
  out.x = std::move(x);
  out.residual = res;
  if (res < opts.target_residual) out.converged = true;
  return out;
}

CVec polynomial_roots(const CVec& coeffs_in) {
  CVec c = coeffs_in;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  // roots exactly at zero: strip trailing (constant-side) zeros
  std::size_t zero_roots = 0;
  while (zero_roots + 1 < c.size() && std::abs(c[zero_roots]) == 0.0) {
    ++zero_roots;
  }
  CVec p(c.begin() + zero_roots, c.end());
  const std::size_t n = p.size() - 1;
  CVec roots(zero_roots, Complex(0.0, 0.0));
  if (n == 0) return roots;
  Complex lead = p.back();
  for (auto& v : p) v /= lead;
  if (n == 1) {
    roots.push_back(-p[0]);
    return roots;
  }
  // Fujiwara-style inclusion radius
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double r = std::pow(std::abs(p[k]), 1.0 / double(n - k));
    radius = std::max(radius, 2.0 * r);
  }
  if (radius == 0.0) {
    roots.insert(roots.end(), n, Complex(0.0, 0.0));
    return roots;
  }
  CVec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * (double(i) / double(n)) + 0.41;
    z[i] = radius * Complex(std::cos(ang), std::sin(ang));
  }
  auto eval = [&](Complex v) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * v + p[k];
    return acc;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex num = eval(z[i]);
      Complex den(1.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (std::abs(d) < 1e-280) d = Complex(1e-280, 0.0);
        den *= d;
      }
      Complex delta = num / den;
      z[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-13 * (1.0 + radius)) break;
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<CVec> dedup_points(std::vector<CVec> points, double tol,
                               int* merges) {
  auto less = [](const CVec& a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
      if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
  };
  std::sort(points.begin(), points.end(), less);
  std::vector<CVec> reps;
  int merged = 0;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& r : reps) {
      double d = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max(d, std::abs(p[i] - r[i]));
      }
      if (d < tol) {
        dup = true;
        ++merged;
        break;
      }
    }
    if (!dup) reps.push_back(p);
  }
  if (merges) *merges = merged;
  return reps;
}

bool conjugation_symmetric(const std::vector<CVec>& points, double tol) {
  for (const auto& p : points) {
    CVec conj(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) conj[i] = std::conj(p[i]);
    bool found = false;
    for (const auto& q : points) {
      double d = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max(d, std::abs(conj[i] - q[i]));
      }
      if (d < tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace gsds
