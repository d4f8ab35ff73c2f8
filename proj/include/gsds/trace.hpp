// Real-geometry tracer. Two independent renderings of the real
// discriminant cross-validate each other: chord-midpoint sampling needs no
// elimination, implicit contour extraction needs no pairing search.
//
// Display convention: the projection is computed without the midpoint 1/2,
// so all display output (midpoint samples, contour, cusp markers) is
// rescaled by 1/2 uniformly.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gsds/eliminate.hpp"
#include "gsds/scene.hpp"
#include "gsds/singular.hpp"

namespace gsds {

struct Window {
  double umin = -2, umax = 2, vmin = -2, vmax = 2;
  double width() const { return umax - umin; }
  double height() const { return vmax - vmin; }
};

using PlanePoint = std::array<double, 2>;
using Polyline = std::vector<PlanePoint>;

struct RealTrace {
  std::vector<PlanePoint> midpoint_samples;  // display (half) coordinates
  std::vector<Polyline> contour_polylines;   // display coordinates
  std::vector<PlanePoint> real_cusps;        // display coordinates
  Window window;
};

struct TraceOptions {
  int resolution = 512;
  double probe_halfwidth = 8.0;  // window for locating the input curves
  double pad_fraction = 0.2;
  double input_scale = 1.0;  // evaluate P(scale*u, scale*v) on the grid
};

// Marching-squares extraction of {p = 0} over the window. Convention:
// values >= 0 count as positive; closed loops are emitted counterclockwise,
// open polylines start at their lexicographically smaller endpoint.
std::vector<Polyline> contour(const Poly& p, const Window& window,
                              int resolution, double input_scale = 1.0);

// Chord-midpoint sampling: walks the real locus of X, and for each point
// finds the tangent-parallel partners on Y by a sign scan of h along Y's
// real locus. Output is rescaled by 1/2. Throws std::runtime_error when a
// curve has an empty real locus in the probe window.
std::vector<PlanePoint> trace_midpoints(const GsdsProblem& problem,
                                        int resolution,
                                        const TraceOptions& opts = {});

int count_real_cusps(const SolveReport& report);

// Assembles the combined rendering; the window defaults to the padded
// bounding box of the midpoint samples.
RealTrace build_real_trace(const GsdsProblem& problem,
                           const ImplicitCurve& curve,
                           const SolveReport& report,
                           const TraceOptions& opts = {});

void write_svg(const std::string& path, const RealTrace& trace);
void write_csv(const std::string& path,
               const std::vector<PlanePoint>& points);

}  // namespace gsds
