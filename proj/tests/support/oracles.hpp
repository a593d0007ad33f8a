#pragma once

// Independent reference computations for the test suite. Everything here is
// deliberately brute force and shares no code path with the library solvers.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace testsupport {

// Minimize f over [lo, hi] by golden-section search; f must be unimodal.
inline double golden_section_min(const std::function<double(double)>& f, double lo,
                                 double hi, int iterations = 200) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Brute-force planar minimax: minimize y -> max_i dist(y, pts[i]) over a
// square grid around the point cloud, with two refinement passes.
struct PlanarMinimax {
  double radius = 0.0;
  double cx = 0.0, cy = 0.0;
};

inline PlanarMinimax planar_minimax_oracle(
    const std::vector<std::pair<double, double>>& pts,
    const std::function<double(double, double, double, double)>& dist,
    int resolution = 160) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& [x, y] : pts) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  double pad = 0.25 * (1.0 + std::max(hi_x - lo_x, hi_y - lo_y));
  lo_x -= pad;
  hi_x += pad;
  lo_y -= pad;
  hi_y += pad;

  PlanarMinimax best;
  best.radius = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 3; ++pass) {
    double step_x = (hi_x - lo_x) / resolution;
    double step_y = (hi_y - lo_y) / resolution;
    for (int i = 0; i <= resolution; ++i) {
      for (int j = 0; j <= resolution; ++j) {
        double x = lo_x + step_x * i, y = lo_y + step_y * j;
        double worst = 0.0;
        for (const auto& [px, py] : pts)
          worst = std::max(worst, dist(x, y, px, py));
        if (worst < best.radius) {
          best.radius = worst;
          best.cx = x;
          best.cy = y;
        }
      }
    }
    double span_x = 3.0 * (hi_x - lo_x) / resolution;
    double span_y = 3.0 * (hi_y - lo_y) / resolution;
    lo_x = best.cx - span_x;
    hi_x = best.cx + span_x;
    lo_y = best.cy - span_y;
    hi_y = best.cy + span_y;
  }
  return best;
}

// Dense-grid Chebyshev radius of the planar lens B_rho(a) ∩ B_rho(b): collect
// every grid point inside both balls, then minimize the covering radius over
// candidate centers from the same grid (refined around the best candidate).
inline double planar_lens_oracle(
    const std::function<double(double, double, double, double)>& dist, double ax,
    double ay, double bx, double by, double rho, int resolution = 220) {
  double lo_x = std::min(ax, bx) - rho, hi_x = std::max(ax, bx) + rho;
  double lo_y = std::min(ay, by) - rho, hi_y = std::max(ay, by) + rho;
  std::vector<std::pair<double, double>> lens;
  double step_x = (hi_x - lo_x) / resolution;
  double step_y = (hi_y - lo_y) / resolution;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      double x = lo_x + step_x * i, y = lo_y + step_y * j;
      if (dist(x, y, ax, ay) <= rho && dist(x, y, bx, by) <= rho)
        lens.emplace_back(x, y);
    }
  }
  if (lens.empty()) return 0.0;
  PlanarMinimax best = planar_minimax_oracle(lens, dist, 120);
  return best.radius;
}

}  // namespace testsupport
