#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polarconv/minimax.hpp"
#include "polarconv/oracle.hpp"

namespace polarconv {

// Finite-horizon estimate of I(y) = limsup_n d(x_n, y). The primary value
// uses the [βN, N) tail; the wider-offset [β′N, N) tail supplies a
// stability diagnostic (a large gap means the horizon is too short to
// trust the estimate).
struct AsymptoticEstimate {
  double value = 0.0;
  double stability_gap = 0.0;
};

struct CenterConfig {
  TailWindow window;
  MinimaxConfig solver;
};

// Estimated asymptotic center of a sequence (or Chebyshev center of a set).
struct CenterResult {
  PointRepr center;
  double radius = 0.0;
  double optimality_gap = 0.0; // radius found minus certified lower bound
  double stability_gap = 0.0;  // window-sensitivity of the radius at the center
  int solver_iterations = 0;
  TailWindow window;
};

inline AsymptoticEstimate eval_I(const SequenceOracle& oracle, const PointRepr& y,
                                 const TailWindow& window = {}) {
  window.validate();
  require_horizon(oracle, 4);
  const std::size_t n = oracle.horizon();
  const std::size_t a = window.start(n);
  const std::size_t b = window.start_prime(n);
  double v = 0.0, v2 = 0.0;
  for (std::size_t i = a; i < n; ++i) {
    double d = distance(oracle.space(), oracle.point(i), y);
    v = std::max(v, d);
    if (i >= b) v2 = std::max(v2, d);
  }
  return {v, std::fabs(v - v2)};
}

inline CenterResult asymptotic_center(const SequenceOracle& oracle,
                                      const CenterConfig& cfg = {}) {
  cfg.window.validate();
  require_horizon(oracle, 4);
  oracle.require_bounded();
  std::vector<PointRepr> tail = oracle.window_points(cfg.window);
  MinimaxResult mm = minimax_over_points(oracle.space(), tail, cfg.solver);
  CenterResult out;
  out.center = mm.center;
  out.radius = mm.radius;
  out.optimality_gap = std::max(0.0, mm.radius - mm.lower_bound);
  out.stability_gap = eval_I(oracle, mm.center, cfg.window).stability_gap;
  out.solver_iterations = mm.iterations;
  out.window = cfg.window;
  return out;
}

inline double asymptotic_radius(const SequenceOracle& oracle,
                                const CenterConfig& cfg = {}) {
  return asymptotic_center(oracle, cfg).radius;
}

// Chebyshev radius/center of a finite set: same minimax core, no window.
struct ChebyshevResult {
  double radius = 0.0;
  PointRepr center;
  double gap = 0.0;
  int iterations = 0;
};

inline ChebyshevResult chebyshev_radius(const SpaceDescriptor& space,
                                        const std::vector<PointRepr>& points,
                                        const MinimaxConfig& cfg = {}) {
  if (points.empty()) throw DomainError("chebyshev_radius of an empty set");
  MinimaxResult mm = minimax_over_points(space, points, cfg);
  return {mm.radius, mm.center, std::max(0.0, mm.radius - mm.lower_bound),
          mm.iterations};
}

} // namespace polarconv
