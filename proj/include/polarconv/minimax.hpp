#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "polarconv/errors.hpp"
#include "polarconv/numeric.hpp"
#include "polarconv/probes.hpp"
#include "polarconv/rng.hpp"
#include "polarconv/seb.hpp"
#include "polarconv/space.hpp"

namespace polarconv {

// Shared solver configuration for the minimax "center" problems
//   minimize_y  max_i d(x_i, y).
struct MinimaxConfig {
  int restarts = 5;         // independent starts of the subgradient solver
  int iterations = 400;     // subgradient steps per restart (step c/sqrt(k))
  std::uint64_t seed = 97;
  int probe_rounds = 2;     // refinement rounds of the generic search
  int probe_count = 64;     // probes per refinement round
  std::vector<PointRepr> hints; // optional warm-start candidates
  // When set, the generic candidate pool is shuffled by `seed` before the
  // scan. Ties then resolve differently per seed, which is exactly what a
  // uniqueness probe wants and what default determinism forbids.
  bool shuffle_pool = false;
};

struct MinimaxResult {
  PointRepr center;
  double radius = 0.0;
  double lower_bound = 0.0; // certified: half-diameter, or the dual bound
  int iterations = 0;
};

// Half of the (sampled) diameter: a lower bound for the minimax value in any
// metric space, by the triangle inequality. Sampling pairs keeps it a valid
// (possibly weaker) bound.
inline double half_diameter_bound(const SpaceDescriptor& s,
                                  const std::vector<PointRepr>& pts) {
  const std::size_t n = pts.size();
  double m = 0.0;
  if (n <= 450) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        m = std::max(m, distance(s, pts[i], pts[j]));
  } else {
    const std::size_t anchors[] = {0, n / 4, n / 2, (3 * n) / 4, n - 1};
    for (std::size_t a : anchors)
      for (std::size_t j = 0; j < n; ++j)
        m = std::max(m, distance(s, pts[a], pts[j]));
  }
  return 0.5 * m;
}

namespace detail {

inline double eval_max_dist(const SpaceDescriptor& s, const std::vector<PointRepr>& pts,
                            const PointRepr& y) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, distance(s, p, y));
  return m;
}

inline std::vector<double> mean_coords(const std::vector<PointRepr>& pts) {
  std::vector<double> m = point_coords(pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<double> c = point_coords(pts[i]);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += c[k];
  }
  for (double& v : m) v /= static_cast<double>(pts.size());
  return m;
}

// Subgradient of y -> d(a, y) for the (weighted) p-norm metrics.
inline std::vector<double> pnorm_subgradient(const SpaceDescriptor& host,
                                             const std::vector<double>& y,
                                             const std::vector<double>& a) {
  const double p = (host.kind == SpaceKind::one_norm_vec) ? 1.0 : host.p;
  std::vector<double> g(y.size(), 0.0);
  double nrm = 0.0;
  {
    KahanSum acc;
    for (std::size_t i = 0; i < y.size(); ++i) {
      double w = (host.kind == SpaceKind::lp_grid) ? host.weights[i] : 1.0;
      acc.add(w * std::pow(std::fabs(y[i] - a[i]), p));
    }
    nrm = std::pow(acc.value(), 1.0 / p);
  }
  if (nrm <= 0.0) return g;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double w = (host.kind == SpaceKind::lp_grid) ? host.weights[i] : 1.0;
    double u = y[i] - a[i];
    double sgn = (u > 0.0) - (u < 0.0);
    g[i] = w * std::pow(std::fabs(u), p - 1.0) * sgn * std::pow(nrm, 1.0 - p);
  }
  return g;
}

// Golden-section polish along coordinate axes; only worthwhile (and only
// run) in low dimension, where it drives the max-of-norms objective to
// near machine precision so independent restarts coincide.
inline void axis_polish(const SpaceDescriptor& s, const std::vector<PointRepr>& pts,
                        std::vector<double>& y, double& fy, double span) {
  const std::size_t dim = y.size();
  auto feval = [&](const std::vector<double>& c) {
    PointRepr cand = project_into_space(s, make_vec(std::vector<double>(c)));
    return eval_max_dist(s, pts, cand);
  };
  double h = std::max(span, 1e-6);
  for (int cycle = 0; cycle < 3; ++cycle) {
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<double> probe = y;
      double xk = golden_section_min(
          [&](double t) {
            probe[k] = t;
            return feval(probe);
          },
          y[k] - h, y[k] + h, 1e-11 * (1.0 + h));
      probe[k] = xk;
      double f = feval(probe);
      if (f < fy) {
        fy = f;
        y = probe;
      }
    }
    h /= 8.0;
  }
}

inline MinimaxResult minimax_lp(const SpaceDescriptor& s,
                                const std::vector<PointRepr>& pts,
                                const MinimaxConfig& cfg) {
  const SpaceDescriptor& host = (s.kind == SpaceKind::clamped_ball) ? *s.base : s;
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> coords;
  coords.reserve(pts.size());
  for (const auto& p : pts) coords.push_back(point_coords(p));
  const std::size_t dim = coords[0].size();

  // Restart starts: tail mean, three spread tail points, a perturbed mean,
  // then any warm-start hints.
  std::vector<std::vector<double>> starts;
  starts.push_back(mean_coords(pts));
  starts.push_back(coords[0]);
  starts.push_back(coords[coords.size() / 2]);
  starts.push_back(coords[coords.size() - 1]);
  {
    std::vector<double> m = starts[0];
    for (double& v : m) v += 0.1 * rng.uniform(-1.0, 1.0);
    starts.push_back(std::move(m));
  }
  for (const auto& h : cfg.hints)
    if (!is_quad(h)) starts.push_back(point_coords(h));
  if (static_cast<int>(starts.size()) > cfg.restarts + static_cast<int>(cfg.hints.size()))
    starts.resize(static_cast<std::size_t>(cfg.restarts + static_cast<int>(cfg.hints.size())));

  auto feval = [&](const std::vector<double>& y) {
    PointRepr cand = project_into_space(s, make_vec(std::vector<double>(y)));
    return eval_max_dist(s, pts, cand);
  };

  std::vector<double> best;
  double fbest = std::numeric_limits<double>::infinity();
  int total_iters = 0;
  for (auto& y0 : starts) {
    std::vector<double> y = y0;
    double fy = feval(y);
    std::vector<double> yb = y;
    double fb = fy;
    double step0 = 0.5 * std::max(fy, 1e-9);
    for (int k = 1; k <= cfg.iterations; ++k) {
      // Active set: farthest point(s) of the list at the current iterate;
      // exact ties contribute their averaged gradient.
      double fmax = -1.0;
      std::vector<double> dists(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) {
        dists[i] = distance(s, pts[i], make_vec(std::vector<double>(y)));
        fmax = std::max(fmax, dists[i]);
      }
      std::vector<double> g(dim, 0.0);
      int active = 0;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (dists[i] < fmax - 1e-12 * (1.0 + fmax)) continue;
        std::vector<double> gi = pnorm_subgradient(host, y, coords[i]);
        for (std::size_t t = 0; t < dim; ++t) g[t] += gi[t];
        ++active;
      }
      for (double& v : g) v /= static_cast<double>(active);
      double gn = 0.0;
      for (double v : g) gn += v * v;
      gn = std::sqrt(gn);
      if (gn <= 0.0) break;
      double step = step0 / std::sqrt(static_cast<double>(k));
      for (std::size_t i = 0; i < dim; ++i) y[i] -= step * g[i] / gn;
      if (s.kind == SpaceKind::clamped_ball) {
        PointRepr pr = project_into_space(s, make_vec(std::vector<double>(y)));
        y = point_coords(pr);
      }
      double f = feval(y);
      ++total_iters;
      if (f < fb) { fb = f; yb = y; }
    }
    if (dim <= 16) axis_polish(s, pts, yb, fb, fb);
    if (fb < fbest) { fbest = fb; best = yb; }
  }

  MinimaxResult out;
  out.center = project_into_space(s, make_vec(std::move(best)));
  out.radius = fbest;
  out.lower_bound = half_diameter_bound(s, pts);
  out.iterations = total_iters;
  return out;
}

inline MinimaxResult minimax_generic(const SpaceDescriptor& s,
                                     const std::vector<PointRepr>& pts,
                                     const MinimaxConfig& cfg) {
  // Candidate pool in generation order: the points themselves, pairwise
  // midpoints where they exist, caller hints, then seeded refinement probes
  // around the incumbent. First-found keeps ties (lowest generation wins).
  std::vector<PointRepr> pool;
  for (const auto& p : pts) pool.push_back(p);
  if (s.has_menger_midpoints) {
    std::size_t cap = std::min<std::size_t>(pts.size(), 64);
    for (std::size_t i = 0; i < cap; ++i)
      for (std::size_t j = i + 1; j < cap; ++j) {
        auto m = midpoint(s, pts[i], pts[j]);
        if (m) pool.push_back(*m);
      }
  }
  for (const auto& h : cfg.hints) pool.push_back(h);
  if (cfg.shuffle_pool) {
    Rng rng(cfg.seed * 2654435761u + 17);
    for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
      std::size_t j = i + rng.index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
  }

  PointRepr best = pool.front();
  double fbest = std::numeric_limits<double>::infinity();
  int evals = 0;
  auto scan = [&](const std::vector<PointRepr>& cands) {
    for (const auto& c : cands) {
      double f = detail::eval_max_dist(s, pts, c);
      ++evals;
      if (f < fbest) { fbest = f; best = c; }
    }
  };
  scan(pool);

  for (int round = 0; round < cfg.probe_rounds; ++round) {
    double scale = std::max(fbest, 1e-6) / static_cast<double>(2 << round);
    ProbeConfig pc;
    pc.strategy = ProbeStrategy::ball_uniform;
    pc.count = cfg.probe_count;
    pc.seed = cfg.seed + static_cast<std::uint64_t>(round + 1);
    pc.radius_scale = scale;
    std::vector<PointRepr> probes = sample_probes(s, best, pc, &pts);
    scan(probes);
  }

  MinimaxResult out;
  out.center = best;
  out.radius = fbest;
  out.lower_bound = half_diameter_bound(s, pts);
  out.iterations = evals;
  return out;
}

} // namespace detail

// Dispatch: Euclidean gets the certified enclosing-ball solver, p-norm
// spaces the subgradient scheme, everything else the candidate search.
inline MinimaxResult minimax_over_points(const SpaceDescriptor& s,
                                         const std::vector<PointRepr>& pts,
                                         const MinimaxConfig& cfg = {}) {
  if (pts.empty()) throw DomainError("minimax over an empty point set");
  const SpaceDescriptor& host = (s.kind == SpaceKind::clamped_ball) ? *s.base : s;
  switch (host.kind) {
    case SpaceKind::euclidean: {
      std::vector<std::vector<double>> coords;
      coords.reserve(pts.size());
      for (const auto& p : pts) coords.push_back(point_coords(p));
      SebResult seb = seb_euclidean(coords);
      MinimaxResult out;
      out.center = project_into_space(s, make_vec(std::move(seb.center)));
      out.radius = seb.radius;
      out.lower_bound = std::max(seb.radius - seb.gap, half_diameter_bound(s, pts));
      out.iterations = seb.iterations;
      return out;
    }
    case SpaceKind::lp_vec:
    case SpaceKind::lp_grid:
      return detail::minimax_lp(s, pts, cfg);
    default:
      return detail::minimax_generic(s, pts, cfg);
  }
}

} // namespace polarconv
