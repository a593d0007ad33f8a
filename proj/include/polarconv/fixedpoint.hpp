#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convergence.hpp"
#include "extraction.hpp"

namespace polarconv {

// ---------------------------------------------------------------------------
// Nonexpansive self-maps of a clamped ball. Every descriptor is a closed-form
// recipe so orbits are reproducible; the clamp keeps iterates inside the host
// ball even when rounding pushes them out.

enum class MapKind {
  reflection,      // x -> -x
  rotation,        // rotate the (0,1) coordinate plane by a fixed angle
  affine_average,  // x -> (1-lambda) x + lambda target
  linear_clamped,  // x -> A x with operator norm <= 1, then clamp
  composite        // apply a list of maps left to right
};

inline const char* map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::reflection: return "reflection";
    case MapKind::rotation: return "rotation";
    case MapKind::affine_average: return "affine-average";
    case MapKind::linear_clamped: return "linear-clamped";
    case MapKind::composite: return "composite";
  }
  return "?";
}

struct MapDescriptor {
  MapKind kind = MapKind::reflection;
  SpaceDescriptor host;  // clamped_ball over a vector-space base
  double angle = 0.0;                        // rotation
  double lambda = 0.5;                       // affine_average
  PointRepr target;                          // affine_average
  std::vector<std::vector<double>> matrix;   // linear_clamped, row major
  std::vector<MapDescriptor> parts;          // composite
  std::string label;
};

namespace detail {

inline void require_clamped_host(const SpaceDescriptor& host) {
  if (host.kind != SpaceKind::clamped_ball)
    throw DomainError("map host must be a clamped ball");
}

// Operator norm of a square matrix via power iteration on A^T A.
inline double matrix_opnorm(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("matrix must be nonempty");
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("matrix must be square");
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(n), atav(n);
  double lambda = 0.0;
  for (int iter = 0; iter < 120; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
      av[i] = s;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += a[i][j] * av[i];
      atav[j] = s;
    }
    double norm = 0.0;
    for (double x : atav) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= 0.0) return 0.0;
    lambda = norm;
    for (std::size_t j = 0; j < n; ++j) v[j] = atav[j] / norm;
  }
  return std::sqrt(lambda);
}

}  // namespace detail

inline MapDescriptor make_reflection_map(SpaceDescriptor host) {
  detail::require_clamped_host(host);
  MapDescriptor m;
  m.kind = MapKind::reflection;
  m.host = std::move(host);
  m.label = "reflection";
  return m;
}

inline MapDescriptor make_rotation_map(SpaceDescriptor host, double angle) {
  detail::require_clamped_host(host);
  if (host.dim < 2) throw DomainError("rotation needs at least two coordinates");
  MapDescriptor m;
  m.kind = MapKind::rotation;
  m.host = std::move(host);
  m.angle = angle;
  m.label = "rotation";
  return m;
}

inline MapDescriptor make_affine_average_map(SpaceDescriptor host, double lambda,
                                             PointRepr target) {
  detail::require_clamped_host(host);
  if (!(lambda > 0.0) || lambda > 1.0)
    throw DomainError("affine average needs lambda in (0, 1]");
  if (vector_norm(host, target) > host.ball_radius + 1e-9)
    throw DomainError("affine average target must lie in the host ball");
  MapDescriptor m;
  m.kind = MapKind::affine_average;
  m.host = std::move(host);
  m.lambda = lambda;
  m.target = std::move(target);
  m.label = "affine-average";
  return m;
}

inline MapDescriptor make_linear_clamped_map(SpaceDescriptor host,
                                             std::vector<std::vector<double>> matrix) {
  detail::require_clamped_host(host);
  if (matrix.size() != static_cast<std::size_t>(host.dim))
    throw DomainError("matrix dimension must match the host");
  double opnorm = detail::matrix_opnorm(matrix);
  if (opnorm > 1.0 + 1e-9)
    throw DomainError("matrix operator norm exceeds 1");
  MapDescriptor m;
  m.kind = MapKind::linear_clamped;
  m.host = std::move(host);
  m.matrix = std::move(matrix);
  m.label = "linear-clamped";
  return m;
}

inline MapDescriptor make_composite_map(SpaceDescriptor host,
                                        std::vector<MapDescriptor> parts) {
  detail::require_clamped_host(host);
  if (parts.empty()) throw DomainError("composite map needs at least one part");
  for (const auto& p : parts)
    if (p.host.dim != host.dim)
      throw DomainError("composite parts must share the host dimension");
  MapDescriptor m;
  m.kind = MapKind::composite;
  m.host = std::move(host);
  m.parts = std::move(parts);
  m.label = "composite";
  return m;
}

// Krasnoselskii-averaged rotation (I + R)/2: same unique fixed point as the
// rotation itself, but its orbit is asymptotically regular, so the iteration
// theory applies to it.
inline MapDescriptor make_averaged_rotation_map(SpaceDescriptor host, double angle) {
  detail::require_clamped_host(host);
  if (host.dim < 2) throw DomainError("rotation needs at least two coordinates");
  const int d = host.dim;
  std::vector<std::vector<double>> a(static_cast<std::size_t>(d),
                                     std::vector<double>(static_cast<std::size_t>(d), 0.0));
  for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  a[0][0] = 0.5 * (1.0 + std::cos(angle));
  a[0][1] = 0.5 * (-std::sin(angle));
  a[1][0] = 0.5 * (std::sin(angle));
  a[1][1] = 0.5 * (1.0 + std::cos(angle));
  MapDescriptor m = make_linear_clamped_map(std::move(host), std::move(a));
  m.angle = angle;
  m.label = "averaged-rotation";
  return m;
}

inline PointRepr apply_map(const MapDescriptor& map, const PointRepr& x) {
  std::vector<double> c = point_coords(x);
  switch (map.kind) {
    case MapKind::reflection:
      for (double& v : c) v = -v;
      break;
    case MapKind::rotation: {
      double ca = std::cos(map.angle), sa = std::sin(map.angle);
      double u = c[0], v = c[1];
      c[0] = ca * u - sa * v;
      c[1] = sa * u + ca * v;
      break;
    }
    case MapKind::affine_average: {
      std::vector<double> t = point_coords(map.target);
      for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (1.0 - map.lambda) * c[i] + map.lambda * t[i];
      break;
    }
    case MapKind::linear_clamped: {
      std::vector<double> out(c.size(), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
          out[i] += map.matrix[i][j] * c[j];
      c = std::move(out);
      break;
    }
    case MapKind::composite: {
      PointRepr y = x;
      for (const auto& part : map.parts) y = apply_map(part, y);
      return project_into_space(map.host, y);
    }
  }
  return project_into_space(map.host, make_vec(std::move(c)));
}

// Empirical Lipschitz ratio over random pairs in the host ball. A shipped map
// must stay below 1 + 1e-9.
inline double lipschitz_probe(const MapDescriptor& map, int pairs = 500,
                              std::uint64_t seed = 11) {
  detail::require_clamped_host(map.host);
  Rng rng(seed);
  const int d = map.host.dim;
  auto draw = [&]() {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (double& v : c) v = map.host.ball_radius * rng.uniform(-1.0, 1.0);
    return project_into_space(map.host, make_vec(std::move(c)));
  };
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    PointRepr x = draw(), y = draw();
    double base = distance(map.host, x, y);
    if (base < 1e-12) continue;
    double image = distance(map.host, apply_map(map, x), apply_map(map, y));
    worst = std::max(worst, image / base);
  }
  return worst;
}

// Orbit oracle n -> T^n(x0), memoized up to the horizon.
inline SequenceOracle orbit(const MapDescriptor& map, const PointRepr& x0, int horizon) {
  detail::require_clamped_host(map.host);
  if (vector_norm(map.host, x0) > map.host.ball_radius + 1e-12)
    throw DomainError("orbit start must lie in the host ball");
  if (horizon <= 0) throw DomainError("orbit horizon must be positive");
  std::vector<PointRepr> pts;
  pts.reserve(static_cast<std::size_t>(horizon));
  PointRepr cur = x0;
  for (int n = 0; n < horizon; ++n) {
    pts.push_back(cur);
    cur = apply_map(map, cur);
  }
  return SequenceOracle::from_points(map.host, std::move(pts), true);
}

// ---------------------------------------------------------------------------
// Fixed points through asymptotic centers.

struct FixedPointConfig {
  int horizon = 160;
  CenterConfig center;
  double residual_floor = 1e-6;
};

struct FixedPointResult {
  PointRepr point;
  double residual = 0.0;   // d(c, T(c))
  double tolerance = 0.0;  // max(residual_floor, 10 * optimality gap)
  bool success = false;
  CenterResult center;
};

inline FixedPointResult fixed_point_via_center(const MapDescriptor& map,
                                               const PointRepr& x0,
                                               const FixedPointConfig& cfg = {}) {
  detail::require_clamped_host(map.host);
  if (!map.host.claims_sr)
    throw DomainError("fixed point via asymptotic center needs a rotund host");
  SequenceOracle o = orbit(map, x0, cfg.horizon);
  FixedPointResult res;
  res.center = asymptotic_center(o, cfg.center);
  res.point = res.center.center;
  res.residual = distance(map.host, res.point, apply_map(map, res.point));
  res.tolerance = std::max(cfg.residual_floor, 10.0 * res.center.optimality_gap);
  res.success = res.residual <= res.tolerance;
  return res;
}

// ---------------------------------------------------------------------------
// Asymptotic-regularity check along a subsequence: for each epsilon the
// predecessor of every late subsequence point must come epsilon-close in
// distance to the candidate, d(T^{k-1} x, y) < d(T^k x, y) + eps.

inline std::vector<double> default_par_eps_grid() {
  return {0.2, 0.1, 0.05, 0.02, 0.01};
}

struct ParReport {
  SubsequenceSpec subsequence;
  PointRepr candidate;
  std::vector<double> eps_grid;
  std::vector<int> least_index;  // per eps: first position from which all comply
  std::vector<bool> eps_pass;
  bool pass = false;
  double failing_eps = 0.0;  // first failing grid entry, 0 when pass
  int failing_orbit_index = -1;
  double failing_predecessor_distance = 0.0;
  double failing_distance = 0.0;
};

inline ParReport par_check(const MapDescriptor& map, const PointRepr& x0,
                           const SubsequenceSpec& spec, const PointRepr& candidate,
                           std::vector<double> eps_grid = default_par_eps_grid()) {
  detail::require_clamped_host(map.host);
  if (spec.indices.empty()) throw DomainError("par check needs a nonempty subsequence");
  if (eps_grid.empty()) throw ConfigError("par check needs a nonempty epsilon grid");
  for (double e : eps_grid)
    if (!(e > 0.0)) throw ConfigError("par epsilons must be positive");
  int max_index = 0;
  int prev = 0;
  for (int k : spec.indices) {
    if (k < 1) throw DomainError("par subsequence indices need a predecessor (k >= 1)");
    if (k <= prev && k != spec.indices.front())
      throw DomainError("par subsequence indices must be strictly increasing");
    prev = k;
    max_index = std::max(max_index, k);
  }
  SequenceOracle o = orbit(map, x0, max_index + 1);

  const int m = spec.size();
  std::vector<double> dist_pred(static_cast<std::size_t>(m));
  std::vector<double> dist_at(static_cast<std::size_t>(m));
  for (int pos = 0; pos < m; ++pos) {
    int k = spec.indices[static_cast<std::size_t>(pos)];
    dist_pred[static_cast<std::size_t>(pos)] = distance(map.host, o.point(k - 1), candidate);
    dist_at[static_cast<std::size_t>(pos)] = distance(map.host, o.point(k), candidate);
  }

  ParReport rep;
  rep.subsequence = spec;
  rep.candidate = candidate;
  rep.eps_grid = std::move(eps_grid);
  rep.pass = true;
  for (double eps : rep.eps_grid) {
    int last_violation = -1;
    for (int pos = 0; pos < m; ++pos) {
      if (!(dist_pred[static_cast<std::size_t>(pos)] <
            dist_at[static_cast<std::size_t>(pos)] + eps))
        last_violation = pos;
    }
    bool ok = last_violation < m - 1;
    rep.least_index.push_back(last_violation + 1);
    rep.eps_pass.push_back(ok);
    if (!ok && rep.pass) {
      rep.pass = false;
      rep.failing_eps = eps;
      rep.failing_orbit_index = spec.indices[static_cast<std::size_t>(last_violation)];
      rep.failing_predecessor_distance = dist_pred[static_cast<std::size_t>(last_violation)];
      rep.failing_distance = dist_at[static_cast<std::size_t>(last_violation)];
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Full pipeline: extract a strong-Delta subsequence from the orbit, check the
// regularity condition for its center, and only then test polar convergence
// of the whole orbit and the fixed-point residual. The gating is structural:
// without a passing regularity check no polar verdict is produced at all.

struct Polar2FixConfig {
  int horizon = 160;
  ExtractionConfig extraction;
  std::vector<double> eps_grid = default_par_eps_grid();
  double residual_floor = 1e-6;
  int lipschitz_pairs = 500;
  int probe_count = 8;
  std::uint64_t probe_seed = 67;
};

struct Polar2FixReport {
  std::string map_label;
  bool bounded_ok = false;
  bool rotund_ok = false;
  bool nonexpansive_ok = false;
  bool par_ok = false;
  double lipschitz_ratio = 0.0;
  std::optional<ExtractionTrace> trace;
  PointRepr candidate;
  std::optional<ParReport> par;
  std::optional<ConvergenceVerdict> polar;  // only present when PAR passed
  double residual = 0.0;
  double residual_tolerance = 0.0;
  bool residual_ok = false;
  bool success = false;
  std::string failed_hypothesis;  // empty when success
};

inline Polar2FixReport polar2fix_pipeline(const MapDescriptor& map, const PointRepr& x0,
                                          const Polar2FixConfig& cfg = {}) {
  Polar2FixReport rep;
  rep.map_label = map.label.empty() ? map_kind_name(map.kind) : map.label;
  rep.candidate = x0;
  rep.bounded_ok = map.host.kind == SpaceKind::clamped_ball;
  if (!rep.bounded_ok) {
    rep.failed_hypothesis = "bounded";
    return rep;
  }
  rep.rotund_ok = map.host.claims_sr;
  rep.lipschitz_ratio = lipschitz_probe(map, cfg.lipschitz_pairs);
  rep.nonexpansive_ok = rep.lipschitz_ratio <= 1.0 + 1e-9;

  SequenceOracle o = orbit(map, x0, cfg.horizon);
  rep.trace = extract_strong_delta(o, cfg.extraction);
  rep.candidate = rep.trace->final_center.center;

  SubsequenceSpec par_spec;
  for (int k : rep.trace->final_indices.indices)
    if (k >= 1) par_spec.indices.push_back(k);
  if (!par_spec.indices.empty()) {
    rep.par = par_check(map, x0, par_spec, rep.candidate, cfg.eps_grid);
    rep.par_ok = rep.par->pass;
  }

  if (rep.par_ok && rep.rotund_ok && rep.nonexpansive_ok) {
    ProbeConfig pc;
    pc.strategy = ProbeStrategy::ball_uniform;
    pc.count = cfg.probe_count;
    pc.seed = cfg.probe_seed;
    pc.radius_scale = map.host.ball_radius;
    std::vector<PointRepr> probes;
    for (auto& p : sample_probes(map.host, rep.candidate, pc))
      if (distance(map.host, p, rep.candidate) > 1e-9) probes.push_back(std::move(p));
    for (int early : {0, 1}) {
      if (early < o.horizon() &&
          distance(map.host, o.point(early), rep.candidate) > 1e-9)
        probes.push_back(o.point(early));
    }
    if (!probes.empty()) rep.polar = polar_test(o, rep.candidate, probes);
  }

  rep.residual = distance(map.host, rep.candidate, apply_map(map, rep.candidate));
  rep.residual_tolerance =
      std::max(cfg.residual_floor,
               10.0 * (rep.trace ? rep.trace->final_center.optimality_gap : 0.0));
  rep.residual_ok = rep.residual <= rep.residual_tolerance;

  bool polar_certified = rep.polar && rep.polar->certified();
  rep.success = rep.bounded_ok && rep.rotund_ok && rep.nonexpansive_ok && rep.par_ok &&
                polar_certified && rep.residual_ok;
  if (!rep.success) {
    if (!rep.rotund_ok) rep.failed_hypothesis = "rotund";
    else if (!rep.nonexpansive_ok) rep.failed_hypothesis = "nonexpansive";
    else if (!rep.par_ok) rep.failed_hypothesis = "par";
    else if (!polar_certified) rep.failed_hypothesis = "polar";
    else rep.failed_hypothesis = "residual";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Opial-style sampling: the weak limit should minimize the tail-min of the
// distances. The caller supplies the weak-convergence certificate; without it
// the check refuses to run.

struct OpialEntry {
  PointRepr probe;
  double tail_min = 0.0;
  bool pass = false;
};

struct OpialReport {
  PointRepr candidate;
  double tail_min_candidate = 0.0;
  std::vector<OpialEntry> entries;
  bool all_pass = false;
  double tolerance = 0.0;
  TailWindow window;
};

inline OpialReport opial_check(const SequenceOracle& oracle, const PointRepr& candidate,
                               const std::vector<PointRepr>& probes, bool weak_certified,
                               TailWindow window = {}, double tol = 1e-9) {
  const SpaceDescriptor& s = oracle.space();
  const SpaceDescriptor& base = (s.kind == SpaceKind::clamped_ball) ? *s.base : s;
  switch (base.kind) {
    case SpaceKind::euclidean:
    case SpaceKind::lp_vec:
    case SpaceKind::lp_grid:
      break;
    default:
      throw DomainError("opial check needs a smooth vector-space kind");
  }
  if (!weak_certified)
    throw DomainError("opial check requires a weak-convergence certificate");
  if (probes.empty()) throw DomainError("opial check needs at least one probe");
  window.validate();
  require_horizon(oracle);
  const int n = oracle.horizon();
  const int w0 = window.start(n);

  auto tail_min = [&](const PointRepr& y) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = w0; i < n; ++i)
      best = std::min(best, distance(s, oracle.point(i), y));
    return best;
  };

  OpialReport rep;
  rep.candidate = candidate;
  rep.tail_min_candidate = tail_min(candidate);
  rep.tolerance = tol;
  rep.window = window;
  rep.all_pass = true;
  for (const auto& y : probes) {
    OpialEntry e;
    e.probe = y;
    e.tail_min = tail_min(y);
    e.pass = rep.tail_min_candidate <= e.tail_min + tol;
    rep.all_pass = rep.all_pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace polarconv
