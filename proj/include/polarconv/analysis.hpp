#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "asymptotic.hpp"
#include "convergence.hpp"
#include "gridfn.hpp"

namespace polarconv {

// ---------------------------------------------------------------------------
// Duality map on weighted discrete L^p: u* has unit conjugate norm and pairs
// with u to exactly ||u||_p.

struct DualityVector {
  std::vector<double> values;
  std::vector<double> weights;
  double p_conjugate = 2.0;  // p' = p/(p-1)
  double source_norm = 0.0;  // ||u||_p

  double norm() const {
    return GridFunction::weighted_p_norm(values, weights, p_conjugate);
  }
};

inline DualityVector duality_map(const GridFunction& u) {
  u.validate();
  double n = u.norm();
  if (!(n > 0.0)) throw DomainError("duality map needs a nonzero function");
  DualityVector star;
  star.weights = u.weights;
  star.p_conjugate = u.p / (u.p - 1.0);
  star.source_norm = n;
  star.values.resize(u.size());
  double scale = std::pow(n, u.p - 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    double v = u.values[i];
    double mag = std::pow(std::fabs(v), u.p - 1.0) / scale;
    star.values[i] = (v < 0.0) ? -mag : (v > 0.0 ? mag : 0.0);
  }
  return star;
}

inline double duality_pairing(const DualityVector& star, const GridFunction& u) {
  if (star.values.size() != u.size())
    throw RepresentationError("duality pairing: size mismatch");
  return GridFunction::weighted_pairing(star.values, u.values, u.weights);
}

// ---------------------------------------------------------------------------
// Weak convergence surrogate: pairings against a fixed, named test family
// must vanish over the tail. The default family mixes the constant vector,
// spread coordinate indicators, and seeded smooth combinations of odd low
// frequencies; odd frequencies stay exactly orthogonal on the uniform circle
// grid to every harmonic an even-symmetric oscillation can produce, so the
// family does not alias against the oscillating fixtures it is meant to pass.

struct WeakTestVector {
  std::vector<double> values;
  std::string name;
};

struct WeakTestFamily {
  std::vector<WeakTestVector> members;
};

inline WeakTestFamily default_weak_family(int grid, std::uint64_t seed = 53,
                                          int smooth_count = 8) {
  if (grid < 16) throw DomainError("weak test family needs grid >= 16");
  WeakTestFamily fam;
  fam.members.push_back({std::vector<double>(static_cast<std::size_t>(grid), 1.0),
                         "constant"});
  for (int j = 0; j < 8; ++j) {
    int idx = grid * j / 8 + grid / 16;
    std::vector<double> v(static_cast<std::size_t>(grid), 0.0);
    v[static_cast<std::size_t>(idx)] = 1.0;
    fam.members.push_back({std::move(v), "indicator[" + std::to_string(idx) + "]"});
  }
  const double step = 2.0 * M_PI / static_cast<double>(grid);
  Rng rng(seed);
  for (int k = 0; k < smooth_count; ++k) {
    std::vector<double> coeff;
    for (int m = 0; m < 8; ++m) coeff.push_back(rng.uniform(-1.0, 1.0));
    std::vector<double> v(static_cast<std::size_t>(grid), 0.0);
    double peak = 0.0;
    for (int i = 0; i < grid; ++i) {
      double t = step * (static_cast<double>(i) + 0.5);
      double s = 0.0;
      for (int j = 0; j < 4; ++j) {
        double freq = static_cast<double>(2 * j + 1);  // odd: 1, 3, 5, 7
        s += coeff[static_cast<std::size_t>(2 * j)] * std::cos(freq * t) +
             coeff[static_cast<std::size_t>(2 * j + 1)] * std::sin(freq * t);
      }
      v[static_cast<std::size_t>(i)] = s;
      peak = std::max(peak, std::fabs(s));
    }
    if (peak > 0.0)
      for (double& x : v) x /= peak;
    fam.members.push_back({std::move(v), "smooth[" + std::to_string(k) + "]"});
  }
  return fam;
}

struct WeakPairingEntry {
  std::string name;
  double tail_max = 0.0;
  int worst_index = -1;
};

struct WeakPairingVerdict {
  VerdictStatus status = VerdictStatus::inconclusive;
  double tolerance = 0.0;
  TailWindow window;
  std::vector<WeakPairingEntry> table;
  int witness_member = -1;  // falsifying family member, -1 when certified
  double worst_pairing = 0.0;

  bool certified() const { return status == VerdictStatus::certified; }
};

inline WeakPairingVerdict weak_pairing_test(const std::vector<GridFunction>& seq,
                                            const GridFunction& u,
                                            const WeakTestFamily& family,
                                            TailWindow window = {},
                                            double tol = 0.02) {
  if (seq.size() < 4) throw DomainError("weak pairing test needs horizon >= 4");
  if (family.members.empty()) throw ConfigError("weak pairing test needs a family");
  if (!(tol > 0.0)) throw ConfigError("weak pairing tolerance must be positive");
  window.validate();
  u.validate();
  const int n = static_cast<int>(seq.size());
  for (const auto& f : seq)
    if (f.size() != u.size())
      throw RepresentationError("weak pairing test: grid size mismatch");
  const int w0 = window.start(n);

  WeakPairingVerdict out;
  out.tolerance = tol;
  out.window = window;
  out.worst_pairing = 0.0;
  for (std::size_t m = 0; m < family.members.size(); ++m) {
    const auto& phi = family.members[m];
    if (phi.values.size() != u.size())
      throw RepresentationError("weak pairing test: family size mismatch");
    WeakPairingEntry e;
    e.name = phi.name;
    for (int i = w0; i < n; ++i) {
      KahanSum s;
      for (std::size_t j = 0; j < u.size(); ++j)
        s.add(u.weights[j] * phi.values[j] * (seq[static_cast<std::size_t>(i)].values[j] -
                                              u.values[j]));
      double a = std::fabs(s.value());
      if (a > e.tail_max) {
        e.tail_max = a;
        e.worst_index = i;
      }
    }
    if (e.tail_max > out.worst_pairing) {
      out.worst_pairing = e.tail_max;
      if (e.tail_max > tol) out.witness_member = static_cast<int>(m);
    }
    out.table.push_back(std::move(e));
  }
  out.status = (out.worst_pairing <= tol) ? VerdictStatus::certified
                                          : VerdictStatus::falsified;
  if (out.status == VerdictStatus::certified) out.witness_member = -1;
  return out;
}

// ---------------------------------------------------------------------------
// Shared plumbing: a grid-function sequence as a sequence oracle on the
// weighted-L^p space, and the probe family used by the polar checks here.
// Probes mix random ball points, constant shifts of the candidate, and
// midpoints toward pre-window sequence points; none of them can collide with
// a window-interior sequence point, which would turn a single index into a
// spurious violation.

namespace detail {

inline SpaceDescriptor grid_space_of(const GridFunction& u) {
  return SpaceDescriptor::lp_grid(u.weights, u.p);
}

inline SequenceOracle grid_oracle(const std::vector<GridFunction>& seq,
                                  const SpaceDescriptor& space) {
  std::vector<PointRepr> pts;
  pts.reserve(seq.size());
  for (const auto& f : seq) pts.push_back(make_vec(f.values));
  return SequenceOracle::from_points(space, std::move(pts), true);
}

inline std::vector<PointRepr> grid_polar_probes(const SpaceDescriptor& space,
                                                const PointRepr& candidate,
                                                const SequenceOracle& oracle,
                                                const TailWindow& window,
                                                double min_separation,
                                                std::uint64_t seed,
                                                const std::vector<double>& offsets) {
  const int n = oracle.horizon();
  const int w0 = window.start(n);
  double tail_scale = 0.0;
  for (int i = w0; i < n; ++i)
    tail_scale = std::max(tail_scale, distance(space, oracle.point(i), candidate));
  if (tail_scale <= 0.0) tail_scale = 1.0;

  std::vector<PointRepr> probes;
  ProbeConfig pc;
  pc.strategy = ProbeStrategy::ball_uniform;
  pc.count = 6;
  pc.seed = seed;
  pc.radius_scale = tail_scale;
  for (auto& p : sample_probes(space, candidate, pc))
    if (distance(space, p, candidate) >= min_separation) probes.push_back(std::move(p));

  std::vector<double> base = point_coords(candidate);
  for (double s : offsets) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> c = base;
      for (double& v : c) v += sign * s * tail_scale;
      PointRepr p = make_vec(std::move(c));
      if (distance(space, p, candidate) >= min_separation) probes.push_back(std::move(p));
    }
  }

  for (int frac = 1; frac <= 4; ++frac) {
    int idx = (w0 * frac) / 4 - 1;
    if (idx < 0 || idx >= w0) continue;
    std::vector<double> c = point_coords(oracle.point(idx));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = 0.5 * (c[j] + base[j]);
    PointRepr p = make_vec(std::move(c));
    if (distance(space, p, candidate) >= min_separation) probes.push_back(std::move(p));
  }
  return probes;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polar convergence against the candidate versus weak vanishing of the dual
// sequence: the two verdicts must agree. Disagreement is flagged, never
// silently passed.

struct ConjConfig {
  TailWindow window;
  double eps0 = 1e-3;     // required tail separation min ||x_n - x||
  double weak_tol = 0.02;
  std::vector<double> constant_offsets = {0.02, 0.05, 0.1, 0.25};
  std::uint64_t seed = 59;
};

struct ConjReport {
  double tail_min_distance = 0.0;
  ConvergenceVerdict polar;
  WeakPairingVerdict weak_dual;
  bool agree = false;
  std::string incident;  // nonempty iff the verdicts disagree
};

inline ConjReport conj_equivalence_check(const std::vector<GridFunction>& seq,
                                         const GridFunction& x,
                                         const ConjConfig& cfg = {}) {
  if (seq.size() < 8) throw DomainError("conj check needs horizon >= 8");
  cfg.window.validate();
  x.validate();
  const int n = static_cast<int>(seq.size());
  const int w0 = cfg.window.start(n);
  SpaceDescriptor space = detail::grid_space_of(x);
  SequenceOracle oracle = detail::grid_oracle(seq, space);
  PointRepr cand = make_vec(x.values);

  ConjReport rep;
  rep.tail_min_distance = std::numeric_limits<double>::infinity();
  for (int i = w0; i < n; ++i)
    rep.tail_min_distance =
        std::min(rep.tail_min_distance, distance(space, oracle.point(i), cand));
  if (!(rep.tail_min_distance >= cfg.eps0))
    throw DomainError("conj check: tail separation hypothesis violated");

  std::vector<PointRepr> probes = detail::grid_polar_probes(
      space, cand, oracle, cfg.window, cfg.eps0 / 2.0, cfg.seed, cfg.constant_offsets);
  rep.polar = polar_test(oracle, cand, probes, cfg.window);

  std::vector<GridFunction> duals;
  duals.reserve(seq.size());
  double pc = x.p / (x.p - 1.0);
  for (const auto& f : seq) {
    std::vector<double> diff(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) diff[j] = f.values[j] - x.values[j];
    GridFunction v(std::move(diff), x.weights, x.p);
    if (v.norm() > 0.0) {
      DualityVector star = duality_map(v);
      duals.emplace_back(std::move(star.values), x.weights, pc);
    } else {
      duals.emplace_back(std::vector<double>(f.size(), 0.0), x.weights, pc);
    }
  }
  GridFunction zero(std::vector<double>(x.size(), 0.0), x.weights, pc);
  rep.weak_dual = weak_pairing_test(duals, zero,
                                    default_weak_family(static_cast<int>(x.size())),
                                    cfg.window, cfg.weak_tol);

  bool polar_cert = rep.polar.certified();
  bool polar_fals = rep.polar.status == VerdictStatus::falsified;
  bool weak_cert = rep.weak_dual.certified();
  rep.agree = (polar_cert && weak_cert) || (polar_fals && !weak_cert);
  if (!rep.agree) {
    rep.incident = "numerical-resolution incident: polar=" +
                   std::string(status_name(rep.polar.status)) +
                   " weak-dual=" + std::string(status_name(rep.weak_dual.status));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak limit versus asymptotic center for oscillating rectified-sine data:
// u_n(t) = a + b |sin((2n+1) t)| on the uniform circle grid. Odd frequencies
// are coprime to the power-of-two grid, so every u_n carries the same value
// multiset and the constant-candidate objective is exactly independent of n.
// The headline center is the best constant; the general-candidate refinement
// is reported as a diagnostic (its finite-window drift off the constants is a
// surrogate artifact that vanishes as the horizon grows).

struct OpialDemoResult {
  double p = 4.0;
  int grid = 512;
  int horizon = 128;
  double a = 1.0, b = 1.0;
  double weak_value = 0.0;    // w: tail-average of the grid means
  double center_value = 0.0;  // c: best constant candidate
  double gap = 0.0;           // |w - c| * (total weight)^(1/p)
  double const_radius = 0.0;  // objective at c
  double general_radius = 0.0;
  double general_improvement = 0.0;
  bool control_case = false;  // p == 2: gap should vanish
  WeakPairingVerdict weak;
};

inline OpialDemoResult opial_lp_divergence_demo(double p, int grid = 512,
                                                int horizon = 128, double a = 1.0,
                                                double b = 1.0) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("opial demo needs p in (1, infinity)");
  if (grid < 64 || grid % 2 != 0)
    throw DomainError("opial demo needs an even grid of at least 64 points");
  if (horizon < 16) throw DomainError("opial demo needs horizon >= 16");
  if (2 * (horizon - 1) + 1 >= grid)
    throw DomainError("opial demo: frequencies must stay below the grid size");

  const double step = 2.0 * M_PI / static_cast<double>(grid);
  std::vector<GridFunction> seq;
  seq.reserve(static_cast<std::size_t>(horizon));
  for (int nn = 0; nn < horizon; ++nn) {
    double freq = static_cast<double>(2 * nn + 1);
    std::vector<double> v(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
      double t = step * (static_cast<double>(i) + 0.5);
      v[static_cast<std::size_t>(i)] = a + b * std::fabs(std::sin(freq * t));
    }
    seq.push_back(GridFunction::on_circle_grid(std::move(v), p));
  }

  OpialDemoResult res;
  res.p = p;
  res.grid = grid;
  res.horizon = horizon;
  res.a = a;
  res.b = b;
  res.control_case = std::fabs(p - 2.0) < 1e-12;

  TailWindow window;
  const int w0 = window.start(horizon);
  KahanSum mean_acc;
  double total_weight = 0.0;
  {
    KahanSum tw;
    for (double w : seq[0].weights) tw.add(w);
    total_weight = tw.value();
  }
  for (int nn = w0; nn < horizon; ++nn) {
    KahanSum s;
    for (std::size_t j = 0; j < seq[static_cast<std::size_t>(nn)].size(); ++j)
      s.add(seq[static_cast<std::size_t>(nn)].weights[j] *
            seq[static_cast<std::size_t>(nn)].values[j]);
    mean_acc.add(s.value() / total_weight);
  }
  res.weak_value = mean_acc.value() / static_cast<double>(horizon - w0);

  {
    std::vector<double> wv(static_cast<std::size_t>(grid), res.weak_value);
    GridFunction wfn = GridFunction::on_circle_grid(std::move(wv), p);
    res.weak = weak_pairing_test(seq, wfn, default_weak_family(grid), window);
  }

  auto const_objective = [&](double y) {
    double worst = 0.0;
    for (int nn = w0; nn < horizon; ++nn) {
      KahanSum s;
      const auto& f = seq[static_cast<std::size_t>(nn)];
      for (std::size_t j = 0; j < f.size(); ++j)
        s.add(f.weights[j] * std::pow(std::fabs(f.values[j] - y), p));
      worst = std::max(worst, std::pow(s.value(), 1.0 / p));
    }
    return worst;
  };
  double lo = a - std::fabs(b) - 0.5, hi = a + std::fabs(b) + 1.5;
  res.center_value = golden_section_min(const_objective, lo, hi, 1e-11);
  res.const_radius = const_objective(res.center_value);
  res.gap = std::fabs(res.weak_value - res.center_value) *
            std::pow(total_weight, 1.0 / p);

  {
    SpaceDescriptor space = detail::grid_space_of(seq[0]);
    SequenceOracle oracle = detail::grid_oracle(seq, space);
    CenterConfig cc;
    cc.solver.hints.push_back(
        make_vec(std::vector<double>(static_cast<std::size_t>(grid), res.center_value)));
    // The refinement is diagnostic; a single short solve from the constant
    // hint is enough to report how much general candidates can still improve.
    cc.solver.restarts = 1;
    cc.solver.iterations = 150;
    cc.solver.probe_rounds = 1;
    CenterResult general = asymptotic_center(oracle, cc);
    res.general_radius = general.radius;
    res.general_improvement = res.const_radius - general.radius;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Deficit check: sum |u_n|^p - sum |u|^p - sum |u_n - u|^p over the weighted
// grid, gated on certified weak and polar convergence. Assertion path for
// p >= 3; exact-identity check for p = 2; exploratory otherwise.

struct BlReport {
  double p = 0.0;
  bool assertion_applies = false;  // p >= 3
  bool identity_case = false;      // p == 2
  bool exploratory = false;        // p in (1,3) \ {2}
  std::vector<double> deficits;    // one entry per index
  double tail_min = 0.0;
  double tail_max_abs = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
  TailWindow window;
  WeakPairingVerdict weak;
  ConvergenceVerdict polar;
};

inline BlReport brezis_lieb_check(const std::vector<GridFunction>& seq,
                                  const GridFunction& u, TailWindow window = {},
                                  std::uint64_t seed = 83) {
  if (seq.size() < 8) throw DomainError("deficit check needs horizon >= 8");
  window.validate();
  u.validate();
  const int n = static_cast<int>(seq.size());
  const int w0 = window.start(n);

  BlReport rep;
  rep.p = u.p;
  rep.window = window;
  rep.assertion_applies = u.p >= 3.0;
  rep.identity_case = std::fabs(u.p - 2.0) < 1e-12;
  rep.exploratory = !rep.assertion_applies && !rep.identity_case;

  rep.weak = weak_pairing_test(seq, u, default_weak_family(static_cast<int>(u.size())),
                               window);
  SpaceDescriptor space = detail::grid_space_of(u);
  SequenceOracle oracle = detail::grid_oracle(seq, space);
  PointRepr cand = make_vec(u.values);
  std::vector<PointRepr> probes = detail::grid_polar_probes(
      space, cand, oracle, window, 1e-6, seed, {0.02, 0.05, 0.1, 0.25});
  rep.polar = polar_test(oracle, cand, probes, window);
  if (!rep.weak.certified() || !rep.polar.certified())
    throw DomainError("deficit check: weak/polar hypotheses not certified");

  double norm_u_p;
  {
    KahanSum s;
    for (std::size_t j = 0; j < u.size(); ++j)
      s.add(u.weights[j] * std::pow(std::fabs(u.values[j]), u.p));
    norm_u_p = s.value();
  }
  rep.deficits.reserve(seq.size());
  rep.tail_min = std::numeric_limits<double>::infinity();
  rep.tail_max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& f = seq[static_cast<std::size_t>(i)];
    KahanSum sn, sd;
    for (std::size_t j = 0; j < u.size(); ++j) {
      sn.add(f.weights[j] * std::pow(std::fabs(f.values[j]), u.p));
      sd.add(f.weights[j] * std::pow(std::fabs(f.values[j] - u.values[j]), u.p));
    }
    double deficit = sn.value() - norm_u_p - sd.value();
    rep.deficits.push_back(deficit);
    if (i >= w0) {
      rep.tail_min = std::min(rep.tail_min, deficit);
      rep.tail_max_abs = std::max(rep.tail_max_abs, std::fabs(deficit));
    }
  }
  if (rep.assertion_applies)
    rep.pass = rep.tail_min >= -rep.tolerance;
  else if (rep.identity_case)
    rep.pass = rep.tail_max_abs <= rep.tolerance;
  else
    rep.pass = true;  // exploratory: no assertion
  return rep;
}

// Rows "n,deficit" for plotting deficit traces.
inline std::string bl_deficit_csv(const BlReport& rep) {
  std::string out = "n,deficit\n";
  char buf[64];
  for (std::size_t i = 0; i < rep.deficits.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, rep.deficits[i]);
    out += buf;
  }
  return out;
}

}  // namespace polarconv
