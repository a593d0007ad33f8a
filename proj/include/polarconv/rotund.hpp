#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarconv/asymptotic.hpp"
#include "polarconv/convergence.hpp"
#include "polarconv/probes.hpp"

namespace polarconv {

// Chebyshev radius of the ball lens B_rho(x) ∩ B_rho(y), estimated from a
// sampled point cloud inside the lens.
struct LensResult {
  double radius = 0.0;
  PointRepr center;
  int samples = 0;  // cloud size the estimate rests on
  bool empty = false;
  double rho = 0.0;
};

namespace detail {

inline bool in_lens(const SpaceDescriptor& s, const PointRepr& p, const PointRepr& x,
                    const PointRepr& y, double rho) {
  return distance(s, p, x) <= rho && distance(s, p, y) <= rho;
}

// Largest t in [0, hi] with base + t*dir still in the lens, by bisection
// (the lens is radially closed along any ray from an interior point in the
// convex vector-space cases this is used for).
inline double lens_ray_extent(const SpaceDescriptor& s, const std::vector<double>& base,
                              const std::vector<double>& dir, const PointRepr& x,
                              const PointRepr& y, double rho, double hi) {
  auto at = [&](double t) {
    std::vector<double> c(base.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = base[i] + t * dir[i];
    return make_vec(std::move(c));
  };
  if (!in_lens(s, at(0.0), x, y, rho)) return -1.0;
  double lo = 0.0;
  if (in_lens(s, at(hi), x, y, rho)) return hi;
  for (int it = 0; it < 48; ++it) {
    double mid = 0.5 * (lo + hi);
    if (in_lens(s, at(mid), x, y, rho))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

} // namespace detail

inline LensResult lens_chebyshev_radius(const SpaceDescriptor& space, const PointRepr& x,
                                        const PointRepr& y, double rho,
                                        int sample_count = 300, std::uint64_t seed = 5) {
  if (!(rho > 0.0)) throw DomainError("lens radius rho must be positive");
  LensResult out;
  out.rho = rho;
  const double sep = distance(space, x, y);
  if (sep >= 2.0 * rho) {
    out.empty = true;
    return out;
  }

  std::vector<PointRepr> cloud;
  auto push = [&](const PointRepr& p) {
    if (detail::in_lens(space, p, x, y, rho)) cloud.push_back(p);
  };
  push(x);
  push(y);

  auto mid = midpoint(space, x, y);
  if (mid) {
    push(*mid);
    if (space.is_vector_kind()) {
      // Boundary extremes along coordinate axes, the x->y chord, and a few
      // seeded directions: these pin the lens extent far more reliably than
      // rejection samples alone (corners of sup-norm lenses in particular).
      std::vector<double> base = point_coords(*mid);
      std::vector<std::vector<double>> dirs;
      const std::size_t dim = base.size();
      for (std::size_t k = 0; k < dim && k < 16; ++k) {
        std::vector<double> e(dim, 0.0);
        e[k] = 1.0;
        dirs.push_back(e);
        e[k] = -1.0;
        dirs.push_back(std::move(e));
      }
      {
        std::vector<double> cx = point_coords(x), cy = point_coords(y);
        std::vector<double> chord(dim);
        for (std::size_t i = 0; i < dim; ++i) chord[i] = cy[i] - cx[i];
        double n = 0.0;
        for (double v : chord) n += v * v;
        n = std::sqrt(n);
        if (n > 0.0) {
          for (double& v : chord) v /= n;
          // The lens tips sit perpendicular to the chord: orthogonalize
          // each axis against it so the tips are always probed, whatever
          // the chord's orientation.
          for (std::size_t k = 0; k < dim && k < 8; ++k) {
            std::vector<double> p(dim, 0.0);
            p[k] = 1.0;
            double dot = chord[k];
            double pn = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
              p[i] -= dot * chord[i];
              pn += p[i] * p[i];
            }
            pn = std::sqrt(pn);
            if (pn < 1e-9) continue;
            for (double& v : p) v /= pn;
            dirs.push_back(p);
            for (double& v : p) v = -v;
            dirs.push_back(std::move(p));
          }
          dirs.push_back(chord);
          for (double& v : chord) v = -v;
          dirs.push_back(std::move(chord));
        }
      }
      Rng rng(seed);
      for (int k = 0; k < 8; ++k) {
        std::vector<double> d(dim);
        double n = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          d[i] = rng.uniform(-1.0, 1.0);
          n += d[i] * d[i];
        }
        n = std::sqrt(n);
        if (n <= 0.0) continue;
        for (double& v : d) v /= n;
        dirs.push_back(std::move(d));
      }
      for (const auto& d : dirs) {
        double t = detail::lens_ray_extent(space, base, d, x, y, rho, 2.0 * rho);
        if (t < 0.0) continue;
        std::vector<double> c(dim);
        for (std::size_t i = 0; i < dim; ++i) c[i] = base[i] + t * d[i];
        push(make_vec(std::move(c)));
      }
    }
    // Rejection sampling around the midpoint (and the two centers, which
    // covers elongated lenses).
    ProbeConfig pc;
    pc.strategy = ProbeStrategy::ball_uniform;
    pc.count = sample_count;
    pc.seed = seed + 1;
    pc.radius_scale = rho;
    for (const auto& p : sample_probes(space, *mid, pc)) push(p);
    pc.count = sample_count / 4;
    pc.seed = seed + 2;
    for (const auto& p : sample_probes(space, x, pc)) push(p);
    pc.seed = seed + 3;
    for (const auto& p : sample_probes(space, y, pc)) push(p);
  } else {
    // No midpoints (discrete-flavored spaces): perturbation probes around
    // both centers are all we can do; balls are 0/1-radius shaped anyway.
    ProbeConfig pc;
    pc.strategy = ProbeStrategy::ball_uniform;
    pc.count = sample_count;
    pc.seed = seed + 1;
    pc.radius_scale = rho;
    for (const auto& p : sample_probes(space, x, pc)) push(p);
    pc.seed = seed + 2;
    for (const auto& p : sample_probes(space, y, pc)) push(p);
  }

  if (cloud.empty()) {
    out.empty = true;
    return out;
  }
  MinimaxConfig mc;
  mc.seed = seed + 7;
  ChebyshevResult ch = chebyshev_radius(space, cloud, mc);
  out.radius = ch.radius;
  out.center = ch.center;
  out.samples = static_cast<int>(cloud.size());
  return out;
}

inline std::vector<double> default_sr_delta_grid() {
  // Geometric halving; the floor stays above the lens sampling tolerance so
  // that a non-rotund space cannot pass vacuously.
  return {0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125, 0.0015625};
}

// Rotundity-modulus probe: the largest grid delta for which every sampled
// pair at separation >= dbar has lens radius (at rho = r + delta) at most
// r - delta + sampling tolerance.
struct SrModulusEstimate {
  double r = 0.0;
  double dbar = 0.0;
  double delta_hat = 0.0;
  int samples = 0; // lens cloud sizes accumulated
  double worst_lens_radius = 0.0;
  bool passed_any = false;
  std::optional<std::pair<PointRepr, PointRepr>> violating_pair;
  std::vector<std::pair<double, bool>> grid_results;
  double sampling_tol = 1e-3;
};

inline SrModulusEstimate estimate_sr_modulus(const SpaceDescriptor& space, double r,
                                             double dbar,
                                             std::vector<double> grid = default_sr_delta_grid(),
                                             int pair_samples = 5,
                                             int lens_samples = 300,
                                             std::uint64_t seed = 23) {
  if (!(r > 0.0) || !(dbar > 0.0)) throw DomainError("r and dbar must be positive");
  std::sort(grid.begin(), grid.end());
  SrModulusEstimate est;
  est.r = r;
  est.dbar = dbar;

  // Sampled pairs at separation >= dbar. The estimate is only as good as
  // the worst pair probed, so deterministic chords along the binding
  // orientations of polyhedral balls (axis, diagonal, anti-diagonal) come
  // first at separation exactly dbar, then random chords fill the rest.
  std::vector<std::pair<PointRepr, PointRepr>> pairs;
  if (space.is_vector_kind()) {
    const int dim = space.dim;
    Rng rng(seed);
    auto add_chord = [&](std::vector<double> dir, double sep) {
      std::vector<double> a(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i)
        a[static_cast<std::size_t>(i)] = 0.25 * r * rng.uniform(-1.0, 1.0);
      double nd = vector_norm(space, make_vec(std::vector<double>(dir)));
      if (nd <= 0.0) { dir[0] = 1.0; nd = vector_norm(space, make_vec(std::vector<double>(dir))); }
      std::vector<double> b(a);
      for (int i = 0; i < dim; ++i)
        b[static_cast<std::size_t>(i)] += dir[static_cast<std::size_t>(i)] * (sep / nd);
      pairs.emplace_back(make_vec(std::move(a)), make_vec(std::move(b)));
    };
    {
      std::vector<double> axis(static_cast<std::size_t>(dim), 0.0);
      axis[0] = 1.0;
      add_chord(axis, dbar);
      if (dim >= 2) {
        std::vector<double> diag(static_cast<std::size_t>(dim), 0.0);
        diag[0] = 1.0;
        diag[1] = 1.0;
        add_chord(diag, dbar);
        diag[1] = -1.0;
        add_chord(std::move(diag), dbar);
      }
    }
    for (int k = 0; k < pair_samples; ++k) {
      std::vector<double> dir(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) dir[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
      double sep = (k == 0) ? dbar : dbar * (1.0 + 0.3 * rng.uniform01());
      add_chord(std::move(dir), sep);
    }
  } else if (space.kind == SpaceKind::discrete) {
    for (int k = 0; k < pair_samples; ++k)
      pairs.emplace_back(make_index_set({0}, 8), make_index_set({k % 7 + 1}, 8));
  } else {
    throw DomainError("modulus estimation needs a sampleable space kind");
  }

  for (double delta : grid) {
    bool ok = true;
    for (const auto& pr : pairs) {
      double sep = distance(space, pr.first, pr.second);
      if (sep < dbar - 1e-12) continue; // defensive; construction targets >= dbar
      LensResult lens =
          lens_chebyshev_radius(space, pr.first, pr.second, r + delta, lens_samples, seed + 101);
      if (lens.empty) continue; // empty lens satisfies the bound vacuously
      est.samples += lens.samples;
      est.worst_lens_radius = std::max(est.worst_lens_radius, lens.radius);
      if (lens.radius > r - delta + est.sampling_tol) {
        ok = false;
        if (!est.violating_pair) est.violating_pair = pr;
        break;
      }
    }
    est.grid_results.emplace_back(delta, ok);
    if (ok) {
      est.passed_any = true;
      est.delta_hat = std::max(est.delta_hat, delta);
    }
  }
  return est;
}

// CSV table of moduli over (r, dbar) grids, for plotting.
inline std::string sr_modulus_table_csv(const SpaceDescriptor& space,
                                        const std::vector<double>& rs,
                                        const std::vector<double>& dbars,
                                        std::uint64_t seed = 23) {
  std::string out = "r,dbar,delta_hat\n";
  char buf[96];
  for (double r : rs)
    for (double d : dbars) {
      SrModulusEstimate e = estimate_sr_modulus(space, r, d, default_sr_delta_grid(), 4, 240, seed);
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", r, d, e.delta_hat);
      out += buf;
    }
  return out;
}

// Claim-verification harness for rotund spaces: (a) delta and polar
// verdicts about the asymptotic center agree, (b) independent solver
// restarts land on the same center, (c) near-minimizers of I are pairwise
// close, with the closeness bound taken from the estimated modulus.
struct SrFixtureReport {
  std::string name;
  VerdictStatus delta_status = VerdictStatus::inconclusive;
  VerdictStatus polar_status = VerdictStatus::inconclusive;
  bool claim_a_agree = false;
  bool claim_b_pass = false;
  double worst_pairwise_center = 0.0;
  // claim c: 1 = verified, 0 = failed, -1 = no usable modulus bound
  int claim_c_status = -1;
  double claim_c_bound = 0.0;
  double claim_c_eps = 0.0;
};

struct SrClaimsReport {
  bool space_sr_flagged = false;
  bool forced = false;
  std::vector<SrFixtureReport> fixtures;
  bool all_claim_a = true;
  bool all_claim_b = true;
};

inline SrClaimsReport verify_sr_claims(const SpaceDescriptor& space,
                                       const std::vector<std::pair<std::string, SequenceOracle>>& fixtures,
                                       bool force_sr = false, std::uint64_t seed = 41) {
  if (!space.claims_sr && !force_sr)
    throw DomainError(
        "space is not flagged rotund; uniqueness/coincidence claims do not "
        "apply (pass force_sr to probe anyway)");
  SrClaimsReport rep;
  rep.space_sr_flagged = space.claims_sr;
  rep.forced = force_sr && !space.claims_sr;

  for (const auto& [name, oracle] : fixtures) {
    SrFixtureReport row;
    row.name = name;

    CenterConfig cc;
    cc.solver.seed = seed;
    CenterResult center = asymptotic_center(oracle, cc);

    // Shared probe cloud around the center.
    ProbeConfig pc;
    pc.strategy = ProbeStrategy::ball_uniform;
    pc.count = 10;
    pc.seed = seed + 3;
    pc.radius_scale = 1.5 * center.radius + 0.1;
    std::vector<PointRepr> probes = sample_probes(oracle.space(), center.center, pc);
    {
      ProbeConfig echo;
      echo.strategy = ProbeStrategy::tail_point_echo;
      echo.count = 4;
      echo.seed = seed + 4;
      auto tail = oracle.window_points(cc.window);
      auto echoes = sample_probes(oracle.space(), center.center, echo, &tail);
      probes.insert(probes.end(), echoes.begin(), echoes.end());
    }

    auto dv = delta_test(oracle, center.center, probes, cc.window, 1e-9, 4, seed + 5);
    auto polar_probes = drop_probes_at(oracle.space(), probes, center.center);
    row.delta_status = dv.status;
    if (!polar_probes.empty()) {
      auto pv = polar_test(oracle, center.center, polar_probes, cc.window);
      row.polar_status = pv.status;
    }
    row.claim_a_agree = (row.delta_status == VerdictStatus::certified) ==
                        (row.polar_status == VerdictStatus::certified);

    // Claim b: restarted solves must coincide.
    std::vector<PointRepr> centers;
    double worst_gap = center.optimality_gap;
    for (int i = 0; i < 5; ++i) {
      CenterConfig ci = cc;
      ci.solver.seed = seed + 100 + static_cast<std::uint64_t>(i) * 7919;
      ci.solver.shuffle_pool = true;
      CenterResult r2 = asymptotic_center(oracle, ci);
      centers.push_back(r2.center);
      worst_gap = std::max(worst_gap, r2.optimality_gap);
    }
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        row.worst_pairwise_center = std::max(
            row.worst_pairwise_center, distance(oracle.space(), centers[i], centers[j]));
    row.claim_b_pass = row.worst_pairwise_center <= std::max(1e-6, 10.0 * worst_gap);

    // Claim c: epsilon-minimizers of I are pairwise within the smallest
    // separation the modulus can still certify.
    if (center.radius > 1e-9 &&
        (oracle.space().is_vector_kind())) {
      const double r = center.radius;
      for (double dbar : {0.25 * r, 0.5 * r, r}) {
        SrModulusEstimate m = estimate_sr_modulus(oracle.space(), r, dbar,
                                                  default_sr_delta_grid(), 3, 220, seed + 9);
        if (m.delta_hat > 0.0) {
          row.claim_c_bound = dbar;
          row.claim_c_eps = m.delta_hat;
          break;
        }
      }
      if (row.claim_c_bound > 0.0) {
        ProbeConfig mc;
        mc.strategy = ProbeStrategy::ball_uniform;
        mc.count = 24;
        mc.seed = seed + 11;
        mc.radius_scale = 1.2 * r;
        std::vector<PointRepr> cands = sample_probes(oracle.space(), center.center, mc);
        cands.push_back(center.center);
        double imin = std::numeric_limits<double>::infinity();
        std::vector<double> ivals;
        for (const auto& c : cands) {
          double v = eval_I(oracle, c, cc.window).value;
          ivals.push_back(v);
          imin = std::min(imin, v);
        }
        std::vector<PointRepr> near;
        for (std::size_t i = 0; i < cands.size(); ++i)
          if (ivals[i] <= imin + row.claim_c_eps) near.push_back(cands[i]);
        bool ok = true;
        for (std::size_t i = 0; i < near.size(); ++i)
          for (std::size_t j = i + 1; j < near.size(); ++j)
            ok = ok && distance(oracle.space(), near[i], near[j]) <= row.claim_c_bound + 1e-9;
        row.claim_c_status = ok ? 1 : 0;
      }
    }

    rep.all_claim_a = rep.all_claim_a && row.claim_a_agree;
    rep.all_claim_b = rep.all_claim_b && row.claim_b_pass;
    rep.fixtures.push_back(std::move(row));
  }
  return rep;
}

} // namespace polarconv
