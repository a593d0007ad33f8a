#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarconv/errors.hpp"
#include "polarconv/rng.hpp"
#include "polarconv/space.hpp"

namespace polarconv {

// Probe families are the finite stand-in for "all competitors y"; every
// verdict in the library is a certificate relative to the family it names.
enum class ProbeStrategy {
  ball_uniform,        // uniform perturbations of the center, radius_scale wide
  tail_point_echo,     // replay late tail points
  segment_toward_tail, // interpolate from the center toward tail points
  coordinate_bump      // center +/- radius_scale along coordinate axes
};

struct ProbeConfig {
  ProbeStrategy strategy = ProbeStrategy::ball_uniform;
  int count = 16;
  std::uint64_t seed = 1;
  double radius_scale = 1.0;
};

inline const char* probe_strategy_name(ProbeStrategy s) {
  switch (s) {
    case ProbeStrategy::ball_uniform: return "ball-uniform";
    case ProbeStrategy::tail_point_echo: return "tail-point-echo";
    case ProbeStrategy::segment_toward_tail: return "segment-toward-tail";
    case ProbeStrategy::coordinate_bump: return "coordinate-bump";
  }
  return "?";
}

inline ProbeStrategy probe_strategy_from_name(const std::string& n) {
  if (n == "ball-uniform") return ProbeStrategy::ball_uniform;
  if (n == "tail-point-echo") return ProbeStrategy::tail_point_echo;
  if (n == "segment-toward-tail") return ProbeStrategy::segment_toward_tail;
  if (n == "coordinate-bump") return ProbeStrategy::coordinate_bump;
  throw ConfigError("unknown probe strategy: " + n);
}

namespace detail {

inline Rational dyadic_in(Rng& rng, double magnitude) {
  // Random dyadic rational in [-magnitude, magnitude] with denominator 64;
  // exact arithmetic survives downstream.
  int span = static_cast<int>(64.0 * magnitude);
  if (span < 1) span = 1;
  int k = static_cast<int>(rng.index(static_cast<std::size_t>(2 * span + 1))) - span;
  return Rational(k, 64);
}

inline PointRepr perturb(const SpaceDescriptor& s, Rng& rng, const PointRepr& center,
                         double scale) {
  if (s.kind == SpaceKind::dirichlet) {
    const auto* q = std::get_if<QuadPoint>(&center);
    if (!q) throw RepresentationError("dirichlet probe center must be a quad point");
    Rational da = dyadic_in(rng, scale);
    Rational db(0);
    if (rng.index(2) == 0) db = dyadic_in(rng, scale) * Rational(1, 4);
    return make_quad(q->a + da, q->b + db);
  }
  if (s.kind == SpaceKind::discrete && std::holds_alternative<IndexSetPoint>(center)) {
    const auto& is = std::get<IndexSetPoint>(center);
    std::vector<int> idx = is.idx;
    int flip = static_cast<int>(rng.index(static_cast<std::size_t>(is.dim)));
    auto it = std::find(idx.begin(), idx.end(), flip);
    if (it == idx.end()) idx.push_back(flip); else idx.erase(it);
    return make_index_set(std::move(idx), is.dim);
  }
  std::vector<double> c = point_coords(center);
  for (double& v : c) v += scale * rng.uniform(-1.0, 1.0);
  PointRepr out = make_vec(std::move(c));
  return project_into_space(s, out);
}

inline PointRepr axis_bump(const SpaceDescriptor& s, const PointRepr& center, int k) {
  if (s.kind == SpaceKind::dirichlet) {
    const auto* q = std::get_if<QuadPoint>(&center);
    if (!q) throw RepresentationError("dirichlet probe center must be a quad point");
    Rational step(((k / 2) % 2 == 0) ? 1 : -1, 1 + k / 4);
    if (k % 2 == 0) return make_quad(q->a + step, q->b);
    return make_quad(q->a, q->b + step * Rational(1, 2));
  }
  std::vector<double> c = point_coords(center);
  int d = static_cast<int>(c.size());
  int axis = k % d;
  int round = k / d;
  double sign = (round % 2 == 0) ? 1.0 : -1.0;
  double level = 1.0 / static_cast<double>(1 << (round / 2));
  c[static_cast<std::size_t>(axis)] += sign * level;
  return make_vec(std::move(c));
}

} // namespace detail

// Draw a deterministic probe family around `center`. Tail-aware strategies
// need the tail points of the oracle under study and reject a missing
// context. Duplicates are removed, order of first appearance kept.
inline std::vector<PointRepr> sample_probes(const SpaceDescriptor& space,
                                            const PointRepr& center,
                                            const ProbeConfig& cfg,
                                            const std::vector<PointRepr>* tail = nullptr) {
  if (cfg.count <= 0) throw ConfigError("probe count must be positive");
  const bool needs_tail = cfg.strategy == ProbeStrategy::tail_point_echo ||
                          cfg.strategy == ProbeStrategy::segment_toward_tail;
  if (needs_tail && (tail == nullptr || tail->empty()))
    throw ConfigError("probe strategy requires tail context but none was given");

  Rng rng(cfg.seed);
  std::vector<PointRepr> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  for (int k = 0; k < cfg.count; ++k) {
    switch (cfg.strategy) {
      case ProbeStrategy::ball_uniform:
        out.push_back(detail::perturb(space, rng, center, cfg.radius_scale));
        break;
      case ProbeStrategy::tail_point_echo: {
        std::size_t n = tail->size();
        out.push_back((*tail)[n - 1 - (static_cast<std::size_t>(k) % n)]);
        break;
      }
      case ProbeStrategy::segment_toward_tail: {
        const PointRepr& target = (*tail)[rng.index(tail->size())];
        if (!space.has_menger_midpoints) {
          out.push_back(target);
          break;
        }
        auto m1 = midpoint(space, center, target);
        if (!m1) { out.push_back(target); break; }
        std::size_t pick = rng.index(3);
        if (pick == 0) {
          out.push_back(*m1);
        } else if (pick == 1) {
          auto m = midpoint(space, center, *m1);
          out.push_back(m ? *m : *m1);
        } else {
          auto m = midpoint(space, *m1, target);
          out.push_back(m ? *m : *m1);
        }
        break;
      }
      case ProbeStrategy::coordinate_bump: {
        PointRepr scaled = detail::axis_bump(space, center, k);
        if (space.is_vector_kind() && !is_quad(scaled)) {
          // Scale the unit bump by radius_scale around the center.
          std::vector<double> c0 = point_coords(center);
          std::vector<double> c1 = point_coords(scaled);
          for (std::size_t i = 0; i < c1.size(); ++i)
            c1[i] = c0[i] + cfg.radius_scale * (c1[i] - c0[i]);
          scaled = project_into_space(space, make_vec(std::move(c1)));
        }
        out.push_back(std::move(scaled));
        break;
      }
    }
  }

  std::vector<PointRepr> dedup;
  for (auto& p : out) {
    bool seen = false;
    for (const auto& q : dedup)
      if (points_identical(p, q)) { seen = true; break; }
    if (!seen) dedup.push_back(std::move(p));
  }
  return dedup;
}

// Remove probes at (exactly) zero distance from x; used where a competitor
// coinciding with the candidate is meaningless.
inline std::vector<PointRepr> drop_probes_at(const SpaceDescriptor& space,
                                             const std::vector<PointRepr>& probes,
                                             const PointRepr& x) {
  std::vector<PointRepr> out;
  for (const auto& p : probes)
    if (distance(space, p, x) > 0.0) out.push_back(p);
  return out;
}

} // namespace polarconv
