#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polarconv/errors.hpp"
#include "polarconv/numeric.hpp"
#include "polarconv/point.hpp"

namespace polarconv {

enum class SpaceKind {
  euclidean,    // R^d with the 2-norm
  lp_vec,       // R^d with the p-norm, 1 < p < inf
  one_norm_vec, // R^d with the 1-norm (kept separate: not uniformly rotund)
  sup_vec,      // R^d with the sup-norm
  lp_grid,      // weighted p-norm over a quadrature grid
  discrete,     // 0/1 metric
  hybrid_norm,  // |x-y| + (x==y ? 0 : 1) on R^d
  dirichlet,    // |x-y| + (1 + [x-y rational]) * [x != y] on Q + Q*sqrt2
  clamped_ball  // closed ball of a vector-space base, maps clamp into it
};

struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::euclidean;
  int dim = 0;
  double p = 2.0;               // lp_vec / lp_grid exponent
  std::vector<double> weights;  // lp_grid quadrature weights
  double ball_radius = 0.0;     // clamped_ball
  std::shared_ptr<const SpaceDescriptor> base; // clamped_ball
  // Derived flags, fixed by the factory:
  bool claims_sr = false;          // uniform-rotundity-style guarantees claimed
  bool has_menger_midpoints = false;

  static SpaceDescriptor euclidean(int dim) {
    SpaceDescriptor s;
    s.kind = SpaceKind::euclidean;
    s.dim = dim;
    s.claims_sr = true;
    s.has_menger_midpoints = true;
    s.validate();
    return s;
  }
  static SpaceDescriptor lp_vec(int dim, double p) {
    SpaceDescriptor s;
    s.kind = SpaceKind::lp_vec;
    s.dim = dim;
    s.p = p;
    s.claims_sr = true;
    s.has_menger_midpoints = true;
    s.validate();
    return s;
  }
  static SpaceDescriptor one_norm_vec(int dim) {
    SpaceDescriptor s;
    s.kind = SpaceKind::one_norm_vec;
    s.dim = dim;
    s.p = 1.0;
    s.claims_sr = false;
    s.has_menger_midpoints = true;
    s.validate();
    return s;
  }
  static SpaceDescriptor sup_vec(int dim) {
    SpaceDescriptor s;
    s.kind = SpaceKind::sup_vec;
    s.dim = dim;
    s.claims_sr = false;
    s.has_menger_midpoints = true;
    s.validate();
    return s;
  }
  static SpaceDescriptor lp_grid(std::vector<double> weights, double p) {
    SpaceDescriptor s;
    s.kind = SpaceKind::lp_grid;
    s.dim = static_cast<int>(weights.size());
    s.weights = std::move(weights);
    s.p = p;
    s.claims_sr = true;
    s.has_menger_midpoints = true;
    s.validate();
    return s;
  }
  static SpaceDescriptor discrete() {
    SpaceDescriptor s;
    s.kind = SpaceKind::discrete;
    s.claims_sr = false;
    s.has_menger_midpoints = false;
    return s;
  }
  static SpaceDescriptor hybrid_norm(int dim) {
    SpaceDescriptor s;
    s.kind = SpaceKind::hybrid_norm;
    s.dim = dim;
    s.claims_sr = false;
    s.has_menger_midpoints = false;
    s.validate();
    return s;
  }
  static SpaceDescriptor dirichlet() {
    SpaceDescriptor s;
    s.kind = SpaceKind::dirichlet;
    s.dim = 1;
    s.claims_sr = false;
    s.has_menger_midpoints = false;
    return s;
  }
  static SpaceDescriptor clamped_ball(SpaceDescriptor base_space, double radius) {
    SpaceDescriptor s;
    s.kind = SpaceKind::clamped_ball;
    if (!(radius > 0.0)) throw DomainError("clamped ball: radius must be positive");
    switch (base_space.kind) {
      case SpaceKind::euclidean:
      case SpaceKind::lp_vec:
      case SpaceKind::one_norm_vec:
      case SpaceKind::sup_vec:
      case SpaceKind::lp_grid:
        break;
      default:
        throw DomainError("clamped ball: base must be a vector-space kind");
    }
    s.dim = base_space.dim;
    s.p = base_space.p;
    s.ball_radius = radius;
    s.claims_sr = base_space.claims_sr;
    s.has_menger_midpoints = true;
    s.base = std::make_shared<const SpaceDescriptor>(std::move(base_space));
    return s;
  }

  void validate() const {
    switch (kind) {
      case SpaceKind::euclidean:
      case SpaceKind::one_norm_vec:
      case SpaceKind::sup_vec:
      case SpaceKind::hybrid_norm:
        if (dim <= 0) throw DomainError("vector space: dimension must be positive");
        break;
      case SpaceKind::lp_vec:
        if (dim <= 0) throw DomainError("vector space: dimension must be positive");
        if (!(p > 1.0) || !std::isfinite(p))
          throw DomainError("lp space: exponent must satisfy 1 < p < inf");
        break;
      case SpaceKind::lp_grid:
        if (dim <= 0) throw DomainError("grid space: empty grid");
        if (!(p > 1.0) || !std::isfinite(p))
          throw DomainError("lp space: exponent must satisfy 1 < p < inf");
        for (double w : weights)
          if (!(w > 0.0) || !std::isfinite(w))
            throw DomainError("grid space: weights must be positive");
        break;
      default:
        break;
    }
  }

  bool is_vector_kind() const {
    switch (kind) {
      case SpaceKind::euclidean:
      case SpaceKind::lp_vec:
      case SpaceKind::one_norm_vec:
      case SpaceKind::sup_vec:
      case SpaceKind::lp_grid:
        return true;
      case SpaceKind::clamped_ball:
        return true;
      default:
        return false;
    }
  }

  std::string name() const {
    switch (kind) {
      case SpaceKind::euclidean: return "euclidean(" + std::to_string(dim) + ")";
      case SpaceKind::lp_vec:
        return "lp-vec(" + std::to_string(dim) + ", p=" + format_number(p) + ")";
      case SpaceKind::one_norm_vec: return "one-norm(" + std::to_string(dim) + ")";
      case SpaceKind::sup_vec: return "sup-vec(" + std::to_string(dim) + ")";
      case SpaceKind::lp_grid:
        return "lp-grid(" + std::to_string(dim) + ", p=" + format_number(p) + ")";
      case SpaceKind::discrete: return "discrete";
      case SpaceKind::hybrid_norm: return "hybrid-norm(" + std::to_string(dim) + ")";
      case SpaceKind::dirichlet: return "dirichlet";
      case SpaceKind::clamped_ball:
        return "clamped-ball(" + (base ? base->name() : std::string("?")) +
               ", r=" + format_number(ball_radius) + ")";
    }
    return "?";
  }
};

namespace detail {

inline void check_vector_point(const SpaceDescriptor& s, const PointRepr& x) {
  if (is_quad(x))
    throw RepresentationError("quadratic-field point used in a coordinate space");
  if (point_dim(x) != s.dim)
    throw RepresentationError("point dimension does not match space dimension");
}

// Coordinates with dimension check against the space.
inline std::vector<double> coords_in(const SpaceDescriptor& s, const PointRepr& x) {
  check_vector_point(s, x);
  return point_coords(x);
}

} // namespace detail

// Exact distance in the Dirichlet metric as an element of Q + Q*sqrt2.
// The penalty is 1 for an irrational displacement and 2 for a rational one;
// the rationality test is exact (the sqrt2 component of the difference).
inline QuadReal dirichlet_exact_distance(const QuadPoint& x, const QuadPoint& y) {
  QuadReal diff = x.value() - y.value();
  if (diff.is_zero()) return QuadReal(Rational(0));
  int penalty = diff.is_rational() ? 2 : 1;
  return diff.abs() + QuadReal(Rational(penalty));
}

inline double distance(const SpaceDescriptor& s, const PointRepr& x, const PointRepr& y);

namespace detail {

inline double norm_of_diff(const SpaceDescriptor& s, const std::vector<double>& a,
                           const std::vector<double>& b) {
  switch (s.kind) {
    case SpaceKind::euclidean: {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    case SpaceKind::lp_vec: {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::pow(std::fabs(a[i] - b[i]), s.p);
      return std::pow(acc, 1.0 / s.p);
    }
    case SpaceKind::one_norm_vec: {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
      return acc;
    }
    case SpaceKind::sup_vec: {
      double m = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
      return m;
    }
    case SpaceKind::lp_grid: {
      KahanSum acc;
      for (std::size_t i = 0; i < a.size(); ++i)
        acc.add(s.weights[i] * std::pow(std::fabs(a[i] - b[i]), s.p));
      return std::pow(acc.value(), 1.0 / s.p);
    }
    default:
      throw RepresentationError("norm requested for a non-vector space");
  }
}

} // namespace detail

inline double distance(const SpaceDescriptor& s, const PointRepr& x, const PointRepr& y) {
  switch (s.kind) {
    case SpaceKind::euclidean:
    case SpaceKind::lp_vec:
    case SpaceKind::one_norm_vec:
    case SpaceKind::sup_vec:
    case SpaceKind::lp_grid:
      return detail::norm_of_diff(s, detail::coords_in(s, x), detail::coords_in(s, y));
    case SpaceKind::discrete:
      return points_identical(x, y) ? 0.0 : 1.0;
    case SpaceKind::hybrid_norm: {
      std::vector<double> a = detail::coords_in(s, x), b = detail::coords_in(s, y);
      if (a == b) return 0.0;
      SpaceDescriptor eu = SpaceDescriptor::euclidean(s.dim);
      return detail::norm_of_diff(eu, a, b) + 1.0;
    }
    case SpaceKind::dirichlet: {
      const auto* qx = std::get_if<QuadPoint>(&x);
      const auto* qy = std::get_if<QuadPoint>(&y);
      if (!qx || !qy)
        throw RepresentationError("dirichlet metric expects quadratic-field points");
      return dirichlet_exact_distance(*qx, *qy).to_double();
    }
    case SpaceKind::clamped_ball:
      return distance(*s.base, x, y);
  }
  throw RepresentationError("unknown space kind");
}

// Norm of a point seen from the origin of a vector-space kind.
inline double vector_norm(const SpaceDescriptor& s, const PointRepr& x) {
  const SpaceDescriptor& host = (s.kind == SpaceKind::clamped_ball) ? *s.base : s;
  std::vector<double> a = detail::coords_in(host, x);
  std::vector<double> zero(a.size(), 0.0);
  return detail::norm_of_diff(host, a, zero);
}

// Menger midpoint where one exists. In the exactly-checked discrete-flavored
// metrics a midpoint exists only for coincident endpoints.
inline std::optional<PointRepr> midpoint(const SpaceDescriptor& s, const PointRepr& x,
                                         const PointRepr& y) {
  switch (s.kind) {
    case SpaceKind::euclidean:
    case SpaceKind::lp_vec:
    case SpaceKind::one_norm_vec:
    case SpaceKind::sup_vec:
    case SpaceKind::lp_grid: {
      std::vector<double> a = detail::coords_in(s, x), b = detail::coords_in(s, y);
      std::vector<double> m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = 0.5 * (a[i] + b[i]);
      return make_vec(std::move(m));
    }
    case SpaceKind::clamped_ball: {
      // Convexity of the ball keeps the base midpoint inside.
      return midpoint(*s.base, x, y);
    }
    case SpaceKind::discrete:
    case SpaceKind::hybrid_norm:
      return points_identical(x, y) ? std::optional<PointRepr>(x) : std::nullopt;
    case SpaceKind::dirichlet: {
      const auto* qx = std::get_if<QuadPoint>(&x);
      const auto* qy = std::get_if<QuadPoint>(&y);
      if (!qx || !qy)
        throw RepresentationError("dirichlet metric expects quadratic-field points");
      if (qx->a == qy->a && qx->b == qy->b) return x;
      return std::nullopt;
    }
  }
  throw RepresentationError("unknown space kind");
}

// Metric projection into the clamped ball (identity for other kinds and for
// interior points). Radial projection is exact for every norm ball.
inline PointRepr project_into_space(const SpaceDescriptor& s, const PointRepr& x) {
  if (s.kind != SpaceKind::clamped_ball) return x;
  double n = vector_norm(s, x);
  if (n <= s.ball_radius) return x;
  std::vector<double> a = detail::coords_in(*s.base, x);
  double scale = s.ball_radius / n;
  for (double& v : a) v *= scale;
  return make_vec(std::move(a));
}

inline PointRepr zero_point(const SpaceDescriptor& s) {
  if (s.kind == SpaceKind::dirichlet) return make_quad(Rational(0), Rational(0));
  if (s.kind == SpaceKind::discrete)
    throw DomainError("discrete space has no canonical origin");
  return make_vec(std::vector<double>(static_cast<std::size_t>(s.dim), 0.0));
}

} // namespace polarconv
