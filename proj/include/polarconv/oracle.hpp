#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "polarconv/errors.hpp"
#include "polarconv/space.hpp"

namespace polarconv {

// Tail window convention: statements about "the tail" are evaluated on
// indices [ceil(beta*N), N); the secondary window [ceil(beta_prime*N), N)
// exists purely to expose sensitivity to the cut.
struct TailWindow {
  double beta = 0.5;
  double beta_prime = 0.75;

  void validate() const {
    if (!(0.0 < beta && beta < beta_prime && beta_prime < 1.0))
      throw ConfigError("tail window requires 0 < beta < beta_prime < 1");
  }

  int start(int horizon) const {
    validate();
    int s = static_cast<int>(std::ceil(beta * horizon - 1e-9));
    if (s < 0) s = 0;
    if (s > horizon - 1) s = horizon - 1;
    return s;
  }
  int start_prime(int horizon) const {
    validate();
    int s = static_cast<int>(std::ceil(beta_prime * horizon - 1e-9));
    if (s < 0) s = 0;
    if (s > horizon - 1) s = horizon - 1;
    return s;
  }
};

// Strictly increasing index selection into [0, horizon). Anything shorter
// than 4 carries no tail evidence and is rejected.
struct SubsequenceSpec {
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }

  void validate(int horizon) const {
    if (static_cast<int>(indices.size()) < 4)
      throw InsufficientDataError("subsequence shorter than 4 terms");
    int prev = -1;
    for (int i : indices) {
      if (i <= prev) throw DomainError("subsequence indices must strictly increase");
      if (i < 0 || i >= horizon) throw DomainError("subsequence index out of horizon");
      prev = i;
    }
  }

  static SubsequenceSpec suffix(int from, int horizon) {
    SubsequenceSpec s;
    for (int i = from; i < horizon; ++i) s.indices.push_back(i);
    s.validate(horizon);
    return s;
  }
};

// Finite-horizon stand-in for a bounded sequence: deterministic points
// x_0..x_{N-1} in a declared space. Generators are evaluated eagerly, which
// both memoizes and guarantees reproducibility.
class SequenceOracle {
public:
  static SequenceOracle from_points(SpaceDescriptor space, std::vector<PointRepr> pts,
                                    bool declared_bounded = true) {
    if (pts.empty()) throw DomainError("sequence oracle with empty horizon");
    SequenceOracle o;
    o.space_ = std::move(space);
    o.pts_ = std::move(pts);
    o.bounded_ = declared_bounded;
    if (o.bounded_) o.require_bounded();
    return o;
  }

  static SequenceOracle from_generator(SpaceDescriptor space, int horizon,
                                       const std::function<PointRepr(int)>& gen,
                                       bool declared_bounded = true) {
    if (horizon <= 0) throw DomainError("sequence oracle with empty horizon");
    std::vector<PointRepr> pts;
    pts.reserve(static_cast<std::size_t>(horizon));
    for (int n = 0; n < horizon; ++n) pts.push_back(gen(n));
    return from_points(std::move(space), std::move(pts), declared_bounded);
  }

  int horizon() const { return static_cast<int>(pts_.size()); }
  const SpaceDescriptor& space() const { return space_; }
  bool declared_bounded() const { return bounded_; }
  const PointRepr& point(int n) const {
    if (n < 0 || n >= horizon()) throw DomainError("oracle index out of horizon");
    return pts_[static_cast<std::size_t>(n)];
  }
  const std::vector<PointRepr>& points() const { return pts_; }

  SequenceOracle reindex(const SubsequenceSpec& spec) const {
    spec.validate(horizon());
    std::vector<PointRepr> sub;
    sub.reserve(spec.indices.size());
    for (int i : spec.indices) sub.push_back(pts_[static_cast<std::size_t>(i)]);
    SequenceOracle o;
    o.space_ = space_;
    o.pts_ = std::move(sub);
    o.bounded_ = bounded_;
    return o;
  }

  SequenceOracle suffix(int from) const {
    return reindex(SubsequenceSpec::suffix(from, horizon()));
  }

  // Points of the tail window [start, N).
  std::vector<PointRepr> window_points(const TailWindow& w) const {
    int s = w.start(horizon());
    return std::vector<PointRepr>(pts_.begin() + s, pts_.end());
  }

  // Guard for the solvers: rejects sequences not declared bounded, and
  // spot-checks that the declaration is at least plausible (finite spread).
  void require_bounded() const {
    if (!bounded_)
      throw DomainError("sequence oracle is not declared bounded");
    std::size_t n = pts_.size();
    std::size_t step = n <= 16 ? 1 : n / 16;
    for (std::size_t i = 0; i < n; i += step) {
      double d = distance(space_, pts_[0], pts_[i]);
      if (!std::isfinite(d))
        throw DomainError("oracle declared bounded but distances are not finite");
    }
  }

private:
  SpaceDescriptor space_;
  std::vector<PointRepr> pts_;
  bool bounded_ = true;
};

// Guard shared by every tail statistic.
inline void require_horizon(const SequenceOracle& o, int minimum = 4) {
  if (o.horizon() < minimum)
    throw InsufficientDataError("horizon too short for tail statistics");
}

} // namespace polarconv
