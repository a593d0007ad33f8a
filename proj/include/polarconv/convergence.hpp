#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "polarconv/minimax.hpp"
#include "polarconv/oracle.hpp"
#include "polarconv/rational.hpp"
#include "polarconv/rng.hpp"
#include "polarconv/space.hpp"

namespace polarconv {

enum class ConvergenceMode { delta, strong_delta, polar };
enum class VerdictStatus { certified, falsified, inconclusive };

inline const char* mode_name(ConvergenceMode m) {
  switch (m) {
    case ConvergenceMode::delta: return "Delta";
    case ConvergenceMode::strong_delta: return "StrongDelta";
    case ConvergenceMode::polar: return "Polar";
  }
  return "?";
}

inline const char* status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::certified: return "Certified";
    case VerdictStatus::falsified: return "Falsified";
    case VerdictStatus::inconclusive: return "Inconclusive";
  }
  return "?";
}

// One row of the per-probe diagnostics table. The meaning of the fields is
// mode-dependent:
//   polar:       m_index = least index from which d(x_n,x) < d(x_n,y) holds
//                through the horizon (horizon if none); gap = min over
//                n >= m_index of d(x_n,y) - d(x_n,x).
//   delta:       m_index = least index from which the probe never beats the
//                candidate by more than tol; gap = worst tail excess
//                d(x_n,x) - d(x_n,y) over the window.
//   strong delta: m_index = window index attaining the probe's tail minimum
//                (the liminf surrogate); gap = tailmin_y - tailmax_x.
struct ProbeReport {
  PointRepr probe;
  int m_index = 0;
  double gap = 0.0;
};

// A concrete, re-checkable violation: at index `index` the candidate sits
// at distance `candidate_distance` while the probe sits at
// `probe_distance`, contradicting the claimed mode.
struct ViolationWitness {
  PointRepr probe;
  int index = 0;
  double candidate_distance = 0.0;
  double probe_distance = 0.0;
};

struct ConvergenceVerdict {
  ConvergenceMode mode = ConvergenceMode::delta;
  VerdictStatus status = VerdictStatus::inconclusive;
  double tolerance = 0.0;
  // Certification margin. For polar: min over probes of the eventual gap
  // d(x_n,y) - d(x_n,x) beyond M(y). For delta: negated worst probe
  // advantage. For strong delta: min over probes of tailmin_y - tailmax_x.
  double margin = 0.0;
  std::optional<ViolationWitness> witness;
  std::vector<ProbeReport> table;
  TailWindow window;
  int horizon = 0;

  bool certified() const { return status == VerdictStatus::certified; }
};

namespace detail {

inline void require_probes(const std::vector<PointRepr>& probes) {
  if (probes.empty()) throw ConfigError("empty probe family");
}

inline std::vector<double> distance_profile(const SequenceOracle& o,
                                            const PointRepr& y) {
  std::vector<double> d(static_cast<std::size_t>(o.horizon()));
  for (int n = 0; n < o.horizon(); ++n)
    d[static_cast<std::size_t>(n)] = distance(o.space(), o.point(n), y);
  return d;
}

// Start of the "last quarter" of the tail window, used by the persistence
// rule: a falsification must recur there to count.
inline int last_quarter_start(int n, int w0) {
  int span = n - w0;
  return n - std::max(1, span / 4);
}

// Deterministic strictly-increasing index subset of [lo, n), of size count.
inline SubsequenceSpec random_subsequence(int lo, int n, int count, Rng& rng) {
  std::vector<int> all;
  for (int i = lo; i < n; ++i) all.push_back(i);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    std::size_t j = i + rng.index(all.size() - i);
    std::swap(all[i], all[j]);
  }
  all.resize(static_cast<std::size_t>(std::min<int>(count, static_cast<int>(all.size()))));
  std::sort(all.begin(), all.end());
  SubsequenceSpec s;
  s.indices = std::move(all);
  return s;
}

} // namespace detail

// Delta-convergence check: x is accepted when no probe y beats it,
// d(x_n,x) <= d(x_n,y) + tol, along every tested subsequence tail. The
// subsequence quantifier is sampled: the full sequence, every suffix of the
// tail window, and `subsample_count` seeded random index subsets of the
// window. Falsification requires the probe advantage to persist (at least
// two violations in the last quarter of the window).
inline ConvergenceVerdict delta_test(const SequenceOracle& oracle,
                                     const PointRepr& candidate,
                                     const std::vector<PointRepr>& probes,
                                     const TailWindow& window = {},
                                     double tol = 1e-9, int subsample_count = 8,
                                     std::uint64_t seed = 1729) {
  detail::require_probes(probes);
  if (subsample_count < 1) throw ConfigError("subsample count must be >= 1");
  window.validate();
  require_horizon(oracle, 4);
  oracle.require_bounded();

  const int n = oracle.horizon();
  const int w0 = window.start(n);
  std::vector<double> dx = detail::distance_profile(oracle, candidate);
  std::vector<std::vector<double>> dy;
  dy.reserve(probes.size());
  for (const auto& y : probes) dy.push_back(detail::distance_profile(oracle, y));

  // Tested subsequences, all by index into the cached profiles.
  std::vector<std::vector<int>> subs;
  {
    std::vector<int> full(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) full[static_cast<std::size_t>(i)] = i;
    subs.push_back(std::move(full));
    for (int s = w0; s + 4 <= n; ++s) {
      std::vector<int> suf;
      for (int i = s; i < n; ++i) suf.push_back(i);
      subs.push_back(std::move(suf));
    }
    int lo = std::min(w0, n - 4);
    int want = std::max(4, (n - lo) / 2);
    Rng rng(seed);
    for (int k = 0; k < subsample_count; ++k) {
      Rng sub = rng.fork(static_cast<std::uint64_t>(k) + 1);
      subs.push_back(detail::random_subsequence(lo, n, want, sub).indices);
    }
  }

  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < probes.size(); ++p) {
    for (const auto& s : subs) {
      std::size_t from = window.start(static_cast<int>(s.size()));
      for (std::size_t t = from; t < s.size(); ++t) {
        std::size_t i = static_cast<std::size_t>(s[t]);
        worst = std::max(worst, dx[i] - dy[p][i]);
      }
    }
  }

  ConvergenceVerdict v;
  v.mode = ConvergenceMode::delta;
  v.tolerance = tol;
  v.window = window;
  v.horizon = n;
  v.margin = -worst;

  const int lq = detail::last_quarter_start(n, w0);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    ProbeReport row;
    row.probe = probes[p];
    double g = -std::numeric_limits<double>::infinity();
    for (int i = w0; i < n; ++i)
      g = std::max(g, dx[static_cast<std::size_t>(i)] - dy[p][static_cast<std::size_t>(i)]);
    row.gap = g;
    int m = 0;
    for (int i = n - 1; i >= 0; --i) {
      if (dx[static_cast<std::size_t>(i)] - dy[p][static_cast<std::size_t>(i)] > tol) {
        m = i + 1;
        break;
      }
    }
    row.m_index = m;
    v.table.push_back(std::move(row));

    int persist = 0;
    int last_bad = -1;
    for (int i = lq; i < n; ++i) {
      if (dx[static_cast<std::size_t>(i)] - dy[p][static_cast<std::size_t>(i)] > tol) {
        ++persist;
        last_bad = i;
      }
    }
    if (persist >= 2 && !v.witness) {
      v.witness = ViolationWitness{probes[p], last_bad,
                                   dx[static_cast<std::size_t>(last_bad)],
                                   dy[p][static_cast<std::size_t>(last_bad)]};
    }
  }

  if (worst <= tol)
    v.status = VerdictStatus::certified;
  else if (v.witness)
    v.status = VerdictStatus::falsified;
  else
    v.status = VerdictStatus::inconclusive;
  return v;
}

// Strong-Delta check: lim d(x_n,x) must exist (enforced as: oscillation of
// d(x_n,x) over the tail window <= tol — an interpretation, flagged in the
// report) and must be dominated by liminf d(x_n,y) (surrogate: tail min)
// for every probe y.
inline ConvergenceVerdict strong_delta_test(const SequenceOracle& oracle,
                                            const PointRepr& candidate,
                                            const std::vector<PointRepr>& probes,
                                            const TailWindow& window = {},
                                            double tol = 1e-9) {
  detail::require_probes(probes);
  window.validate();
  require_horizon(oracle, 4);
  oracle.require_bounded();

  const int n = oracle.horizon();
  const int w0 = window.start(n);
  std::vector<double> dx = detail::distance_profile(oracle, candidate);
  double tail_max = -std::numeric_limits<double>::infinity();
  double tail_min = std::numeric_limits<double>::infinity();
  for (int i = w0; i < n; ++i) {
    tail_max = std::max(tail_max, dx[static_cast<std::size_t>(i)]);
    tail_min = std::min(tail_min, dx[static_cast<std::size_t>(i)]);
  }
  const double osc = tail_max - tail_min;

  ConvergenceVerdict v;
  v.mode = ConvergenceMode::strong_delta;
  v.tolerance = tol;
  v.window = window;
  v.horizon = n;

  double margin = std::numeric_limits<double>::infinity();
  for (const auto& y : probes) {
    std::vector<double> dyv = detail::distance_profile(oracle, y);
    double ymin = std::numeric_limits<double>::infinity();
    int at = w0;
    for (int i = w0; i < n; ++i) {
      if (dyv[static_cast<std::size_t>(i)] < ymin) {
        ymin = dyv[static_cast<std::size_t>(i)];
        at = i;
      }
    }
    double gap = ymin - tail_max;
    v.table.push_back(ProbeReport{y, at, gap});
    margin = std::min(margin, gap);
    if (gap < -tol && !v.witness)
      v.witness = ViolationWitness{y, at, dx[static_cast<std::size_t>(at)], ymin};
  }
  v.margin = margin;

  if (v.witness)
    v.status = VerdictStatus::falsified;
  else if (osc > tol)
    v.status = VerdictStatus::inconclusive; // limit existence not supported by the data
  else
    v.status = VerdictStatus::certified;
  return v;
}

// Polar check: for each probe y, M(y) is the least index from which
// d(x_n,x) < d(x_n,y) strictly, through the horizon. Certification demands
// a violation-free tail window for every probe; falsification demands a
// recurring tie/domination in the last quarter of the window.
inline ConvergenceVerdict polar_test(const SequenceOracle& oracle,
                                     const PointRepr& candidate,
                                     const std::vector<PointRepr>& probes,
                                     const TailWindow& window = {}) {
  detail::require_probes(probes);
  window.validate();
  require_horizon(oracle, 4);
  oracle.require_bounded();
  for (const auto& y : probes)
    if (distance(oracle.space(), candidate, y) <= 0.0)
      throw ConfigError("polar probe coincides with the candidate");

  const int n = oracle.horizon();
  const int w0 = window.start(n);
  const int lq = detail::last_quarter_start(n, w0);
  std::vector<double> dx = detail::distance_profile(oracle, candidate);

  ConvergenceVerdict v;
  v.mode = ConvergenceMode::polar;
  v.tolerance = 0.0; // strictness is exact for polar
  v.window = window;
  v.horizon = n;

  bool window_clean = true;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& y : probes) {
    std::vector<double> dyv = detail::distance_profile(oracle, y);
    int last_viol = -1;
    int window_viols = 0;
    int persist = 0;
    for (int i = 0; i < n; ++i) {
      double diff = dyv[static_cast<std::size_t>(i)] - dx[static_cast<std::size_t>(i)];
      if (diff <= 0.0) {
        last_viol = i;
        if (i >= w0) ++window_viols;
        if (i >= lq) ++persist;
      }
    }
    int m = last_viol + 1; // == n when the last index itself violates
    double gap;
    if (m < n) {
      gap = std::numeric_limits<double>::infinity();
      for (int i = m; i < n; ++i)
        gap = std::min(gap, dyv[static_cast<std::size_t>(i)] - dx[static_cast<std::size_t>(i)]);
    } else {
      gap = dyv[static_cast<std::size_t>(n - 1)] - dx[static_cast<std::size_t>(n - 1)];
    }
    v.table.push_back(ProbeReport{y, m, gap});
    if (window_viols > 0) window_clean = false;
    margin = std::min(margin, gap);
    if (persist >= 2 && !v.witness) {
      v.witness = ViolationWitness{y, last_viol, dx[static_cast<std::size_t>(last_viol)],
                                   dyv[static_cast<std::size_t>(last_viol)]};
    }
  }
  v.margin = margin;

  if (window_clean && !v.witness)
    v.status = VerdictStatus::certified;
  else if (v.witness)
    v.status = VerdictStatus::falsified;
  else
    v.status = VerdictStatus::inconclusive;
  return v;
}

// Membership in the polar neighborhood N_Y(x) = {z : d(z,x) < d(z,y) for
// all y in Y}. Exact (integer rational arithmetic) when the space carries
// the Dirichlet metric and all points are quadratic rationals.
inline bool polar_nbhd_member(const SpaceDescriptor& space, const PointRepr& x,
                              const std::vector<PointRepr>& member_set,
                              const PointRepr& z) {
  for (const auto& y : member_set)
    if (points_identical(x, y))
      throw DomainError("polar neighborhood base point belongs to the excluded set");
  bool exact = space.kind == SpaceKind::dirichlet && is_quad(x) && is_quad(z);
  if (exact) {
    for (const auto& y : member_set) {
      if (!is_quad(y)) { exact = false; break; }
    }
  }
  if (exact) {
    const auto& zq = std::get<QuadPoint>(z);
    const auto& xq = std::get<QuadPoint>(x);
    QuadReal dzx = dirichlet_exact_distance(zq, xq);
    for (const auto& y : member_set) {
      QuadReal dzy = dirichlet_exact_distance(zq, std::get<QuadPoint>(y));
      if (!(dzx < dzy)) return false;
    }
    return true;
  }
  double dzx = distance(space, z, x);
  for (const auto& y : member_set)
    if (!(dzx < distance(space, z, y))) return false;
  return true;
}

// Witness record for the failure of the neighborhood-base property (BTN)
// under the Dirichlet metric d(x,y) = |x-y| + (1 + [x-y rational]) for
// x != y. All inequalities are verified in exact arithmetic over Q + Q*sqrt(2).
struct BtnWitness {
  QuadPoint zbar;                  // the point of N_Y(xbar) that cannot be shielded
  std::vector<QuadPoint> challenge; // the finite set Z tried as a shield
  QuadPoint v;                      // the invader: in N_Z(zbar) but not in N_ybar(xbar)
  std::vector<QuadPoint> rejected;  // zbar candidates discarded (rational offsets)
  bool zbar_in_ny = false;          // zbar ∈ N_Y(xbar)
  bool v_in_nz = false;             // v ∈ N_Z(zbar)
  bool v_escapes = false;           // d(v, ybar) <= d(v, xbar)
  int offset_halvings = 0;          // k with zbar = xbar + sqrt(2)/2^k
  Rational v_offset;                // rational q with v = xbar + q

  bool all_checks_pass() const { return zbar_in_ny && v_in_nz && v_escapes; }
};

namespace detail {

inline QuadReal quad_abs_diff(const QuadPoint& a, const QuadPoint& b) {
  return (a.value() - b.value()).abs();
}

} // namespace detail

// Constructs, for given xbar != ybar with irrational difference and any
// finite Y not containing xbar, a point zbar ∈ N_Y(xbar) and then — against
// a finite challenge set Z (defaults to Y ∪ {xbar, ybar}) — an invader
// v ∈ N_Z(zbar) with d(v, ybar) <= d(v, xbar). This shows N_Z(zbar) is
// never contained in N_ybar(xbar), no matter the challenge.
inline BtnWitness btn_violation_dirichlet(const QuadPoint& xbar, const QuadPoint& ybar,
                                          const std::vector<QuadPoint>& member_set,
                                          std::vector<QuadPoint> challenge = {}) {
  const QuadReal dxy = detail::quad_abs_diff(xbar, ybar);
  if (dxy.sign() == 0) throw DomainError("base points coincide");
  if (QuadReal(Rational(1), Rational(0)) < dxy)
    throw DomainError("|xbar - ybar| must be at most 1");
  if ((ybar.value() - xbar.value()).is_rational())
    throw DomainError("ybar - xbar must be irrational");
  for (const auto& y : member_set)
    if (detail::quad_abs_diff(xbar, y).sign() == 0)
      throw DomainError("xbar belongs to the excluded set");

  BtnWitness w;
  if (challenge.empty()) {
    challenge = member_set;
    challenge.push_back(xbar);
    challenge.push_back(ybar);
  }
  w.challenge = challenge;

  // Smallest |xbar - y| over Y caps epsilon: we need 2|xbar - zbar| < |xbar - y|.
  QuadReal min_y(Rational(1), Rational(0));
  for (const auto& y : member_set) {
    QuadReal d = detail::quad_abs_diff(xbar, y);
    if (d < min_y) min_y = d;
  }

  // zbar = xbar + sqrt(2)/2^k. A dyadic-rational offset is generated first
  // at each level and rejected, exercising the resampling branch that the
  // irrationality requirement forces.
  QuadPoint zbar = xbar;
  bool found = false;
  for (int k = 1; k <= 40 && !found; ++k) {
    Rational dy = Rational(1, std::int64_t(1) << std::min(k, 30));
    QuadPoint rational_try{xbar.a + dy, xbar.b};
    w.rejected.push_back(rational_try); // xbar - candidate rational: unusable
    QuadPoint irr{xbar.a, xbar.b + dy};
    QuadReal off = detail::quad_abs_diff(xbar, irr); // = sqrt(2)/2^k
    QuadReal twice = off + off;
    if (!(twice < min_y)) continue;
    bool clashes = false;
    for (const auto& z : challenge)
      if (detail::quad_abs_diff(irr, z).sign() == 0) clashes = true;
    if (clashes) continue;
    zbar = irr;
    w.offset_halvings = k;
    found = true;
  }
  if (!found) throw DomainError("no admissible zbar offset below the Y separation");
  w.zbar = zbar;

  // v = xbar + q with q rational near sqrt(2)/2^k: walk the continued-
  // fraction convergents p/q of sqrt(2) until 2|zbar - v| clears both the
  // challenge separation and |zbar - xbar| (the latter keeps v != xbar).
  static const std::int64_t conv_num[] = {1, 3, 7, 17, 41, 99, 239, 577, 1393, 3363, 8119, 19601};
  static const std::int64_t conv_den[] = {1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860};
  QuadReal min_z(Rational(1), Rational(0));
  {
    bool first = true;
    for (const auto& z : challenge) {
      QuadReal d = detail::quad_abs_diff(zbar, z);
      if (first || d < min_z) min_z = d;
      first = false;
    }
  }
  QuadReal zx = detail::quad_abs_diff(zbar, xbar);
  QuadPoint v = xbar;
  bool got_v = false;
  for (std::size_t c = 0; c < sizeof(conv_num) / sizeof(conv_num[0]) && !got_v; ++c) {
    Rational q = Rational(conv_num[c], conv_den[c]) /
                 Rational(std::int64_t(1) << std::min(w.offset_halvings, 30));
    QuadPoint cand{xbar.a + q, xbar.b};
    QuadReal dist = detail::quad_abs_diff(zbar, cand);
    QuadReal twice = dist + dist;
    if (!(twice < min_z)) continue;
    if (!(twice < zx)) continue;
    v = cand;
    w.v_offset = q;
    got_v = true;
  }
  if (!got_v) throw DomainError("no convergent approaches zbar closely enough");
  w.v = v;

  // Final exact verification of the three claims.
  w.zbar_in_ny = true;
  {
    QuadReal dxz = dirichlet_exact_distance(xbar, zbar);
    for (const auto& y : member_set)
      if (!(dxz < dirichlet_exact_distance(zbar, y))) w.zbar_in_ny = false;
  }
  w.v_in_nz = true;
  {
    QuadReal dvz = dirichlet_exact_distance(v, zbar);
    for (const auto& z : challenge) {
      if (detail::quad_abs_diff(v, z).sign() == 0) continue; // v itself may appear
      if (!(dvz < dirichlet_exact_distance(v, z))) w.v_in_nz = false;
    }
  }
  {
    QuadReal dvy = dirichlet_exact_distance(v, ybar);
    QuadReal dvx = dirichlet_exact_distance(v, xbar);
    w.v_escapes = !(dvx < dvy); // d(v, ybar) <= d(v, xbar)
  }
  return w;
}

// Non-uniqueness of strong-Delta limits, realized on a sup-norm grid of
// size G: nested halving index blocks A_1 ⊃ A_2 ⊃ ... and the sequence
// x_n = 1_{A_{n+1}} - 1_{A_n \ A_{n+1}}, whose members are pairwise at
// sup-distance 2. Two distinct candidates at tail distance exactly 1 are
// both certified at tolerance 0.
struct NonUniqueStrongDeltaDemo {
  SpaceDescriptor space;
  std::vector<PointRepr> sequence;
  PointRepr candidate_a; // indicator of the complement of A_1
  PointRepr candidate_b; // the zero function
  ConvergenceVerdict verdict_a;
  ConvergenceVerdict verdict_b;
  double pairwise_candidate_distance = 0.0;
  double min_pairwise_sequence_distance = 0.0;
  double radius = 0.0;
};

inline NonUniqueStrongDeltaDemo nonunique_strong_delta_demo(int grid = 64, int depth = 5) {
  if (grid < 8 || depth < 1) throw DomainError("grid too small for the construction");
  if ((std::int64_t(1) << (depth + 1)) > grid)
    throw DomainError("depth too large for the grid: halving exhausts the blocks");

  NonUniqueStrongDeltaDemo demo;
  demo.space = SpaceDescriptor::sup_vec(grid);
  auto block_end = [&](int n) { return grid >> n; }; // A_n = [0, grid/2^n)
  for (int n = 1; n <= depth; ++n) {
    std::vector<double> x(static_cast<std::size_t>(grid), 0.0);
    for (int i = 0; i < block_end(n + 1); ++i) x[static_cast<std::size_t>(i)] = 1.0;
    for (int i = block_end(n + 1); i < block_end(n); ++i) x[static_cast<std::size_t>(i)] = -1.0;
    demo.sequence.push_back(make_vec(std::move(x)));
  }

  std::vector<double> comp(static_cast<std::size_t>(grid), 0.0);
  for (int i = block_end(1); i < grid; ++i) comp[static_cast<std::size_t>(i)] = 1.0;
  demo.candidate_a = make_vec(std::move(comp));
  demo.candidate_b = make_vec(std::vector<double>(static_cast<std::size_t>(grid), 0.0));
  demo.pairwise_candidate_distance =
      distance(demo.space, demo.candidate_a, demo.candidate_b);

  double minp = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < demo.sequence.size(); ++i)
    for (std::size_t j = i + 1; j < demo.sequence.size(); ++j)
      minp = std::min(minp, distance(demo.space, demo.sequence[i], demo.sequence[j]));
  demo.min_pairwise_sequence_distance = demo.sequence.size() > 1 ? minp : 0.0;

  // Probes must keep their tail distances >= 1 exactly: the opposite
  // candidate, the A_1 indicator, the all-ones vector, and sequence points
  // from before the tail window. Window-interior points would fake a
  // liminf of 0 against themselves.
  auto probes_for = [&](const PointRepr& cand, const PointRepr& other) {
    std::vector<PointRepr> probes;
    probes.push_back(other);
    std::vector<double> a1(static_cast<std::size_t>(grid), 0.0);
    for (int i = 0; i < block_end(1); ++i) a1[static_cast<std::size_t>(i)] = 1.0;
    probes.push_back(make_vec(std::move(a1)));
    probes.push_back(make_vec(std::vector<double>(static_cast<std::size_t>(grid), 1.0)));
    TailWindow w;
    int w0 = w.start(static_cast<int>(demo.sequence.size()));
    for (int i = 0; i < w0 && i < 2; ++i) probes.push_back(demo.sequence[static_cast<std::size_t>(i)]);
    std::vector<PointRepr> kept;
    for (auto& p : probes)
      if (!points_identical(p, cand)) kept.push_back(p);
    return kept;
  };

  if (static_cast<int>(demo.sequence.size()) >= 4) {
    auto oracle = SequenceOracle::from_points(demo.space, demo.sequence);
    demo.verdict_a = strong_delta_test(oracle, demo.candidate_a,
                                       probes_for(demo.candidate_a, demo.candidate_b),
                                       TailWindow{}, 0.0);
    demo.verdict_b = strong_delta_test(oracle, demo.candidate_b,
                                       probes_for(demo.candidate_b, demo.candidate_a),
                                       TailWindow{}, 0.0);
    TailWindow w;
    double r = 0.0;
    for (int i = w.start(oracle.horizon()); i < oracle.horizon(); ++i)
      r = std::max(r, distance(demo.space, oracle.point(i), demo.candidate_a));
    demo.radius = r;
  } else {
    // Too short to window: radius is still measurable directly.
    demo.verdict_a.mode = demo.verdict_b.mode = ConvergenceMode::strong_delta;
    demo.verdict_a.status = demo.verdict_b.status = VerdictStatus::inconclusive;
    double r = 0.0;
    for (const auto& p : demo.sequence)
      r = std::max(r, distance(demo.space, p, demo.candidate_a));
    demo.radius = r;
  }
  return demo;
}

} // namespace polarconv
