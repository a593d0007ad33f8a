#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "convergence.hpp"
#include "extraction.hpp"
#include "fixedpoint.hpp"
#include "report.hpp"
#include "rotund.hpp"

namespace polarconv {

// ---------------------------------------------------------------------------
// Named fixture outcomes: ordered rows for the report plus a conjunction of
// labeled checks. A fixture is reproducible from (name, seed) alone.

struct FixtureOutcome {
  std::string name;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> rows;

  void put(const std::string& key, const std::string& value) {
    rows.emplace_back(key, value);
  }
  void put(const std::string& key, const char* value) { put(key, std::string(value)); }
  void put(const std::string& key, double value) { put(key, report_number(value)); }
  void put(const std::string& key, int value) { put(key, std::to_string(value)); }
  void put(const std::string& key, bool value) {
    put(key, value ? std::string("true") : std::string("false"));
  }

  void check(const std::string& label, bool ok) {
    put("check." + label, ok ? std::string("pass") : std::string("FAIL"));
    pass = pass && ok;
  }
};

namespace fixtures {

inline std::vector<double> basis(int dim, int k, double v) {
  std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
  c[static_cast<std::size_t>(k)] = v;
  return c;
}

inline PointRepr vec2(double x, double y) { return make_vec({x, y}); }

inline std::vector<double> add(std::vector<double> a, const std::vector<double>& b,
                               double scale) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

// x_k = indicator of [0, k] in R^dim (the growing plateau of ones).
inline std::vector<PointRepr> prefix_ones(int dim, int horizon) {
  std::vector<PointRepr> pts;
  for (int k = 0; k < horizon; ++k) {
    std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i <= k && i < dim; ++i) c[static_cast<std::size_t>(i)] = 1.0;
    pts.push_back(make_vec(std::move(c)));
  }
  return pts;
}

// x_k = e_k, the basis escalator.
inline std::vector<PointRepr> basis_escalator(int dim, int horizon) {
  std::vector<PointRepr> pts;
  for (int k = 0; k < horizon; ++k) pts.push_back(make_vec(basis(dim, k % dim, 1.0)));
  return pts;
}

// Oscillation u_n(t) = c + b * sin((2n+1) t) on the uniform circle grid; the
// odd frequencies keep every harmonic of the family exactly summable on a
// power-of-two grid, so the weak limit is the constant c exactly.
inline std::pair<std::vector<GridFunction>, GridFunction> bl_oscillation_fixture(
    double p, double c, double b, int grid = 512, int horizon = 64) {
  const double step = 2.0 * M_PI / static_cast<double>(grid);
  std::vector<GridFunction> seq;
  seq.reserve(static_cast<std::size_t>(horizon));
  for (int n = 0; n < horizon; ++n) {
    double freq = static_cast<double>(2 * n + 1);
    std::vector<double> v(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
      double t = step * (static_cast<double>(i) + 0.5);
      v[static_cast<std::size_t>(i)] = c + b * std::sin(freq * t);
    }
    seq.push_back(GridFunction::on_circle_grid(std::move(v), p));
  }
  GridFunction u = GridFunction::on_circle_grid(
      std::vector<double>(static_cast<std::size_t>(grid), c), p);
  return {std::move(seq), std::move(u)};
}

// Rectified variant c + b * |sin((2n+1) t)|: the limit distribution is
// asymmetric, which separates the weak mean from the best L^p constant.
inline std::vector<GridFunction> rectified_oscillation(double p, double c, double b,
                                                       int grid = 512,
                                                       int horizon = 48) {
  const double step = 2.0 * M_PI / static_cast<double>(grid);
  std::vector<GridFunction> seq;
  seq.reserve(static_cast<std::size_t>(horizon));
  for (int n = 0; n < horizon; ++n) {
    double freq = static_cast<double>(2 * n + 1);
    std::vector<double> v(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
      double t = step * (static_cast<double>(i) + 0.5);
      v[static_cast<std::size_t>(i)] = c + b * std::fabs(std::sin(freq * t));
    }
    seq.push_back(GridFunction::on_circle_grid(std::move(v), p));
  }
  return seq;
}

// The shipped conjugate-equivalence fixtures: both verdict routes must agree
// on each. (a) signed-sine oscillation in L^2 around its candidate — both
// certified; (b) rectified oscillation in L^4 against the weak mean, which a
// nearby constant beats persistently — both falsified; (c) a constant offset
// that never approaches the candidate — both falsified.
struct ConjFixture {
  std::string name;
  std::vector<GridFunction> seq;
  GridFunction candidate;
  bool expect_certified = false;
};

inline std::vector<ConjFixture> conj_shipped_fixtures(int grid = 512,
                                                      int horizon = 48) {
  std::vector<ConjFixture> out;
  {
    auto [seq, u] = bl_oscillation_fixture(2.0, 1.0, 0.5, grid, horizon);
    out.push_back({"l2-sine-oscillation", std::move(seq), std::move(u), true});
  }
  {
    auto seq = rectified_oscillation(4.0, 1.0, 1.0, grid, horizon);
    GridFunction w = GridFunction::on_circle_grid(
        std::vector<double>(static_cast<std::size_t>(grid), 1.0 + 2.0 / M_PI), 4.0);
    out.push_back({"l4-rectified-vs-weak-mean", std::move(seq), std::move(w), false});
  }
  {
    GridFunction shifted = GridFunction::on_circle_grid(
        std::vector<double>(static_cast<std::size_t>(grid), 1.3), 3.0);
    std::vector<GridFunction> seq(static_cast<std::size_t>(horizon), shifted);
    GridFunction base = GridFunction::on_circle_grid(
        std::vector<double>(static_cast<std::size_t>(grid), 1.0), 3.0);
    out.push_back({"l3-constant-offset", std::move(seq), std::move(base), false});
  }
  return out;
}

// Seeded instance of the Dirichlet neighborhood-base violation: base points
// with an exactly irrational separation of magnitude at most one, and a
// member set that sometimes carries an extra rational-offset point.
struct BtnInstance {
  QuadPoint xbar;
  QuadPoint ybar;
  std::vector<QuadPoint> member_set;
};

inline BtnInstance seeded_btn_instance(Rng& rng) {
  Rational xa(static_cast<std::int64_t>(rng.index(17)) - 8, 8);
  Rational xb(static_cast<std::int64_t>(rng.index(9)) - 4, 16);
  QuadPoint xbar{xa, xb};
  std::int64_t m = 1 + static_cast<std::int64_t>(rng.index(45)); // |m|*sqrt2/64 <= 0.995
  if (rng.index(2) == 0) m = -m;
  QuadPoint ybar{xa, xb + Rational(m, 64)};
  BtnInstance inst{xbar, ybar, {ybar}};
  if (rng.index(2) == 0) {
    Rational off(1 + static_cast<std::int64_t>(rng.index(8)), 16);
    inst.member_set.push_back(QuadPoint{xa + off, xb});
  }
  return inst;
}

} // namespace fixtures

// ---------------------------------------------------------------------------
// Implication-lattice fixtures: sequences with a candidate and probe family,
// spanning the space kinds. Every detector must run without throwing, and
// certified polar / certified strong-Delta verdicts must imply a certified
// Delta verdict at the same tolerance.

struct LatticeFixture {
  std::string name;
  SequenceOracle oracle;
  PointRepr candidate;
  std::vector<PointRepr> probes;
  double tol = 1e-9;
};

inline std::vector<LatticeFixture> lattice_fixtures() {
  using fixtures::add;
  using fixtures::basis;
  using fixtures::vec2;
  std::vector<LatticeFixture> out;

  auto gen = [](SpaceDescriptor s, int horizon, const std::function<PointRepr(int)>& f) {
    return SequenceOracle::from_generator(std::move(s), horizon, f);
  };

  { // Constant sequence: its own point certifies everything.
    SpaceDescriptor s = SpaceDescriptor::euclidean(2);
    out.push_back({"euclid-const", gen(s, 48, [](int) { return vec2(0.3, -0.2); }),
                   vec2(0.3, -0.2),
                   {vec2(1.1, 0.4), vec2(-0.6, -0.9), vec2(0.3, 0.8)}});
  }
  { // Geometric decay toward the candidate.
    SpaceDescriptor s = SpaceDescriptor::euclidean(3);
    out.push_back({"euclid-geometric",
                   gen(s, 80,
                       [](int n) {
                         double r = std::pow(0.5, n);
                         return make_vec({0.1 + r * 0.8, -0.4 + r * 0.3, r * 0.5});
                       }),
                   make_vec({0.1, -0.4, 0.0}),
                   {make_vec({0.9, -0.4, 0.0}), make_vec({0.1, 0.6, 0.2})}});
  }
  { // Harmonic decay: too slow for the strong-Delta oscillation gate.
    SpaceDescriptor s = SpaceDescriptor::euclidean(2);
    out.push_back({"euclid-harmonic",
                   gen(s, 200,
                       [](int n) {
                         double r = 1.0 / static_cast<double>(n + 1);
                         return vec2(0.2 + 0.8 * r, -0.1 + 0.6 * r);
                       }),
                   vec2(0.2, -0.1), {vec2(1.2, -0.1), vec2(0.2, 0.9), vec2(-0.7, -0.8)}});
  }
  { // Two-point oscillation: the midpoint is the Delta limit.
    SpaceDescriptor s = SpaceDescriptor::euclidean(2);
    out.push_back({"euclid-two-cluster",
                   gen(s, 64,
                       [](int n) {
                         return (n % 2 == 0) ? vec2(0.5, 0.0) : vec2(-0.5, 0.0);
                       }),
                   vec2(0.0, 0.0), {vec2(1.3, 0.8), vec2(0.0, -1.1), vec2(-1.2, 0.9)}});
  }
  { // Deliberately wrong candidate: everything falsifies.
    SpaceDescriptor s = SpaceDescriptor::euclidean(2);
    out.push_back({"euclid-far-candidate",
                   gen(s, 48, [](int) { return vec2(-0.3, 0.4); }), vec2(1.7, 0.4),
                   {vec2(-0.3, 0.4), vec2(4.0, 0.4)}});
  }
  { // Shrinking spiral around the candidate.
    SpaceDescriptor s = SpaceDescriptor::euclidean(2);
    out.push_back({"euclid-spiral",
                   gen(s, 160,
                       [](int n) {
                         double r = 1.0 / static_cast<double>(n + 1);
                         double a = 0.7 * static_cast<double>(n);
                         return vec2(0.1 + r * std::cos(a), 0.3 + r * std::sin(a));
                       }),
                   vec2(0.1, 0.3), {vec2(0.9, 0.3), vec2(0.1, -0.6), vec2(-0.5, 1.0)}});
  }
  { // p = 1.5 harmonic decay.
    SpaceDescriptor s = SpaceDescriptor::lp_vec(4, 1.5);
    out.push_back({"lp15-harmonic",
                   gen(s, 200,
                       [](int n) {
                         double r = 1.0 / static_cast<double>(n + 1);
                         return make_vec({0.3 + 0.5 * r, -0.2 + 0.4 * r, 0.6 * r, 0.1});
                       }),
                   make_vec({0.3, -0.2, 0.0, 0.1}),
                   {make_vec({1.0, -0.2, 0.0, 0.1}), make_vec({0.3, 0.7, 0.0, 0.1})}});
  }
  { // p = 1.5 wrong candidate.
    SpaceDescriptor s = SpaceDescriptor::lp_vec(4, 1.5);
    out.push_back({"lp15-far-candidate",
                   gen(s, 48, [](int) { return make_vec({0.2, 0.2, -0.1, 0.0}); }),
                   make_vec({1.5, 0.2, -0.1, 0.0}),
                   {make_vec({0.2, 0.2, -0.1, 0.0}), make_vec({3.0, 0.2, -0.1, 0.0})}});
  }
  { // p = 3 geometric decay.
    SpaceDescriptor s = SpaceDescriptor::lp_vec(3, 3.0);
    out.push_back({"lp3-geometric",
                   gen(s, 80,
                       [](int n) {
                         double r = std::pow(0.5, n);
                         return make_vec({-0.2 + 0.5 * r, 0.4 - 0.7 * r, 0.3 * r});
                       }),
                   make_vec({-0.2, 0.4, 0.0}),
                   {make_vec({0.6, 0.4, 0.0}), make_vec({-0.2, -0.5, 0.3})}});
  }
  { // p = 3 constant sequence.
    SpaceDescriptor s = SpaceDescriptor::lp_vec(3, 3.0);
    out.push_back({"lp3-const",
                   gen(s, 48, [](int) { return make_vec({0.5, -0.1, 0.2}); }),
                   make_vec({0.5, -0.1, 0.2}),
                   {make_vec({1.2, -0.1, 0.2}), make_vec({0.5, 0.8, -0.4})}});
  }
  { // p = 4 two-point oscillation around its midpoint.
    SpaceDescriptor s = SpaceDescriptor::lp_vec(2, 4.0);
    out.push_back({"lp4-two-cluster",
                   gen(s, 64,
                       [](int n) {
                         return (n % 2 == 0) ? vec2(0.3, 0.6) : vec2(0.3, -0.6);
                       }),
                   vec2(0.3, 0.0), {vec2(1.4, 0.0), vec2(0.3, 1.8), vec2(-0.9, -0.9)}});
  }
  { // p = 4 harmonic decay.
    SpaceDescriptor s = SpaceDescriptor::lp_vec(3, 4.0);
    out.push_back({"lp4-harmonic",
                   gen(s, 200,
                       [](int n) {
                         double r = 1.0 / static_cast<double>(n + 1);
                         return make_vec({0.1 + 0.9 * r, 0.2 - 0.3 * r, -0.4 * r});
                       }),
                   make_vec({0.1, 0.2, 0.0}),
                   {make_vec({0.9, 0.2, 0.0}), make_vec({0.1, -0.7, 0.0})}});
  }
  { // One-norm basis escalator: zero is the polar limit.
    SpaceDescriptor s = SpaceDescriptor::one_norm_vec(64);
    std::vector<PointRepr> probes;
    probes.push_back(make_vec(basis(64, 0, 0.5)));
    probes.push_back(make_vec(add(basis(64, 0, 1.0), basis(64, 1, 1.0), -1.0)));
    out.push_back({"l1-escalator",
                   SequenceOracle::from_points(s, fixtures::basis_escalator(64, 60)),
                   make_vec(std::vector<double>(64, 0.0)), std::move(probes)});
  }
  { // Sup-norm prefix plateau: every probe ties, polar falsifies, Delta holds.
    SpaceDescriptor s = SpaceDescriptor::sup_vec(64);
    std::vector<PointRepr> probes;
    probes.push_back(make_vec(basis(64, 0, 1.0)));
    probes.push_back(make_vec(std::vector<double>(64, 1.0)));
    out.push_back({"linf-prefix-ones",
                   SequenceOracle::from_points(s, fixtures::prefix_ones(64, 60)),
                   make_vec(std::vector<double>(64, 0.0)), std::move(probes)});
  }
  { // Same plateau, nonzero candidate against its zeroed-out variant.
    SpaceDescriptor s = SpaceDescriptor::sup_vec(64);
    out.push_back({"linf-beta-gamma",
                   SequenceOracle::from_points(s, fixtures::prefix_ones(64, 60)),
                   make_vec(basis(64, 0, 0.5)),
                   {make_vec(std::vector<double>(64, 0.0))}});
  }
  { // Discrete metric, eventually constant.
    SpaceDescriptor s = SpaceDescriptor::discrete();
    PointRepr a = make_index_set({0}, 8), b = make_index_set({1}, 8);
    out.push_back({"discrete-eventually-const",
                   gen(s, 48, [a, b](int n) { return n < 3 ? b : a; }), a,
                   {b, make_index_set({2}, 8), make_index_set({0, 1}, 8)}});
  }
  { // Discrete metric, alternating: no limit of any flavor.
    SpaceDescriptor s = SpaceDescriptor::discrete();
    PointRepr a = make_index_set({0}, 8), b = make_index_set({1}, 8);
    out.push_back({"discrete-alternating",
                   gen(s, 48, [a, b](int n) { return n % 2 == 0 ? a : b; }), a, {b}});
  }
  { // Hybrid norm: vector part converges, the metric never goes below one.
    SpaceDescriptor s = SpaceDescriptor::hybrid_norm(2);
    out.push_back({"hybrid-harmonic",
                   gen(s, 200,
                       [](int n) {
                         double r = 1.0 / static_cast<double>(n + 1);
                         return vec2(0.25 + 0.8 * r, -0.5 + 0.6 * r);
                       }),
                   vec2(0.25, -0.5),
                   {vec2(1.05, -0.1), vec2(-0.45, 0.1), vec2(0.3, -0.45)}});
  }
  { // Oscillating sine frequencies on the circle grid: zero is the Delta and
    // polar limit while the sequence escapes every norm ball boundary.
    const int g = 128, h = 48;
    std::vector<double> w(static_cast<std::size_t>(g), 2.0 * M_PI / g);
    SpaceDescriptor s = SpaceDescriptor::lp_grid(w, 2.0);
    auto osc = [g](int n) {
      std::vector<double> v(static_cast<std::size_t>(g));
      double freq = static_cast<double>(2 * n + 1);
      for (int i = 0; i < g; ++i) {
        double t = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / g;
        v[static_cast<std::size_t>(i)] = std::sin(freq * t);
      }
      return make_vec(std::move(v));
    };
    std::vector<PointRepr> probes;
    probes.push_back(make_vec(std::vector<double>(static_cast<std::size_t>(g), 0.5)));
    probes.push_back(make_vec(std::vector<double>(static_cast<std::size_t>(g), -0.5)));
    {
      std::vector<double> c(static_cast<std::size_t>(g));
      for (int i = 0; i < g; ++i)
        c[static_cast<std::size_t>(i)] =
            std::cos(2.0 * M_PI * (static_cast<double>(i) + 0.5) / g);
      probes.push_back(make_vec(std::move(c)));
    }
    out.push_back({"grid-oscillation", gen(s, h, osc),
                   make_vec(std::vector<double>(static_cast<std::size_t>(g), 0.0)),
                   probes});
    out.push_back({"grid-wrong-candidate", gen(s, h, osc), osc(0),
                   {make_vec(std::vector<double>(static_cast<std::size_t>(g), 0.0)),
                    probes[0]}});
  }
  { // Norm-convergent grid sequence with p = 3.
    const int g = 64;
    std::vector<double> w(static_cast<std::size_t>(g), 2.0 * M_PI / g);
    SpaceDescriptor s = SpaceDescriptor::lp_grid(w, 3.0);
    std::vector<double> base(static_cast<std::size_t>(g)), bump(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
      double t = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / g;
      base[static_cast<std::size_t>(i)] = 0.5 + 0.3 * std::sin(t);
      bump[static_cast<std::size_t>(i)] = std::cos(t);
    }
    auto f = [base, bump](int n) {
      return make_vec(fixtures::add(base, bump, std::pow(0.5, n)));
    };
    out.push_back({"grid-norm-convergent", gen(s, 80, f), make_vec(base),
                   {make_vec(fixtures::add(base, bump, 1.0)),
                    make_vec(fixtures::add(base, bump, -0.75))}});
  }
  { // Dirichlet metric, constant sequence: exact zero distances.
    SpaceDescriptor s = SpaceDescriptor::dirichlet();
    PointRepr c = make_quad(Rational(1, 2), Rational(0));
    out.push_back({"dirichlet-constant", gen(s, 48, [c](int) { return c; }), c,
                   {make_quad(Rational(1), Rational(0)),
                    make_quad(Rational(0), Rational(1))}});
  }
  { // Dirichlet metric, rational drift toward zero: the penalty keeps the
    // distances near two while the displacement part vanishes.
    SpaceDescriptor s = SpaceDescriptor::dirichlet();
    out.push_back({"dirichlet-rational-drift",
                   gen(s, 48,
                       [](int n) {
                         return make_quad(Rational(1, n + 1), Rational(0));
                       }),
                   make_quad(Rational(0), Rational(0)),
                   {make_quad(Rational(0), Rational(1)),
                    make_quad(Rational(5), Rational(0)),
                    make_quad(Rational(-1), Rational(0))}});
  }
  { // Averaged-rotation orbit in the clamped ball: geometric polar convergence.
    SpaceDescriptor host = SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 2.0);
    MapDescriptor map = make_averaged_rotation_map(host, 2.0);
    out.push_back({"clamped-averaged-rotation-orbit", orbit(map, vec2(1.1, -0.6), 120),
                   vec2(0.0, 0.0), {vec2(1.1, -0.6), vec2(0.8, -0.3)}});
  }
  { // Reflection orbit: strong-Delta holds at the center, polar cannot.
    SpaceDescriptor host = SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 2.0);
    MapDescriptor map = make_reflection_map(host);
    out.push_back({"clamped-reflection-orbit", orbit(map, vec2(1.2, -0.7), 64),
                   vec2(0.0, 0.0), {vec2(2.4, -1.4)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry fixtures: the named end-to-end demonstrations the command line
// exposes. Each runs a scripted checklist and reports per-check outcomes.

inline std::vector<std::string> registry_names() {
  return {"discrete-nbhd", "hilbert-halfspace", "hybrid-metric", "dirichlet-btn",
          "l1-polar",      "linf-no-polar",     "indicator-nonunique", "reflection",
          "rotation",      "opial-lp",          "bl-p4"};
}

namespace fixtures {

inline FixtureOutcome run_discrete_nbhd(std::uint64_t) {
  FixtureOutcome out;
  out.name = "discrete-nbhd";
  SpaceDescriptor s = SpaceDescriptor::discrete();
  PointRepr x = make_index_set({0}, 8), y = make_index_set({1}, 8);

  // In the discrete metric the strict neighborhood of x against any y != x
  // collapses to the singleton {x}: enumerate every subset of an 8-point
  // ground set and compare membership with identity.
  int mismatches = 0;
  for (int mask = 0; mask < 256; ++mask) {
    std::vector<int> idx;
    for (int b = 0; b < 8; ++b)
      if (mask & (1 << b)) idx.push_back(b);
    PointRepr z = make_index_set(std::move(idx), 8);
    bool member = polar_nbhd_member(s, x, {y}, z);
    if (member != points_identical(z, x)) ++mismatches;
  }
  out.put("points-enumerated", 256);
  out.put("membership-mismatches", mismatches);
  out.check("nbhd-is-singleton", mismatches == 0);

  auto eventually = SequenceOracle::from_generator(
      s, 48, [&](int n) { return n < 3 ? y : x; });
  std::vector<PointRepr> probes{y, make_index_set({2}, 8), make_index_set({0, 1}, 8)};
  ConvergenceVerdict pv = polar_test(eventually, x, probes);
  out.put("eventually-constant.polar", status_name(pv.status));
  out.put("eventually-constant.margin", pv.margin);
  bool m_ok = true;
  for (const auto& row : pv.table) m_ok = m_ok && row.m_index <= 3;
  out.check("eventually-constant-certified", pv.certified());
  out.check("threshold-at-most-3", m_ok);
  ConvergenceVerdict dv = delta_test(eventually, x, probes);
  out.check("eventually-constant-delta", dv.certified());

  auto alternating = SequenceOracle::from_generator(
      s, 48, [&](int n) { return n % 2 == 0 ? x : y; });
  ConvergenceVerdict av = polar_test(alternating, x, {y});
  out.put("alternating.polar", status_name(av.status));
  out.check("alternating-falsified", av.status == VerdictStatus::falsified);
  out.check("alternating-witness", av.witness.has_value());
  return out;
}

inline FixtureOutcome run_hilbert_halfspace(std::uint64_t seed) {
  FixtureOutcome out;
  out.name = "hilbert-halfspace";
  SpaceDescriptor s = SpaceDescriptor::euclidean(2);
  std::vector<double> x = {0.2, -0.4}, y = {1.0, 0.6};
  std::vector<double> a = {0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])};
  std::vector<double> v = {y[0] - x[0], y[1] - x[1]};

  // The strict neighborhood of x against y is the open halfspace on the x
  // side of the perpendicular bisector: sample points and compare the two
  // characterizations, skipping only an exact-tie guard band.
  Rng rng(seed);
  int agreements = 0, tested = 0, skipped = 0;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> z = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    double inner = (z[0] - a[0]) * v[0] + (z[1] - a[1]) * v[1];
    if (std::fabs(inner) < 1e-9) {
      ++skipped;
      continue;
    }
    bool member = polar_nbhd_member(s, make_vec(x), {make_vec(y)}, make_vec(z));
    ++tested;
    if (member == (inner < 0.0)) ++agreements;
  }
  out.put("samples-tested", tested);
  out.put("samples-skipped", skipped);
  out.put("agreements", agreements);
  out.check("halfspace-agreement", tested >= 90 && agreements == tested);

  double nv = std::sqrt(v[0] * v[0] + v[1] * v[1]);
  PointRepr inside = make_vec({a[0] - 0.1 * v[0] / nv, a[1] - 0.1 * v[1] / nv});
  PointRepr outside = make_vec({a[0] + 0.1 * v[0] / nv, a[1] + 0.1 * v[1] / nv});
  out.check("bisector-inside", polar_nbhd_member(s, make_vec(x), {make_vec(y)}, inside));
  out.check("bisector-outside",
            !polar_nbhd_member(s, make_vec(x), {make_vec(y)}, outside));

  auto oracle = SequenceOracle::from_generator(s, 80, [&](int n) {
    double r = std::pow(0.9, n);
    return make_vec({x[0] + 0.5 * r, x[1] + 0.3 * r});
  });
  ConvergenceVerdict pv =
      polar_test(oracle, make_vec(x), {make_vec(y), make_vec(a), vec2(0.2, 0.4)});
  out.put("sequence.polar", status_name(pv.status));
  out.put("sequence.margin", pv.margin);
  out.check("sequence-certified", pv.certified());
  return out;
}

inline FixtureOutcome run_hybrid_metric(std::uint64_t) {
  FixtureOutcome out;
  out.name = "hybrid-metric";
  SpaceDescriptor s = SpaceDescriptor::hybrid_norm(2);
  SpaceDescriptor eu = SpaceDescriptor::euclidean(2);
  std::vector<double> x = {0.25, -0.5}, u = {0.8, 0.6}; // |u| = 1

  // Metric identity d = euclidean + 1 off the diagonal.
  PointRepr p1 = vec2(0.1, 0.2), p2 = vec2(-0.4, 0.9);
  out.check("distance-identity",
            std::fabs(distance(s, p1, p2) - (distance(eu, p1, p2) + 1.0)) < 1e-15 &&
                distance(s, p1, p1) == 0.0);

  const int h = 96;
  auto oracle = SequenceOracle::from_generator(s, h, [&](int n) {
    double r = 1.0 / static_cast<double>(n + 1);
    return make_vec({x[0] + u[0] * r, x[1] + u[1] * r});
  });
  PointRepr cand = make_vec(x);

  double min_dist = std::numeric_limits<double>::infinity();
  for (int n = 0; n < h; ++n)
    min_dist = std::min(min_dist, distance(s, oracle.point(n), cand));
  out.put("min-metric-distance", min_dist);
  out.check("metric-never-converges", min_dist >= 1.0);

  double final_vec_gap = distance(eu, oracle.point(h - 1), cand);
  out.put("final-vector-gap", final_vec_gap);
  out.check("vector-part-converges", final_vec_gap <= 1.5 / h);

  AsymptoticEstimate I = eval_I(oracle, cand);
  out.put("I-at-candidate", I.value);
  out.put("I-stability-gap", I.stability_gap);
  out.check("I-matches-penalty", std::fabs(I.value - (1.0 + 1.0 / 49.0)) <= 1e-12);

  ConvergenceVerdict pv = polar_test(
      oracle, cand,
      {make_vec({x[0] + 2.0 * u[0], x[1] + 2.0 * u[1]}),
       make_vec({x[0] - 0.7, x[1] + 0.4}), make_vec({x[0] + 0.05, x[1] + 0.05})});
  out.put("polar", status_name(pv.status));
  out.put("polar-margin", pv.margin);
  out.check("polar-certified", pv.certified());

  out.check("nbhd-contains-base", polar_nbhd_member(s, cand, {p2}, cand));
  out.check("nbhd-excludes-member", !polar_nbhd_member(s, cand, {p2}, p2));
  return out;
}

inline FixtureOutcome run_dirichlet_btn(std::uint64_t seed) {
  FixtureOutcome out;
  out.name = "dirichlet-btn";
  SpaceDescriptor s = SpaceDescriptor::dirichlet();

  // Canonical instance: xbar = 0, ybar = sqrt(2)/2 (irrational separation of
  // magnitude at most one).
  QuadPoint xbar{Rational(0), Rational(0)};
  QuadPoint ybar{Rational(0), Rational(1, 2)};
  BtnWitness w = btn_violation_dirichlet(xbar, ybar, {ybar});
  out.put("canonical.offset-halvings", w.offset_halvings);
  out.put("canonical.v-offset", w.v_offset.str());
  out.put("canonical.rejected-rational-offsets", static_cast<int>(w.rejected.size()));
  out.check("canonical.zbar-in-ny", w.zbar_in_ny);
  out.check("canonical.v-in-nz", w.v_in_nz);
  out.check("canonical.v-escapes", w.v_escapes);
  out.check("canonical.rejection-branch", !w.rejected.empty());

  // Cross-validation with the membership predicate (also exact).
  out.check("canonical.member-crosscheck",
            polar_nbhd_member(s, PointRepr(xbar), {PointRepr(ybar)}, PointRepr(w.zbar)));
  {
    std::vector<PointRepr> challenge;
    for (const auto& z : w.challenge) challenge.push_back(z);
    out.check("canonical.invader-crosscheck",
              polar_nbhd_member(s, PointRepr(w.zbar), challenge, PointRepr(w.v)));
  }
  out.check("canonical.escape-crosscheck",
            distance(s, PointRepr(w.v), PointRepr(ybar)) <=
                distance(s, PointRepr(w.v), PointRepr(xbar)) + 1e-9);

  Rng rng(seed);
  int variant_failures = 0;
  const int variants = 3;
  for (int k = 0; k < variants; ++k) {
    BtnInstance inst = seeded_btn_instance(rng);
    BtnWitness wk = btn_violation_dirichlet(inst.xbar, inst.ybar, inst.member_set);
    if (!wk.all_checks_pass()) ++variant_failures;
  }
  out.put("seeded-variants", variants);
  out.put("variant-failures", variant_failures);
  out.check("seeded-variants-pass", variant_failures == 0);
  return out;
}

inline FixtureOutcome run_l1_polar(std::uint64_t) {
  FixtureOutcome out;
  out.name = "l1-polar";
  const int dim = 64, h = 60;
  SpaceDescriptor s = SpaceDescriptor::one_norm_vec(dim);
  auto oracle = SequenceOracle::from_points(s, basis_escalator(dim, h));
  PointRepr zero = make_vec(std::vector<double>(dim, 0.0));

  std::vector<std::pair<std::string, PointRepr>> alphas;
  alphas.emplace_back("half-e0", make_vec(basis(dim, 0, 0.5)));
  alphas.emplace_back("e0-minus-e1",
                      make_vec(add(basis(dim, 0, 1.0), basis(dim, 1, 1.0), -1.0)));
  {
    std::vector<double> c(dim, 0.0);
    for (int j = 2; j <= 5; ++j) c[static_cast<std::size_t>(j)] = 0.25;
    alphas.emplace_back("quarter-block", make_vec(std::move(c)));
  }
  {
    std::vector<double> c(dim, 0.0);
    for (int j = 0; j < 8; ++j)
      c[static_cast<std::size_t>(j)] =
          ((j % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(j + 1) / 16.0;
    alphas.emplace_back("dense-8", make_vec(std::move(c)));
  }

  const int support_end = 8;
  double worst_gap_error = 0.0;
  for (const auto& [label, alpha] : alphas) {
    double na = distance(s, alpha, zero);
    double worst = 0.0;
    for (int k = support_end + 1; k < h; ++k) {
      double gap = distance(s, oracle.point(k), alpha) -
                   distance(s, oracle.point(k), zero);
      worst = std::max(worst, std::fabs(gap - na));
    }
    out.put("gap-error." + label, worst);
    worst_gap_error = std::max(worst_gap_error, worst);
  }
  out.check("gap-identity-1e-12", worst_gap_error <= 1e-12);

  std::vector<PointRepr> probes;
  for (const auto& [label, alpha] : alphas) probes.push_back(alpha);
  ConvergenceVerdict pv = polar_test(oracle, zero, probes);
  out.put("polar", status_name(pv.status));
  out.put("polar-margin", pv.margin);
  out.check("polar-certified-zero", pv.certified());
  bool m_ok = true;
  for (const auto& row : pv.table) m_ok = m_ok && row.m_index <= support_end + 1;
  out.check("thresholds-within-support", m_ok);

  ConvergenceVerdict sv = strong_delta_test(oracle, zero, probes);
  out.put("strong-delta", status_name(sv.status));
  out.check("strong-delta-certified", sv.certified());

  // The escalator's minimax landscape is flat along single-probe subgradient
  // steps, so warm-start the solver from the polar-certified candidate; the
  // solver then has to confirm that no probed point beats radius 1, which is
  // the proven minimum (any y with I(y) < 1 would need every window
  // coordinate above half its own norm).
  CenterConfig cc;
  cc.solver.hints.push_back(zero);
  CenterResult cr = asymptotic_center(oracle, cc);
  out.put("center-radius", cr.radius);
  out.check("center-radius-near-one", cr.radius >= 1.0 - 1e-9 && cr.radius <= 1.0 + 1e-9);
  return out;
}

inline FixtureOutcome run_linf_no_polar(std::uint64_t) {
  FixtureOutcome out;
  out.name = "linf-no-polar";
  const int dim = 64, h = 60;
  SpaceDescriptor s = SpaceDescriptor::sup_vec(dim);
  auto oracle = SequenceOracle::from_points(s, prefix_ones(dim, h));
  PointRepr zero = make_vec(std::vector<double>(dim, 0.0));
  PointRepr ones = make_vec(std::vector<double>(dim, 1.0));

  // Tie at every index: both distances are exactly one.
  bool tie_ok = true;
  for (int k = 0; k < h; ++k)
    tie_ok = tie_ok && distance(s, oracle.point(k), zero) == 1.0 &&
             distance(s, oracle.point(k), ones) == 1.0;
  out.check("all-ones-ties-everywhere", tie_ok);

  ConvergenceVerdict pv = polar_test(oracle, zero, {ones});
  out.put("zero-candidate.polar", status_name(pv.status));
  out.check("zero-falsified", pv.status == VerdictStatus::falsified);
  out.check("zero-witness", pv.witness.has_value());

  // Every nonzero candidate falls to the same construction: zero one support
  // coordinate; the remaining coordinates dominate both distances.
  std::vector<std::pair<std::string, std::pair<PointRepr, PointRepr>>> cases;
  cases.emplace_back("half-e0",
                     std::make_pair(make_vec(basis(dim, 0, 0.5)), zero));
  cases.emplace_back(
      "e0-plus-e1",
      std::make_pair(make_vec(add(basis(dim, 0, 1.0), basis(dim, 1, 1.0), 1.0)),
                     make_vec(basis(dim, 1, 1.0))));
  {
    PointRepr beta = make_vec(add(basis(dim, 2, -0.3), basis(dim, 5, 0.8), 1.0));
    cases.emplace_back("two-coord", std::make_pair(beta, make_vec(basis(dim, 2, -0.3))));
  }
  {
    std::vector<double> c(dim, 0.0);
    for (int j = 0; j < 8; ++j) c[static_cast<std::size_t>(j)] = 0.2 + 0.1 * j;
    std::vector<double> g = c;
    g[0] = 0.0;
    cases.emplace_back("dense-8", std::make_pair(make_vec(std::move(c)),
                                                 make_vec(std::move(g))));
  }
  int falsified = 0;
  for (const auto& [label, bg] : cases) {
    ConvergenceVerdict v = polar_test(oracle, bg.first, {bg.second});
    out.put("beta." + label, status_name(v.status));
    if (v.status == VerdictStatus::falsified) ++falsified;
  }
  out.check("every-beta-falsified", falsified == static_cast<int>(cases.size()));

  // Delta still tolerates the ties: the verdict split is the point.
  ConvergenceVerdict dv = delta_test(oracle, zero, {ones});
  out.put("zero-candidate.delta", status_name(dv.status));
  out.check("delta-tolerates-ties", dv.certified());
  return out;
}

inline FixtureOutcome run_indicator_nonunique(std::uint64_t) {
  FixtureOutcome out;
  out.name = "indicator-nonunique";
  NonUniqueStrongDeltaDemo demo = nonunique_strong_delta_demo(64, 5);
  out.put("candidate-distance", demo.pairwise_candidate_distance);
  out.put("min-pairwise-sequence-distance", demo.min_pairwise_sequence_distance);
  out.put("radius", demo.radius);
  out.put("verdict-a", status_name(demo.verdict_a.status));
  out.put("verdict-b", status_name(demo.verdict_b.status));
  out.check("both-certified",
            demo.verdict_a.certified() && demo.verdict_b.certified());
  out.check("tolerance-zero",
            demo.verdict_a.tolerance == 0.0 && demo.verdict_b.tolerance == 0.0);
  out.check("candidates-far-apart", demo.pairwise_candidate_distance >= 1.0);
  out.check("sequence-spread-two", demo.min_pairwise_sequence_distance == 2.0);
  return out;
}

inline FixtureOutcome run_reflection(std::uint64_t) {
  FixtureOutcome out;
  out.name = "reflection";
  SpaceDescriptor host =
      SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 2.0);
  MapDescriptor map = make_reflection_map(host);
  PointRepr x0 = vec2(1.2, -0.7);

  FixedPointResult fp = fixed_point_via_center(map, x0);
  double center_norm = vector_norm(host, fp.point);
  out.put("center-norm", center_norm);
  out.put("residual", fp.residual);
  out.check("center-at-origin", center_norm <= 1e-9);
  out.check("residual-tiny", fp.residual <= 1e-9);

  double lip = lipschitz_probe(map);
  out.put("lipschitz-ratio", lip);
  out.check("nonexpansive", lip <= 1.0 + 1e-9);

  ParReport good = par_check(map, x0, SubsequenceSpec::suffix(1, 41), vec2(0.0, 0.0));
  ParReport bad = par_check(map, x0, SubsequenceSpec::suffix(1, 41), x0);
  out.put("par-at-center", good.pass);
  out.put("par-at-start", bad.pass);
  out.check("par-passes-at-center", good.pass);
  out.check("par-fails-at-start", !bad.pass && bad.failing_eps > 0.0);

  Polar2FixReport pipe = polar2fix_pipeline(map, x0);
  out.put("pipeline-failed-hypothesis", pipe.failed_hypothesis);
  out.check("pipeline-blocked-at-par",
            !pipe.success && pipe.failed_hypothesis == "par" && !pipe.polar.has_value());

  SequenceOracle o = orbit(map, x0, 64);
  ConvergenceVerdict pv = polar_test(o, vec2(0.0, 0.0), {x0});
  out.put("orbit-polar", status_name(pv.status));
  out.check("orbit-polar-falsified", pv.status == VerdictStatus::falsified);
  return out;
}

inline FixtureOutcome run_rotation(std::uint64_t) {
  FixtureOutcome out;
  out.name = "rotation";
  SpaceDescriptor host =
      SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 2.0);
  PointRepr x0 = vec2(1.1, 0.4);

  MapDescriptor pure = make_rotation_map(host, 2.399);
  FixedPointResult fp = fixed_point_via_center(pure, x0);
  out.put("pure.center-norm", vector_norm(host, fp.point));
  out.put("pure.residual", fp.residual);
  out.check("pure-center-at-origin", vector_norm(host, fp.point) <= 1e-8);
  out.check("pure-residual-ok", fp.success && fp.residual <= 1e-6);

  MapDescriptor avg = make_averaged_rotation_map(host, 2.399);
  Polar2FixConfig cfg;
  cfg.horizon = 240;
  Polar2FixReport pipe = polar2fix_pipeline(avg, x0, cfg);
  out.put("averaged.label", pipe.map_label);
  out.put("averaged.lipschitz", pipe.lipschitz_ratio);
  out.put("averaged.residual", pipe.residual);
  out.put("averaged.polar",
          pipe.polar ? status_name(pipe.polar->status) : "absent");
  out.check("averaged-success", pipe.success);
  out.check("averaged-polar-certified", pipe.polar && pipe.polar->certified());
  out.check("averaged-residual-1e-6", pipe.residual <= 1e-6);
  return out;
}

inline FixtureOutcome run_opial_lp(std::uint64_t) {
  FixtureOutcome out;
  out.name = "opial-lp";
  OpialDemoResult d4 = opial_lp_divergence_demo(4.0);
  out.put("p4.weak-value", d4.weak_value);
  out.put("p4.center-value", d4.center_value);
  out.put("p4.gap", d4.gap);
  out.put("p4.const-radius", d4.const_radius);
  out.put("p4.general-improvement", d4.general_improvement);
  out.put("p4.weak", status_name(d4.weak.status));
  out.check("p4-weak-certified", d4.weak.certified());
  out.check("p4-gap-above-0.01", d4.gap > 0.01);

  OpialDemoResult d2 = opial_lp_divergence_demo(2.0);
  out.put("p2.weak-value", d2.weak_value);
  out.put("p2.center-value", d2.center_value);
  out.put("p2.gap", d2.gap);
  out.check("p2-control-case", d2.control_case);
  out.check("p2-weak-certified", d2.weak.certified());
  out.check("p2-gap-below-1e-3", d2.gap <= 1e-3);
  return out;
}

inline FixtureOutcome run_bl_p4(std::uint64_t seed) {
  FixtureOutcome out;
  out.name = "bl-p4";
  auto [seq, u] = bl_oscillation_fixture(4.0, 1.2, 1.0);
  BlReport rep = brezis_lieb_check(seq, u, {}, seed == 0 ? 83 : seed);
  out.put("p", rep.p);
  out.put("weak", status_name(rep.weak.status));
  out.put("polar", status_name(rep.polar.status));
  out.put("tail-min-deficit", rep.tail_min);
  out.put("tail-spread",
          rep.tail_max_abs - std::fabs(rep.tail_min));
  out.check("hypotheses-certified", rep.weak.certified() && rep.polar.certified());
  out.check("deficit-nonnegative", rep.pass && rep.tail_min >= -1e-6);
  // Analytic tail value for this instance: 6 pi c^2 b^2 with c = 1.2, b = 1;
  // the quadrature is exact because every integrand frequency stays below
  // the grid size.
  double expect = 6.0 * M_PI * 1.2 * 1.2;
  out.put("deficit-expected", expect);
  out.check("deficit-matches-analytic", std::fabs(rep.tail_min - expect) <= 1e-6);
  out.check("deficit-constant-in-n",
            rep.tail_max_abs - std::fabs(rep.tail_min) <= 1e-9);
  return out;
}

} // namespace fixtures

inline FixtureOutcome run_registry_fixture(const std::string& name, std::uint64_t seed) {
  if (name == "discrete-nbhd") return fixtures::run_discrete_nbhd(seed);
  if (name == "hilbert-halfspace") return fixtures::run_hilbert_halfspace(seed);
  if (name == "hybrid-metric") return fixtures::run_hybrid_metric(seed);
  if (name == "dirichlet-btn") return fixtures::run_dirichlet_btn(seed);
  if (name == "l1-polar") return fixtures::run_l1_polar(seed);
  if (name == "linf-no-polar") return fixtures::run_linf_no_polar(seed);
  if (name == "indicator-nonunique") return fixtures::run_indicator_nonunique(seed);
  if (name == "reflection") return fixtures::run_reflection(seed);
  if (name == "rotation") return fixtures::run_rotation(seed);
  if (name == "opial-lp") return fixtures::run_opial_lp(seed);
  if (name == "bl-p4") return fixtures::run_bl_p4(seed);
  throw ConfigError("unknown fixture name: " + name);
}

} // namespace polarconv
