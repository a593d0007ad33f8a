#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "polarconv/polarconv.hpp"

using namespace polarconv;

TEST_CASE("constant sequence certifies all three modes") {
  auto s = SpaceDescriptor::euclidean(2);
  auto o = SequenceOracle::from_generator(
      s, 48, [](int) { return make_vec({0.25, -0.75}); });
  PointRepr cand = make_vec({0.25, -0.75});
  std::vector<PointRepr> probes = {make_vec({1.0, 0.0}), make_vec({0.0, 1.0})};

  REQUIRE(delta_test(o, cand, probes).certified());
  REQUIRE(strong_delta_test(o, cand, probes).certified());
  REQUIRE(polar_test(o, cand, probes).certified());
}

TEST_CASE("far candidate is falsified with a concrete witness") {
  auto s = SpaceDescriptor::euclidean(2);
  auto o = SequenceOracle::from_generator(s, 48,
                                          [](int) { return make_vec({0.0, 0.0}); });
  PointRepr cand = make_vec({2.0, 0.0});
  std::vector<PointRepr> probes = {make_vec({0.0, 0.0})}; // the actual limit

  auto dv = delta_test(o, cand, probes);
  REQUIRE(dv.status == VerdictStatus::falsified);
  REQUIRE(dv.witness.has_value());
  // the witness must be re-checkable against the oracle
  double dc = distance(s, o.point(dv.witness->index), cand);
  double dp = distance(s, o.point(dv.witness->index), dv.witness->probe);
  REQUIRE(dc == Catch::Approx(dv.witness->candidate_distance).margin(1e-12));
  REQUIRE(dp == Catch::Approx(dv.witness->probe_distance).margin(1e-12));
  REQUIRE(dc > dp + dv.tolerance);

  REQUIRE(polar_test(o, cand, probes).status == VerdictStatus::falsified);
  REQUIRE(strong_delta_test(o, cand, probes).status == VerdictStatus::falsified);
}

TEST_CASE("a single late tie never falsifies polar convergence") {
  auto s = SpaceDescriptor::euclidean(2);
  PointRepr probe = make_vec({0.6, 0.0});
  // constant at the origin, except one tail term sitting exactly on the probe
  auto o = SequenceOracle::from_generator(s, 64, [&](int n) {
    if (n == 40) return probe;
    return make_vec({0.0, 0.0});
  });
  auto pv = polar_test(o, make_vec({0.0, 0.0}), {probe});
  REQUIRE(pv.status == VerdictStatus::inconclusive);

  // two violations inside the last quarter do falsify
  auto o2 = SequenceOracle::from_generator(s, 64, [&](int n) {
    if (n == 56 || n == 60) return probe;
    return make_vec({0.0, 0.0});
  });
  auto pv2 = polar_test(o2, make_vec({0.0, 0.0}), {probe});
  REQUIRE(pv2.status == VerdictStatus::falsified);
  REQUIRE(pv2.witness.has_value());
}

TEST_CASE("probes coinciding with the candidate are rejected") {
  auto s = SpaceDescriptor::euclidean(2);
  auto o = SequenceOracle::from_generator(s, 48,
                                          [](int) { return make_vec({0.0, 0.0}); });
  PointRepr cand = make_vec({0.1, 0.1});
  REQUIRE_THROWS_AS(polar_test(o, cand, {make_vec({0.1, 0.1})}), ConfigError);
  REQUIRE_THROWS_AS(polar_test(o, cand, {}), ConfigError);
}

TEST_CASE("implication lattice holds across every shipped fixture") {
  auto fixtures = lattice_fixtures();
  REQUIRE(fixtures.size() >= 20);
  for (const auto& fx : fixtures) {
    INFO("fixture " << fx.name);
    ConvergenceVerdict dv, sv, pv;
    REQUIRE_NOTHROW(dv = delta_test(fx.oracle, fx.candidate, fx.probes, {}, fx.tol));
    REQUIRE_NOTHROW(sv =
                        strong_delta_test(fx.oracle, fx.candidate, fx.probes, {}, fx.tol));
    REQUIRE_NOTHROW(pv = polar_test(fx.oracle, fx.candidate, fx.probes, {}));
    if (pv.certified()) REQUIRE(dv.certified());
    if (sv.certified()) REQUIRE(dv.certified());
  }
}

TEST_CASE("expected verdicts on landmark fixtures") {
  struct Expect {
    const char* name;
    VerdictStatus delta, strong, polar;
  };
  const std::vector<Expect> table = {
      {"euclid-const", VerdictStatus::certified, VerdictStatus::certified,
       VerdictStatus::certified},
      {"euclid-geometric", VerdictStatus::certified, VerdictStatus::certified,
       VerdictStatus::certified},
      {"euclid-harmonic", VerdictStatus::certified, VerdictStatus::inconclusive,
       VerdictStatus::certified},
      {"euclid-far-candidate", VerdictStatus::falsified, VerdictStatus::falsified,
       VerdictStatus::falsified},
      {"l1-escalator", VerdictStatus::certified, VerdictStatus::certified,
       VerdictStatus::certified},
      {"linf-prefix-ones", VerdictStatus::certified, VerdictStatus::certified,
       VerdictStatus::falsified},
      {"discrete-alternating", VerdictStatus::falsified, VerdictStatus::falsified,
       VerdictStatus::falsified},
      {"clamped-reflection-orbit", VerdictStatus::certified, VerdictStatus::certified,
       VerdictStatus::falsified},
  };
  auto fixtures = lattice_fixtures();
  for (const auto& e : table) {
    bool found = false;
    for (const auto& fx : fixtures) {
      if (fx.name != e.name) continue;
      found = true;
      INFO("fixture " << fx.name);
      REQUIRE(delta_test(fx.oracle, fx.candidate, fx.probes, {}, fx.tol).status ==
              e.delta);
      REQUIRE(strong_delta_test(fx.oracle, fx.candidate, fx.probes, {}, fx.tol).status ==
              e.strong);
      REQUIRE(polar_test(fx.oracle, fx.candidate, fx.probes, {}).status == e.polar);
    }
    REQUIRE(found);
  }
}

TEST_CASE("non-unique strong-delta limits at tolerance zero") {
  auto demo = nonunique_strong_delta_demo();
  REQUIRE(demo.verdict_a.certified());
  REQUIRE(demo.verdict_b.certified());
  REQUIRE(demo.verdict_a.tolerance == 0.0);
  REQUIRE(demo.verdict_b.tolerance == 0.0);
  REQUIRE(demo.pairwise_candidate_distance >= 1.0);
  REQUIRE(demo.min_pairwise_sequence_distance == 2.0);
}

TEST_CASE("polar neighborhood membership is exact on the dirichlet line") {
  auto s = SpaceDescriptor::dirichlet();
  PointRepr x = make_quad(Rational(0), Rational(0));
  std::vector<PointRepr> member = {make_quad(Rational(0), Rational(1, 2))};

  // closer to x than to the member: a tiny irrational offset
  REQUIRE(polar_nbhd_member(s, x, member, make_quad(Rational(0), Rational(1, 64))));
  // the member itself is never in the neighborhood
  REQUIRE_FALSE(polar_nbhd_member(s, x, member, member[0]));
  // x itself always is
  REQUIRE(polar_nbhd_member(s, x, member, x));
}

TEST_CASE("btn violation verifies exactly on the canonical instance") {
  QuadPoint xbar{Rational(0), Rational(0)};
  QuadPoint ybar{Rational(0), Rational(1, 2)};
  BtnWitness w = btn_violation_dirichlet(xbar, ybar, {ybar});
  REQUIRE(w.zbar_in_ny);
  REQUIRE(w.v_in_nz);
  REQUIRE(w.v_escapes);
  REQUIRE(w.all_checks_pass());
  REQUIRE_FALSE(w.rejected.empty()); // rational offsets must have been discarded
  REQUIRE_FALSE(w.v_offset.is_zero());

  // cross-check: zbar really lies in the polar neighborhood of xbar
  auto s = SpaceDescriptor::dirichlet();
  REQUIRE(polar_nbhd_member(s, make_quad(xbar.a, xbar.b),
                            {make_quad(ybar.a, ybar.b)},
                            make_quad(w.zbar.a, w.zbar.b)));
}

TEST_CASE("btn violation survives seeded instances") {
  Rng rng(404);
  for (int i = 0; i < 5; ++i) {
    fixtures::BtnInstance inst = fixtures::seeded_btn_instance(rng);
    BtnWitness w = btn_violation_dirichlet(inst.xbar, inst.ybar, inst.member_set);
    INFO("instance " << i);
    REQUIRE(w.all_checks_pass());
  }
}

TEST_CASE("registry fixtures all pass and are pinned to eleven names") {
  auto names = registry_names();
  REQUIRE(names.size() == 11);
  for (const auto& name : names) {
    INFO("fixture " << name);
    FixtureOutcome out = run_registry_fixture(name, 1);
    REQUIRE(out.name == name);
    REQUIRE(out.pass);
  }
  REQUIRE_THROWS_AS(run_registry_fixture("no-such-fixture", 1), ConfigError);
}
