#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "polarconv/polarconv.hpp"
#include "support/oracles.hpp"

using namespace polarconv;

namespace {

GridFunction random_grid_function(Rng& rng, int dim, double p) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  std::vector<double> w(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    v[static_cast<std::size_t>(i)] = rng.uniform(-2.0, 2.0);
    w[static_cast<std::size_t>(i)] = rng.uniform(0.5, 2.0);
  }
  return GridFunction(std::move(v), std::move(w), p);
}

} // namespace

TEST_CASE("duality map invariants hold across exponents and random data") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    Rng rng(9000 + static_cast<std::uint64_t>(p * 10.0));
    int checked = 0;
    while (checked < 200) {
      GridFunction u = random_grid_function(rng, 32, p);
      if (!(u.norm() > 1e-9)) continue;
      ++checked;
      DualityVector star = duality_map(u);
      INFO("p " << p << " case " << checked);
      REQUIRE(star.p_conjugate == Catch::Approx(p / (p - 1.0)).margin(1e-12));
      REQUIRE(star.norm() == Catch::Approx(1.0).margin(1e-9));
      REQUIRE(duality_pairing(star, u) == Catch::Approx(u.norm()).margin(1e-9));
      REQUIRE(star.source_norm == Catch::Approx(u.norm()).margin(1e-12));
    }
  }
}

TEST_CASE("duality map closed form at p = 3") {
  GridFunction u({2.0, 1.0}, {1.0, 1.0}, 3.0);
  double n = std::pow(9.0, 1.0 / 3.0);
  REQUIRE(u.norm() == Catch::Approx(n).margin(1e-12));
  DualityVector star = duality_map(u);
  double denom = std::pow(9.0, 2.0 / 3.0);
  REQUIRE(star.values[0] == Catch::Approx(4.0 / denom).margin(1e-12));
  REQUIRE(star.values[1] == Catch::Approx(1.0 / denom).margin(1e-12));
  REQUIRE(star.norm() == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(duality_pairing(star, u) == Catch::Approx(n).margin(1e-12));
}

TEST_CASE("duality map rejects degenerate input") {
  GridFunction zero({0.0, 0.0}, {1.0, 1.0}, 3.0);
  REQUIRE_THROWS_AS(duality_map(zero), DomainError);

  GridFunction u({1.0, 2.0}, {1.0, 1.0}, 3.0);
  DualityVector star = duality_map(u);
  GridFunction other({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}, 3.0);
  REQUIRE_THROWS_AS(duality_pairing(star, other), RepresentationError);
}

TEST_CASE("weak pairing test separates oscillation from a constant offset") {
  auto [seq, u] = fixtures::bl_oscillation_fixture(2.0, 1.0, 0.5, 512, 48);
  WeakPairingVerdict good = weak_pairing_test(seq, u, default_weak_family(512));
  REQUIRE(good.certified());
  REQUIRE(good.witness_member == -1);
  REQUIRE(good.worst_pairing <= 0.02);
  REQUIRE(good.table.size() >= 17); // constant + 8 indicators + 8 smooth members

  // constant shift 0.3 never pairs to zero against the constant member
  GridFunction shifted = GridFunction::on_circle_grid(
      std::vector<double>(512, 1.3), 2.0);
  std::vector<GridFunction> flat(48, shifted);
  GridFunction base = GridFunction::on_circle_grid(std::vector<double>(512, 1.0), 2.0);
  WeakPairingVerdict bad = weak_pairing_test(flat, base, default_weak_family(512));
  REQUIRE(bad.status == VerdictStatus::falsified);
  REQUIRE(bad.witness_member >= 0);
  REQUIRE(bad.worst_pairing > 0.02);
}

TEST_CASE("weak pairing test validates inputs") {
  auto [seq, u] = fixtures::bl_oscillation_fixture(2.0, 1.0, 0.5, 512, 48);
  std::vector<GridFunction> tiny(seq.begin(), seq.begin() + 3);
  REQUIRE_THROWS_AS(weak_pairing_test(tiny, u, default_weak_family(512)), DomainError);
  REQUIRE_THROWS_AS(weak_pairing_test(seq, u, WeakTestFamily{}), ConfigError);
  REQUIRE_THROWS_AS(weak_pairing_test(seq, u, default_weak_family(512), {}, 0.0),
                    ConfigError);
}

TEST_CASE("polar and weak-dual verdict routes agree on every shipped fixture") {
  for (const auto& fx : fixtures::conj_shipped_fixtures()) {
    INFO("fixture " << fx.name);
    ConjReport rep = conj_equivalence_check(fx.seq, fx.candidate);
    REQUIRE(rep.agree);
    REQUIRE(rep.incident.empty());
    REQUIRE(rep.polar.certified() == fx.expect_certified);
    REQUIRE(rep.weak_dual.certified() == fx.expect_certified);
    REQUIRE(rep.tail_min_distance >= 1e-3);
  }
}

TEST_CASE("equivalence check refuses sequences that approach the candidate") {
  GridFunction c = GridFunction::on_circle_grid(std::vector<double>(512, 1.0), 2.0);
  std::vector<GridFunction> seq(16, c);
  REQUIRE_THROWS_AS(conj_equivalence_check(seq, c), DomainError);
}

TEST_CASE("weak limit and best L4 constant split by a visible gap") {
  OpialDemoResult res = opial_lp_divergence_demo(4.0);
  REQUIRE_FALSE(res.control_case);
  REQUIRE(res.weak.certified());
  REQUIRE(res.weak_value == Catch::Approx(1.0 + 2.0 / M_PI).margin(1e-4));

  // independent constant-candidate oracle over the same tail window
  const int grid = res.grid, horizon = res.horizon;
  const double step = 2.0 * M_PI / static_cast<double>(grid);
  std::vector<std::vector<double>> tail;
  TailWindow window;
  for (int nn = window.start(horizon); nn < horizon; ++nn) {
    double freq = static_cast<double>(2 * nn + 1);
    std::vector<double> v(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i)
      v[static_cast<std::size_t>(i)] =
          1.0 + std::fabs(std::sin(freq * step * (static_cast<double>(i) + 0.5)));
    tail.push_back(std::move(v));
  }
  auto objective = [&](double y) {
    double worst = 0.0;
    for (const auto& v : tail) {
      double s = 0.0;
      for (double x : v) s += step * std::pow(std::fabs(x - y), 4.0);
      worst = std::max(worst, std::pow(s, 0.25));
    }
    return worst;
  };
  double oracle_center = testsupport::golden_section_min(objective, -0.5, 3.5, 120);
  REQUIRE(res.center_value == Catch::Approx(oracle_center).margin(1e-4));
  REQUIRE(res.const_radius == Catch::Approx(objective(oracle_center)).margin(1e-6));

  REQUIRE(res.gap > 0.01);
  REQUIRE(res.gap == Catch::Approx(0.080012).margin(2e-3));
  // the diagnostic refinement cannot report a worse radius than the constant
  REQUIRE(res.general_radius <= res.const_radius + 1e-9);
}

TEST_CASE("the p = 2 control collapses the gap") {
  OpialDemoResult res = opial_lp_divergence_demo(2.0);
  REQUIRE(res.control_case);
  REQUIRE(res.gap <= 1e-3);
  REQUIRE(res.weak.certified());
}

TEST_CASE("the p = 1.5 side of the divergence") {
  OpialDemoResult res = opial_lp_divergence_demo(1.5);
  REQUIRE(res.center_value == Catch::Approx(1.663504).margin(1e-3));
  REQUIRE(res.gap > 0.01);
}

TEST_CASE("opial demo rejects unusable parameters") {
  REQUIRE_THROWS_AS(opial_lp_divergence_demo(1.0), DomainError);
  REQUIRE_THROWS_AS(opial_lp_divergence_demo(4.0, 30), DomainError);
  REQUIRE_THROWS_AS(opial_lp_divergence_demo(4.0, 512, 8), DomainError);
  REQUIRE_THROWS_AS(opial_lp_divergence_demo(4.0, 128, 80), DomainError);
}

TEST_CASE("deficit tail matches the closed forms") {
  SECTION("p = 3") {
    auto [seq, u] = fixtures::bl_oscillation_fixture(3.0, 1.2, 1.0);
    BlReport rep = brezis_lieb_check(seq, u);
    REQUIRE(rep.assertion_applies);
    REQUIRE(rep.pass);
    double expected = 3.6 * M_PI - 8.0 / 3.0;
    REQUIRE(rep.tail_min == Catch::Approx(expected).margin(1e-6));
    REQUIRE(rep.tail_max_abs == Catch::Approx(expected).margin(1e-6));
  }
  SECTION("p = 4") {
    auto [seq, u] = fixtures::bl_oscillation_fixture(4.0, 1.2, 1.0);
    BlReport rep = brezis_lieb_check(seq, u);
    REQUIRE(rep.assertion_applies);
    REQUIRE(rep.pass);
    REQUIRE(rep.tail_min == Catch::Approx(8.64 * M_PI).margin(1e-6));
  }
  SECTION("p = 2 identity") {
    auto [seq, u] = fixtures::bl_oscillation_fixture(2.0, 1.2, 1.0);
    BlReport rep = brezis_lieb_check(seq, u);
    REQUIRE(rep.identity_case);
    REQUIRE(rep.pass);
    REQUIRE(rep.tail_max_abs <= 1e-6);
  }
  SECTION("p = 2.5 exploratory") {
    auto [seq, u] = fixtures::bl_oscillation_fixture(2.5, 1.2, 1.0);
    BlReport rep = brezis_lieb_check(seq, u);
    REQUIRE(rep.exploratory);
    REQUIRE(rep.pass);
    REQUIRE(rep.tail_min == Catch::Approx(3.5009).margin(1e-3));
  }
}

TEST_CASE("deficit check refuses uncertified hypotheses") {
  // a sequence that never vanishes weakly against the constant member
  GridFunction shifted = GridFunction::on_circle_grid(
      std::vector<double>(512, 1.3), 3.0);
  std::vector<GridFunction> flat(16, shifted);
  GridFunction base = GridFunction::on_circle_grid(std::vector<double>(512, 1.0), 3.0);
  REQUIRE_THROWS_AS(brezis_lieb_check(flat, base), DomainError);

  auto [seq, u] = fixtures::bl_oscillation_fixture(3.0, 1.2, 1.0);
  std::vector<GridFunction> tiny(seq.begin(), seq.begin() + 4);
  REQUIRE_THROWS_AS(brezis_lieb_check(tiny, u), DomainError);
}

TEST_CASE("deficit csv lists one row per index") {
  auto [seq, u] = fixtures::bl_oscillation_fixture(4.0, 1.0, 0.8);
  BlReport rep = brezis_lieb_check(seq, u);
  std::string csv = bl_deficit_csv(rep);
  REQUIRE(csv.rfind("n,deficit\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  REQUIRE(rows == seq.size() + 1);
}
