#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "polarconv/polarconv.hpp"

using namespace polarconv;

namespace {

PointRepr random_vec(Rng& rng, int dim, double scale) {
  std::vector<double> c(static_cast<std::size_t>(dim));
  for (double& v : c) v = rng.uniform(-scale, scale);
  return make_vec(std::move(c));
}

PointRepr random_point(Rng& rng, const SpaceDescriptor& s) {
  switch (s.kind) {
    case SpaceKind::discrete: {
      std::vector<int> idx;
      for (int i = 0; i < 8; ++i)
        if (rng.uniform01() < 0.4) idx.push_back(i);
      return make_index_set(std::move(idx), 8);
    }
    case SpaceKind::dirichlet: {
      auto dyadic = [&]() {
        return Rational(static_cast<std::int64_t>(rng.index(257)) - 128, 64);
      };
      return make_quad(dyadic(), dyadic());
    }
    case SpaceKind::clamped_ball:
      return project_into_space(s, random_vec(rng, s.dim, 1.5 * s.ball_radius));
    default:
      return random_vec(rng, s.dim, 2.0);
  }
}

} // namespace

TEST_CASE("metric axioms hold on sampled triples in every space kind") {
  std::vector<SpaceDescriptor> spaces = {
      SpaceDescriptor::euclidean(3),
      SpaceDescriptor::lp_vec(4, 1.5),
      SpaceDescriptor::lp_vec(3, 3.0),
      SpaceDescriptor::lp_vec(2, 4.0),
      SpaceDescriptor::one_norm_vec(4),
      SpaceDescriptor::sup_vec(4),
      SpaceDescriptor::lp_grid(std::vector<double>(8, 0.7853981633974483), 2.5),
      SpaceDescriptor::discrete(),
      SpaceDescriptor::hybrid_norm(2),
      SpaceDescriptor::dirichlet(),
      SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 1.5),
  };

  Rng rng(1234);
  int triples = 0;
  for (const auto& s : spaces) {
    for (int t = 0; t < 100; ++t) {
      PointRepr x = random_point(rng, s);
      PointRepr y = random_point(rng, s);
      PointRepr z = random_point(rng, s);
      double dxy = distance(s, x, y);
      double dyx = distance(s, y, x);
      double dxz = distance(s, x, z);
      double dzy = distance(s, z, y);

      REQUIRE(dxy >= 0.0);
      REQUIRE(dxy == dyx); // symmetry must be exact, not approximate
      REQUIRE(distance(s, x, x) == 0.0);
      if (points_identical(x, y)) REQUIRE(dxy == 0.0);
      REQUIRE(dxy <= dxz + dzy + 1e-12 * (1.0 + dxz + dzy));
      ++triples;
    }
  }
  REQUIRE(triples == 1100);
}

TEST_CASE("identity of indiscernibles on vector kinds") {
  Rng rng(77);
  auto s = SpaceDescriptor::lp_vec(3, 3.0);
  for (int t = 0; t < 50; ++t) {
    PointRepr x = random_point(rng, s);
    PointRepr y = random_point(rng, s);
    if (distance(s, x, y) == 0.0) {
      REQUIRE(point_coords(x) == point_coords(y));
    } else {
      REQUIRE_FALSE(point_coords(x) == point_coords(y));
    }
  }
}

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(1, 3), b(1, 6);
  REQUIRE(a + b == Rational(1, 2));
  REQUIRE(a - b == Rational(1, 6));
  REQUIRE(a * b == Rational(1, 18));
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(-3, -6) == Rational(1, 2));
  REQUIRE(Rational(1, 3) < Rational(34, 100));
  REQUIRE((Rational(7, 8) - Rational(7, 8)).is_zero());
}

TEST_CASE("quadratic-field comparisons are exact") {
  // sqrt(2) against nearby rationals: 1.414... < 1.5, > 1.41
  QuadReal root2(Rational(0), Rational(1));
  REQUIRE(root2 < QuadReal(Rational(3, 2), Rational(0)));
  REQUIRE(QuadReal(Rational(141, 100), Rational(0)) < root2);
  // 99/70 is a continued-fraction convergent just above sqrt(2)
  REQUIRE(root2 < QuadReal(Rational(99, 70), Rational(0)));
  REQUIRE(QuadReal(Rational(140, 99), Rational(0)) < root2);
  REQUIRE(root2.to_double() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("dirichlet metric distinguishes rational and irrational gaps exactly") {
  auto s = SpaceDescriptor::dirichlet();
  QuadPoint origin{Rational(0), Rational(0)};
  QuadPoint rational_gap{Rational(1, 4), Rational(0)};
  QuadPoint irrational_gap{Rational(0), Rational(1, 4)};

  REQUIRE(distance(s, make_quad(origin.a, origin.b), make_quad(origin.a, origin.b)) ==
          0.0);
  // rational nonzero difference: |x-y| + 2
  REQUIRE(distance(s, make_quad(origin.a, origin.b),
                   make_quad(rational_gap.a, rational_gap.b)) ==
          Catch::Approx(0.25 + 2.0).margin(1e-15));
  // irrational difference: |x-y| + 1
  REQUIRE(distance(s, make_quad(origin.a, origin.b),
                   make_quad(irrational_gap.a, irrational_gap.b)) ==
          Catch::Approx(0.25 * std::sqrt(2.0) + 1.0).margin(1e-12));

  QuadReal d = dirichlet_exact_distance(origin, irrational_gap);
  REQUIRE_FALSE(d.is_rational());
}

TEST_CASE("menger midpoints exist in vector kinds and satisfy the identity") {
  Rng rng(31);
  for (auto s : {SpaceDescriptor::euclidean(3), SpaceDescriptor::lp_vec(3, 3.0),
                 SpaceDescriptor::one_norm_vec(3), SpaceDescriptor::sup_vec(3)}) {
    for (int t = 0; t < 25; ++t) {
      PointRepr x = random_point(rng, s);
      PointRepr y = random_point(rng, s);
      auto m = midpoint(s, x, y);
      REQUIRE(m.has_value());
      double lhs = distance(s, x, *m) + distance(s, *m, y);
      REQUIRE(lhs == Catch::Approx(distance(s, x, y)).margin(1e-12));
    }
  }
  auto d = SpaceDescriptor::discrete();
  PointRepr u = make_index_set({0}, 8);
  PointRepr v = make_index_set({1}, 8);
  REQUIRE_FALSE(midpoint(d, u, v).has_value());
}

TEST_CASE("clamped ball projects outside points onto the sphere") {
  auto s = SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 2.0);
  PointRepr outside = make_vec({3.0, 4.0}); // norm 5
  PointRepr proj = project_into_space(s, outside);
  REQUIRE(vector_norm(s, proj) == Catch::Approx(2.0).margin(1e-12));
  PointRepr inside = make_vec({0.5, -1.0});
  REQUIRE(points_identical(project_into_space(s, inside), inside));
  REQUIRE(distance(s, inside, proj) ==
          Catch::Approx(distance(*s.base, inside, proj)).margin(1e-15));
}

TEST_CASE("hybrid metric adds the unit jump off the diagonal") {
  auto s = SpaceDescriptor::hybrid_norm(2);
  PointRepr x = make_vec({0.0, 0.0});
  PointRepr y = make_vec({0.3, 0.4});
  REQUIRE(distance(s, x, y) == Catch::Approx(1.5).margin(1e-12));
  REQUIRE(distance(s, x, x) == 0.0);
  // no points at distance strictly between 0 and 1
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    PointRepr a = random_point(rng, s);
    PointRepr b = random_point(rng, s);
    double d = distance(s, a, b);
    REQUIRE((d == 0.0 || d >= 1.0));
  }
}

TEST_CASE("discrete space distance is the indicator of inequality") {
  auto s = SpaceDescriptor::discrete();
  PointRepr a = make_index_set({0, 3, 5}, 8);
  PointRepr b = make_index_set({0, 3, 5}, 8);
  PointRepr c = make_index_set({0, 3}, 8);
  REQUIRE(distance(s, a, b) == 0.0);
  REQUIRE(distance(s, a, c) == 1.0);
  REQUIRE_THROWS_AS(zero_point(s), DomainError);
}

TEST_CASE("grid function csv round trip preserves values") {
  GridFunction u = GridFunction::on_circle_grid({1.0, -0.5, 0.25, 2.0}, 3.0);
  GridFunction v = GridFunction::from_csv_string(u.to_csv(), 3.0);
  REQUIRE(v.values == u.values);
  REQUIRE(v.weights == u.weights);
  REQUIRE(v.norm() == Catch::Approx(u.norm()).epsilon(1e-15));
}

TEST_CASE("space factories reject invalid parameters") {
  REQUIRE_THROWS_AS(SpaceDescriptor::lp_vec(3, 1.0), DomainError);
  REQUIRE_THROWS_AS(SpaceDescriptor::lp_vec(0, 2.0), DomainError);
  REQUIRE_THROWS_AS(SpaceDescriptor::euclidean(0), DomainError);
  REQUIRE_THROWS_AS(
      SpaceDescriptor::clamped_ball(SpaceDescriptor::euclidean(2), 0.0), DomainError);
  REQUIRE_THROWS_AS(
      SpaceDescriptor::clamped_ball(SpaceDescriptor::discrete(), 1.0), DomainError);
  REQUIRE_THROWS_AS(SpaceDescriptor::lp_grid({1.0, -1.0}, 2.0), DomainError);
}
