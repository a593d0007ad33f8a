#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "polarconv/polarconv.hpp"

using namespace polarconv;

namespace {

SequenceOracle two_cluster_exact(int horizon) {
  auto s = SpaceDescriptor::euclidean(2);
  return SequenceOracle::from_generator(s, horizon, [](int n) {
    return n % 2 == 0 ? make_vec({0.5, 0.0}) : make_vec({-0.5, 0.0});
  });
}

SequenceOracle two_cluster_decay(int horizon) {
  auto s = SpaceDescriptor::euclidean(2);
  return SequenceOracle::from_generator(s, horizon, [](int n) {
    double r = std::pow(0.9, n);
    if (n % 2 == 0) return make_vec({0.5 + 0.3 * r, 0.1 * r});
    return make_vec({-0.5, -0.2 * r});
  });
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> super(b.begin(), b.end());
  return std::all_of(a.begin(), a.end(), [&](int i) { return super.count(i) > 0; });
}

} // namespace

TEST_CASE("extraction isolates one cluster and certifies strong convergence") {
  auto oracle = two_cluster_exact(128);
  ExtractionTrace t = extract_strong_delta(oracle);

  // stage log: first entry covers the whole sequence, later entries nest
  REQUIRE(t.stages.size() >= 2);
  REQUIRE(t.stages.front().action == "initial");
  REQUIRE(static_cast<int>(t.stages.front().indices.size()) == oracle.horizon());
  for (std::size_t k = 1; k < t.stages.size(); ++k) {
    INFO("stage " << k << " action " << t.stages[k].action);
    REQUIRE(subset_of(t.stages[k].indices, t.stages[k - 1].indices));
    REQUIRE(t.stages[k].radius <= t.stages[k - 1].radius + 1e-12);
  }

  // the whole sequence has radius 1/2; one cluster has radius 0
  REQUIRE(t.stages.front().radius == Catch::Approx(0.5).margin(1e-6));
  REQUIRE(t.final_center.radius <= 1e-9);
  REQUIRE(t.final_indices.size() >= 16);
  REQUIRE_NOTHROW(t.final_indices.validate(oracle.horizon()));

  // epsilon ladder is the halving schedule
  REQUIRE(t.epsilons.size() == 6);
  for (std::size_t k = 0; k < t.epsilons.size(); ++k)
    REQUIRE(t.epsilons[k] == Catch::Approx(0.05 * std::ldexp(1.0, -static_cast<int>(k))));

  REQUIRE(t.strong_verdict.certified());
  // Euclidean hosts carry the stronger flag, so the trace also runs polar
  REQUIRE(t.polar_verdict.has_value());
  REQUIRE(t.polar_verdict->status != VerdictStatus::falsified);

  // extracted indices stick to one parity class
  bool all_even = std::all_of(t.final_indices.indices.begin(),
                              t.final_indices.indices.end(),
                              [](int i) { return i % 2 == 0; });
  bool all_odd = std::all_of(t.final_indices.indices.begin(),
                             t.final_indices.indices.end(),
                             [](int i) { return i % 2 == 1; });
  REQUIRE((all_even || all_odd));
}

TEST_CASE("extraction trace is deterministic") {
  auto oracle = two_cluster_decay(128);
  ExtractionTrace a = extract_strong_delta(oracle);
  ExtractionTrace b = extract_strong_delta(oracle);
  REQUIRE(a.final_indices.indices == b.final_indices.indices);
  REQUIRE(a.final_center.radius == b.final_center.radius);
  REQUIRE(a.stages.size() == b.stages.size());
  for (std::size_t k = 0; k < a.stages.size(); ++k) {
    REQUIRE(a.stages[k].indices == b.stages[k].indices);
    REQUIRE(a.stages[k].action == b.stages[k].action);
  }
}

TEST_CASE("extraction on a decaying two-cluster stays sound") {
  auto oracle = two_cluster_decay(128);
  ExtractionTrace t = extract_strong_delta(oracle);
  REQUIRE(t.final_center.radius < 0.45);
  REQUIRE(t.strong_verdict.status != VerdictStatus::falsified);
  REQUIRE(t.final_tolerance >= 0.0);
  for (std::size_t k = 1; k < t.stages.size(); ++k)
    REQUIRE(subset_of(t.stages[k].indices, t.stages[k - 1].indices));
}

TEST_CASE("minimum subsequence length is honored") {
  auto oracle = two_cluster_exact(64);
  ExtractionConfig cfg;
  cfg.min_length = 60; // no admissible strict subsequence exists
  ExtractionTrace t = extract_strong_delta(oracle, cfg);
  REQUIRE(static_cast<int>(t.final_indices.size()) == 64);
  for (const auto& st : t.stages) REQUIRE(st.action != "suffix-1/4");
}

TEST_CASE("extraction refuses short sequences and bad schedules") {
  auto oracle = two_cluster_exact(32);
  REQUIRE_THROWS_AS(extract_strong_delta(oracle), InsufficientDataError);

  auto ok = two_cluster_exact(128);
  ExtractionConfig cfg;
  cfg.schedule.eps0 = 0.0;
  REQUIRE_THROWS_AS(extract_strong_delta(ok, cfg), ConfigError);
  cfg.schedule.eps0 = 0.05;
  cfg.schedule.stages = 0;
  REQUIRE_THROWS_AS(extract_strong_delta(ok, cfg), ConfigError);
}

TEST_CASE("no polar verdict is attached on hosts without the stronger flag") {
  auto s = SpaceDescriptor::sup_vec(4);
  auto oracle = SequenceOracle::from_generator(s, 128, [](int n) {
    return n % 2 == 0 ? make_vec({0.5, 0.0, 0.0, 0.0})
                      : make_vec({-0.5, 0.0, 0.0, 0.0});
  });
  ExtractionTrace t = extract_strong_delta(oracle);
  REQUIRE_FALSE(t.polar_verdict.has_value());
  REQUIRE(t.strong_verdict.certified());
}

TEST_CASE("diagonal selection walks nested index sets") {
  std::vector<std::vector<int>> sets = {
      {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {2, 4, 6, 8}, {4, 8}};
  SubsequenceSpec d = diagonal_select(sets, {0, 0, 0});
  REQUIRE(d.indices == std::vector<int>{0, 2, 4});
  for (std::size_t k = 0; k < sets.size(); ++k)
    REQUIRE(std::binary_search(sets[k].begin(), sets[k].end(), d.indices[k]));

  // drops skip leading entries before both the nesting test and selection:
  // without the drop, the leading 0 of the second set would break nesting
  std::vector<std::vector<int>> dropped = {{5, 6, 7}, {0, 5, 6}};
  REQUIRE_THROWS_AS(diagonal_select(dropped, {0, 0}), DomainError);
  SubsequenceSpec d2 = diagonal_select(dropped, {0, 1});
  REQUIRE(d2.indices == std::vector<int>{5, 6});
}

TEST_CASE("diagonal selection rejects malformed inputs") {
  REQUIRE_THROWS_AS(diagonal_select({}, {}), DomainError);
  REQUIRE_THROWS_AS(diagonal_select({{0, 1}}, {0, 0}), DomainError);
  REQUIRE_THROWS_AS(diagonal_select({{0, 1, 2}, {3}}, {0, 0}), DomainError);
  REQUIRE_THROWS_AS(diagonal_select({{2, 1}}, {0}), DomainError);
  // exhausted: the second pick cannot exceed the first
  REQUIRE_THROWS_AS(diagonal_select({{3, 5}, {3}}, {0, 0}), DomainError);
}
