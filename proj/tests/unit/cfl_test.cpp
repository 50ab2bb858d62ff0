#include <doctest.h>

#include <algorithm>
#include <random>

#include "clr/cfl.hpp"
#include "fixtures.hpp"

using namespace clr;
using namespace clr::cfl;

namespace {

// Cheapest open set by enumerating all subsets.
double brute_cfl(const CflInstance& p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = p.num_facilities();
  for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
    std::vector<FacilityId> open;
    for (std::size_t w = 0; w < m; ++w) {
      if (mask >> w & 1) open.push_back(FacilityId{std::uint32_t(w)});
    }
    try {
      best = std::min(best, evaluate_open_set(p, open).cost());
    } catch (const InfeasibleError&) {
    }
  }
  return best;
}

}  // namespace

TEST_CASE("raw construction on the hard family") {
  const auto p = build_raw(gen::lemma3_family(5));
  CHECK(p.num_points() == 5);
  CHECK(p.num_facilities() == 2);
  CHECK(p.cost(0, 1) == doctest::Approx(0.5));
  CHECK(p.cost(0, 0) == 0.0);
  const auto ls = local_search(p);
  CHECK(ls.open.size() == 2);
  CHECK(ls.cost() == doctest::Approx(0.5));
  const auto ex = exact(p);
  CHECK(ex.exact);
  CHECK(ex.cost() == doctest::Approx(0.5));
}

TEST_CASE("single facility forces the assignment") {
  const auto inst = testing::two_client_line();
  const auto p = build_raw(inst);
  CHECK(exact(p).cost() == doctest::Approx(7.2));
  CHECK(local_search(p).cost() == doctest::Approx(7.2));
  const auto cl =
      cluster(preprocess(inst, mst_lower_bound(inst), Rational(1)));
  const auto q = build_clustered(inst, cl, cl.f1);
  CHECK(q.num_points() == 1);
  CHECK(q.demand[0] == 7);
  CHECK(q.opening_cost[0] == 0.0);
  CHECK(exact(q).cost() == 0.0);
}

TEST_CASE("local search closes a redundant facility") {
  CflInstance p;
  p.demand = {3, 3};
  p.capacity = {10, 10};
  p.opening_cost = {10, 10};
  p.unit_cost = {1, 1, 1, 1};
  const auto sol = local_search(p);
  CHECK(sol.open.size() == 1);
  CHECK(sol.cost() == doctest::Approx(16.0));
}

TEST_CASE("size cap and infeasibility") {
  const auto p = build_raw(gen::lemma3_family(5));
  CHECK_THROWS_AS(exact(p, 3), LimitError);
  CflInstance q;
  q.demand = {5};
  q.capacity = {4};
  q.opening_cost = {0};
  q.unit_cost = {1};
  CHECK_THROWS_AS(local_search(q), InfeasibleError);
  CHECK_THROWS_AS(evaluate_open_set(q, {FacilityId{0}}), InfeasibleError);
}

TEST_CASE("exact search matches subset enumeration") {
  std::mt19937_64 rng(17);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 60; ++trial) {
    CflInstance p;
    const int n = pick(1, 6), m = pick(1, 5);
    int need = 0, have = 0;
    for (int i = 0; i < n; ++i) {
      p.demand.push_back(pick(1, 5));
      need += int(p.demand.back().numerator());
    }
    for (int w = 0; w < m; ++w) {
      p.capacity.push_back(pick(2, 10));
      have += int(p.capacity.back().numerator());
      p.opening_cost.push_back(pick(0, 30));
    }
    if (have < need) p.capacity[0] += need - have;
    for (int k = 0; k < n * m; ++k) p.unit_cost.push_back(pick(0, 8));
    const double best = brute_cfl(p);
    const auto ex = exact(p);
    CHECK(ex.exact);
    CHECK(ex.cost() == doctest::Approx(best));
    CHECK(local_search(p, {}, trial).cost() >= best - 1e-9);
    CHECK(std::is_sorted(ex.open.begin(), ex.open.end()));
  }
}
