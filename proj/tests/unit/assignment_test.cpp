#include <doctest.h>

#include <random>

#include "clr/assignment.hpp"
#include "fixtures.hpp"

using namespace clr;

TEST_CASE("one rounding step moves the split sink to its cheaper source") {
  const std::vector<Rational> demand = {4, 4};
  const std::vector<double> cost = {0, 1, 1, 0};
  const std::vector<Rational> flow = {4, 0, 2, 2};
  const auto r = round_vertex(demand, 2, cost, flow);
  CHECK(r.iterations == 1);
  CHECK(r.source[0] == 0);
  CHECK(r.source[1] == 1);
  CHECK(r.flow[3] == 4);
  CHECK(r.flow[2] == 0);
}

TEST_CASE("integral flow is returned unchanged") {
  const std::vector<Rational> flow = {4, 0, 0, 4};
  const auto r = round_vertex({4, 4}, 2, {0, 1, 1, 0}, flow);
  CHECK(r.iterations == 0);
  CHECK(r.flow == flow);
}

TEST_CASE("a star takes one step per extra source") {
  // one sink split over three sources, costs 3 > 2 > 1 per unit
  const auto r = round_vertex({Rational(6)}, 3, {3, 2, 1}, {2, 2, 2});
  CHECK(r.iterations == 2);
  CHECK(r.source[0] == 2);
  CHECK(r.flow[2] == 6);
}

TEST_CASE("contract violations") {
  // flow short of demand
  CHECK_THROWS_AS(round_vertex({4}, 2, {0, 0}, {1, 1}), ContractError);
  // cycle S0-w0-S1-w1-S0
  CHECK_THROWS_AS(round_vertex({2, 2}, 2, {0, 0, 0, 0}, {1, 1, 1, 1}),
                  ContractError);
}

TEST_CASE("LP over the open set") {
  const auto inst = gen::lemma3_family(5);
  const auto cl = cluster(preprocess(inst, mst_lower_bound(inst), 1));
  const auto lp = build_lp(inst, cl, {FacilityId{0}, FacilityId{1}});
  CHECK(lp.sources.size() == 2);
  for (std::size_t s = 0; s < cl.clusters.size(); ++s) {
    CHECK(lp.problem.cost(s, 0) == 0.0);
    CHECK(lp.problem.cost(s, 1) ==
          doctest::Approx(1.0 / to_double(cl.clusters[s].demand)));
  }
  CHECK_THROWS_AS(build_lp(inst, cl, {FacilityId{1}}), InfeasibleError);
  const auto sol = transport::solve(lp.problem);
  const auto a = round_assignment(inst, lp, sol);
  Rational total = 0;
  for (std::size_t w = 0; w < 2; ++w) {
    total += a.load[w];
    CHECK(a.load[w] <= inst.facilities()[w].capacity + cl.leaf_cap);
  }
  CHECK(total == 5);
}

TEST_CASE("rounding keeps cost and bounds the load increase") {
  std::mt19937_64 rng(99);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 200; ++trial) {
    transport::Problem p;
    const int ns = pick(1, 7), nf = pick(1, 5);
    Rational need = 0;
    for (int s = 0; s < ns; ++s) {
      p.demand.push_back(Rational(pick(1, 9), pick(1, 3)));
      need += p.demand.back();
    }
    for (int j = 0; j < nf; ++j) p.capacity.push_back(pick(1, 8));
    Rational have = 0;
    for (const auto& c : p.capacity) have += c;
    if (have < need) p.capacity[0] += ceil_div(need - have, 1);
    for (int k = 0; k < ns * nf; ++k) p.unit_cost.push_back(pick(0, 20));
    const auto sol = transport::solve(p);
    REQUIRE(sol.status == transport::Status::optimal);
    const auto r = round_vertex(p.demand, nf, p.unit_cost, sol.flow);
    Rational before = 0, after = 0, max_d = 0;
    for (std::size_t k = 0; k < r.flow.size(); ++k) {
      const auto c = std::int64_t(p.unit_cost[k]);
      before += sol.flow[k] * c;
      after += r.flow[k] * c;
    }
    CHECK(after <= before);
    for (const auto& d : p.demand) max_d = std::max(max_d, d);
    for (int j = 0; j < nf; ++j) {
      Rational l0 = 0, l1 = 0;
      for (int s = 0; s < ns; ++s) {
        l0 += sol.flow[s * nf + j];
        l1 += r.flow[s * nf + j];
      }
      CHECK(l1 - l0 <= max_d);
    }
    for (int s = 0; s < ns; ++s) {
      CHECK(r.flow[s * nf + r.source[s]] == p.demand[s]);
    }
  }
}

TEST_CASE("IP packing") {
  IpProblem p;
  p.demand = {4, 4};
  p.capacity = {4, 4};
  p.opening_cost = {0, 0};
  p.route_cost = {0, 1, 1, 0};
  auto r = solve_ip(p);
  CHECK(r.assignment.gamma == 1);
  CHECK(r.optimal);
  CHECK(r.assignment.facility[0] == FacilityId{0});
  CHECK(r.assignment.facility[1] == FacilityId{1});
  CHECK(r.objective == 0.0);

  p.capacity = {3, 3};
  r = solve_ip(p);
  CHECK(r.assignment.gamma == Rational(4, 3));
  CHECK(r.assignment.source == AssignmentSource::ip_gamma);
  CHECK(r.assignment.facility[0] != r.assignment.facility[1]);

  IpProblem none;
  none.demand = {1};
  CHECK_THROWS_AS(solve_ip(none), InfeasibleError);
}

TEST_CASE("IP on the hard family opens both facilities") {
  const auto inst = gen::lemma3_family(5);
  const auto cl = cluster(preprocess(inst, mst_lower_bound(inst), 1));
  const auto r = solve_ip(build_ip(inst, cl));
  CHECK(r.assignment.gamma == 1);
  CHECK(r.open.size() == 2);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.assignment.load[0] <= 4);
  CHECK(r.assignment.load[1] <= 4);
}
