#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "clr/routing.hpp"
#include "fixtures.hpp"

using namespace clr;

namespace {

double perm_optimum(const Instance& inst, const Tour& t) {
  auto seq = t.sequence;
  std::sort(seq.begin(), seq.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    Tour u = t;
    u.sequence = seq;
    best = std::min(best, tour_cost(inst, u));
  } while (std::next_permutation(seq.begin(), seq.end()));
  return best;
}

}  // namespace

TEST_CASE("collinear cluster gives the doubled path") {
  const auto inst = testing::two_client_line();
  const auto cl = cluster(preprocess(inst, mst_lower_bound(inst), 1));
  const auto t = build_tour(inst, cl, 0, FacilityId{0});
  REQUIRE(t.sequence.size() == 2);
  CHECK(t.sequence[0] == ClientId{0});
  CHECK(t.sequence[1] == ClientId{1});
  CHECK(tour_cost(inst, t) == doctest::Approx(4.0));
  CHECK(tour_bound(inst, cl, 0, FacilityId{0}) == doctest::Approx(4.0));
  CHECK(t.load() == 7);
}

TEST_CASE("out and back") {
  const auto inst = Instance::euclidean("one", {{Rational(1), 0.0, 0, 0}},
                                        {{Rational(1), 0, 2}}, Rational(1));
  const auto cl = cluster(preprocess(inst, mst_lower_bound(inst), 1));
  CHECK(tour_cost(inst, build_tour(inst, cl, 0, FacilityId{0})) ==
        doctest::Approx(4.0));
}

TEST_CASE("split leaves merge into one visit") {
  const auto inst = Instance::euclidean("heavy", {{Rational(9), 0.0, 0, 0}},
                                        {{Rational(3), 1, 0}}, Rational(3));
  const auto cl = cluster(preprocess(inst, mst_lower_bound(inst),
                                     Rational(1, 2)));
  Rational served = 0;
  for (std::size_t s = 0; s < cl.clusters.size(); ++s) {
    const auto t = build_tour(inst, cl, s, FacilityId{0});
    CHECK(t.sequence.size() <= 1);
    served += t.load();
  }
  CHECK(served == 3);
}

TEST_CASE("crossing square tour is uncrossed") {
  const auto inst = Instance::euclidean(
      "square", {{Rational(3), 0.0, 0, 0}},
      {{Rational(1), 1, 1}, {Rational(1), 1, 0}, {Rational(1), 0, 1}},
      Rational(3));
  Tour t{FacilityId{0}, {ClientId{0}, ClientId{1}, ClientId{2}}, {1, 1, 1}};
  CHECK(tour_cost(inst, t) == doctest::Approx(2 + 2 * std::sqrt(2.0)));
  const auto better = improve_tour(inst, t);
  CHECK(tour_cost(inst, better) == doctest::Approx(4.0));
  CHECK(better.facility == t.facility);
  CHECK(better.load() == 3);
}

TEST_CASE("improvement never hurts and usually reaches the optimum") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(0, 50);
  int optimal = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ClientData> clients;
    for (int i = 0; i < 8; ++i) clients.push_back({Rational(1), coord(rng), coord(rng)});
    const auto inst = Instance::euclidean(
        "r", {{Rational(8), 0.0, coord(rng), coord(rng)}}, std::move(clients),
        Rational(8));
    Tour t{FacilityId{0}, {}, {}};
    for (std::uint32_t i = 0; i < 8; ++i) {
      t.sequence.push_back(ClientId{i});
      t.service.push_back(1);
    }
    std::shuffle(t.sequence.begin(), t.sequence.end(), rng);
    const auto u = improve_tour(inst, t);
    CHECK(tour_cost(inst, u) <= tour_cost(inst, t) + 1e-9);
    auto a = t.sequence, b = u.sequence;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    if (tour_cost(inst, u) <= perm_optimum(inst, t) + 1e-9) ++optimal;
  }
  CHECK(optimal >= 36);
}

TEST_CASE("tours respect the doubled tree bound") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto inst = testing::random_tiny(rng, 8);
    for (Rational eps : {Rational(1, 2), Rational(1)}) {
      const auto cl = cluster(preprocess(inst, mst_lower_bound(inst), eps));
      for (std::size_t s = 0; s < cl.clusters.size(); ++s) {
        for (std::uint32_t w = 0; w < inst.num_facilities(); ++w) {
          const auto t = build_tour(inst, cl, s, FacilityId{w});
          CHECK(tour_cost(inst, t) <=
                tour_bound(inst, cl, s, FacilityId{w}) + 1e-6);
          CHECK(t.load() == cl.clusters[s].demand);
        }
      }
    }
  }
}
