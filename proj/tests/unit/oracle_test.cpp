#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "clr/oracle.hpp"
#include "fixtures.hpp"

using namespace clr;

namespace {

// Independent enumeration for unit demands: assign every client a
// (facility, vehicle slot) label, then price each vehicle with the best
// permutation of its clients.
double enumerate_opt(const Instance& inst) {
  const std::size_t n = inst.num_clients(), m = inst.num_facilities();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> label(n, 0);
  const std::size_t labels = m * n;
  auto tour = [&](std::size_t w, std::vector<std::uint32_t> vs) {
    double b = std::numeric_limits<double>::infinity();
    std::sort(vs.begin(), vs.end());
    do {
      Tour t{FacilityId{std::uint32_t(w)}, {}, {}};
      for (auto v : vs) t.sequence.push_back(ClientId{v});
      b = std::min(b, tour_cost(inst, t));
    } while (std::next_permutation(vs.begin(), vs.end()));
    return b;
  };
  for (;;) {
    std::vector<std::vector<std::uint32_t>> groups(labels);
    for (std::uint32_t v = 0; v < n; ++v) groups[label[v]].push_back(v);
    std::vector<Rational> load(m, Rational(0));
    bool ok = true;
    double cost = 0.0;
    std::vector<char> open(m, 0);
    for (std::size_t g = 0; g < labels && ok; ++g) {
      if (groups[g].empty()) continue;
      const std::size_t w = g / n;
      Rational d = 0;
      for (auto v : groups[g]) d += inst.clients()[v].demand;
      if (d > inst.vehicle_capacity()) ok = false;
      load[w] += d;
      open[w] = 1;
      cost += tour(w, groups[g]);
    }
    for (std::size_t w = 0; w < m && ok; ++w) {
      if (load[w] > inst.facilities()[w].capacity) ok = false;
      if (open[w]) cost += inst.facilities()[w].opening_cost;
    }
    if (ok) best = std::min(best, cost);
    std::size_t i = 0;
    while (i < n && ++label[i] == labels) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

Instance unit_tiny(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int n = pick(1, 5), m = pick(1, 2);
  std::vector<ClientData> cs;
  for (int i = 0; i < n; ++i) {
    cs.push_back({Rational(1), double(pick(0, 10)), double(pick(0, 10))});
  }
  std::vector<FacilityData> fs;
  for (int j = 0; j < m; ++j) {
    fs.push_back({Rational(j == 0 ? n : pick(1, n)), double(pick(0, 10)),
                  double(pick(0, 10)), double(pick(0, 10))});
  }
  return Instance::euclidean("u", fs, cs, Rational(pick(1, 3)));
}

}  // namespace

TEST_CASE("known optima") {
  for (std::size_t n = 2; n <= 8; ++n) {
    CHECK(brute_force_opt(gen::lemma3_family(n)).opt == doctest::Approx(2.0));
  }
  const auto line = brute_force_opt(testing::two_client_line());
  CHECK(line.opt == doctest::Approx(9.0));
  CHECK(evaluate(testing::two_client_line(), line.solution, 0).feasible_strict);
  const auto one = Instance::euclidean("one", {{Rational(2), 7.0, 1, 1}},
                                       {{Rational(2), 1, 1}}, Rational(2));
  CHECK(brute_force_opt(one).opt == doctest::Approx(7.0));
}

TEST_CASE("oracle agrees with label enumeration") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 80; ++i) {
    const auto inst = unit_tiny(rng);
    const auto r = brute_force_opt(inst);
    CHECK(r.opt == doctest::Approx(enumerate_opt(inst)));
    const auto ev = evaluate(inst, r.solution, 0);
    CHECK(ev.feasible_strict);
    CHECK(ev.total_cost == doctest::Approx(r.opt));
  }
}

TEST_CASE("fractional demand units are handled") {
  // two clients of demand 3 next to each other, vehicles of 4
  const auto inst = Instance::euclidean(
      "split", {{Rational(6), 0.0, 0, 0}},
      {{Rational(3), 10, 0}, {Rational(3), 10, 1}}, Rational(4));
  const auto r = brute_force_opt(inst);
  CHECK(r.opt == doctest::Approx(20.0 + 2 * std::sqrt(101.0)));
  CHECK(evaluate(inst, r.solution, 0).feasible_strict);
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(brute_force_opt(gen::lemma3_family(9)), LimitError);
  const auto no_room = Instance::euclidean(
      "nr", {{Rational(1), 0.0, 0, 0}}, {{Rational(2), 1, 1}}, Rational(2));
  CHECK_THROWS_AS(brute_force_opt(no_room), InfeasibleError);
}
