#pragma once

#include <random>

#include "clr/generator.hpp"
#include "clr/model.hpp"

namespace clr::testing {

// One facility at the origin (f = 5, u = 10), clients a = (1,0) with
// demand 3 and b = (2,0) with demand 4, vehicle capacity 10.
inline Instance two_client_line() {
  return Instance::euclidean("line", {{Rational(10), 5.0, 0.0, 0.0}},
                             {{Rational(3), 1.0, 0.0}, {Rational(4), 2.0, 0.0}},
                             Rational(10));
}

// Small random instance: integer coordinates in [0,20], unit demands,
// enough total capacity.
inline Instance random_tiny(std::mt19937_64& rng, int max_clients = 7) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int n = pick(1, max_clients);
  const int m = pick(1, 3);
  std::vector<ClientData> clients;
  for (int i = 0; i < n; ++i) {
    clients.push_back({Rational(pick(1, 2)), double(pick(0, 20)),
                       double(pick(0, 20))});
  }
  std::vector<FacilityData> facilities;
  Rational need = 0;
  for (const auto& c : clients) need += c.demand;
  Rational have = 0;
  for (int j = 0; j < m; ++j) {
    facilities.push_back({Rational(pick(2, 2 * n)), double(pick(0, 25)),
                          double(pick(0, 20)), double(pick(0, 20))});
    have += facilities.back().capacity;
  }
  if (have < need) facilities.back().capacity += need - have;
  return Instance::euclidean("tiny", std::move(facilities), std::move(clients),
                             Rational(pick(2, 4)));
}

}  // namespace clr::testing
