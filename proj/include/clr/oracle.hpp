#pragma once

#include "clr/model.hpp"

namespace clr {

struct OracleCaps {
  std::size_t max_clients = 8;
  std::size_t max_facilities = 3;
  std::size_t max_states = 20'000;  // Π (units(v) + 1)
};

struct ExactResult {
  double opt = 0.0;
  Solution solution;
  std::size_t states = 0;
  // Demands were not integral, so every client was kept on one tour; the
  // value is then only an upper bound on the optimum.
  bool upper_bound_only = false;
};

// Exact optimum by dynamic programming over the vector of undelivered
// demand units: per facility the cheapest way to deliver a unit vector by
// capacity-feasible tours (each tour priced by an exact TSP), then the best
// split of all units among facilities within their capacities.
// Throws LimitError above the caps, InfeasibleError when nothing fits.
ExactResult brute_force_opt(const Instance& inst, const OracleCaps& caps = {});

}  // namespace clr
