#pragma once

#include <vector>

#include "clr/budget.hpp"
#include "clr/clustering.hpp"
#include "clr/model.hpp"

// Capacitated facility location subproblems: linear connection costs,
// splittable assignments, capacitated facilities with opening costs.
namespace clr::cfl {

enum class Mode { raw, clustered };

struct CflInstance {
  Mode mode = Mode::raw;
  std::vector<Rational> demand;  // per demand point (client or cluster)
  std::vector<Rational> capacity;
  std::vector<double> opening_cost;
  std::vector<double> unit_cost;  // points × facilities

  std::size_t num_points() const { return demand.size(); }
  std::size_t num_facilities() const { return capacity.size(); }
  double cost(std::size_t point, std::size_t w) const {
    return unit_cost[point * capacity.size() + w];
  }
};

struct CflSolution {
  std::vector<FacilityId> open;     // F2, sorted
  std::vector<Rational> assignment;  // points × facilities
  double opening_cost = 0.0;
  double connection_cost = 0.0;
  bool exact = false;
  bool interrupted = false;

  double cost() const { return opening_cost + connection_cost; }
  const Rational& at(std::size_t point, std::size_t w,
                     std::size_t num_facilities) const {
    return assignment[point * num_facilities + w];
  }
};

// Same clients and facilities, connection cost 2c/ū. Facilities listed in
// `free_facilities` get opening cost 0.
CflInstance build_raw(const Instance& inst,
                      const std::vector<FacilityId>& free_facilities = {});

// One demand point per cluster with demand d(S) and connection cost
// min over V(T_S) of 2c/ū (not necessarily metric).
CflInstance build_clustered(const Instance& inst, const Clustering& clustering,
                            const std::vector<FacilityId>& free_facilities = {});

// Cost of serving every point with the given facilities open, with the
// optimal fractional assignment. Throws InfeasibleError if capacity lacks.
CflSolution evaluate_open_set(const CflInstance& p,
                              const std::vector<FacilityId>& open);

// Open/close/swap local search; every neighbor is priced with an optimal
// transportation assignment. Throws InfeasibleError if Σd > Σu.
CflSolution local_search(const CflInstance& p, const Budget& budget = {},
                         std::uint64_t seed = 0);

// Branch-and-bound on the open indicators with transportation relaxations.
// Throws LimitError when points × facilities exceeds size_cap. On budget
// exhaustion returns the incumbent with exact = false, interrupted = true.
CflSolution exact(const CflInstance& p, std::size_t size_cap = 50'000,
                  const Budget& budget = {});

}  // namespace clr::cfl
