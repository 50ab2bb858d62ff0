#pragma once

#include <vector>

#include "clr/budget.hpp"
#include "clr/clustering.hpp"
#include "clr/transport.hpp"

namespace clr {

enum class AssignmentSource { lp_rounded, ip, ip_gamma };

// Every cluster served wholly by one facility.
struct ClusterAssignment {
  std::vector<FacilityId> facility;  // w_S per cluster
  std::vector<Rational> load;        // per facility of the instance
  AssignmentSource source = AssignmentSource::lp_rounded;
  Rational gamma = 1;
};

// LP over clusters × F′. Source j of the transportation problem is
// facility sources[j]; costs are c(S,w)/d(S) per unit of demand.
struct AssignmentLp {
  transport::Problem problem;
  std::vector<FacilityId> sources;
  std::vector<double> cluster_cost;  // c(S,w), clusters × sources
};

// Throws InfeasibleError when the open facilities lack capacity.
AssignmentLp build_lp(const Instance& inst, const Clustering& clustering,
                      const std::vector<FacilityId>& open);

struct RoundingResult {
  std::vector<std::size_t> source;  // chosen source per sink
  std::vector<Rational> flow;       // final x′, sinks × sources
  std::size_t iterations = 0;
};

// Path rounding of a transportation vertex. Repeatedly takes two leaf
// sources of the fractional support forest joined by a path and shifts
// demand towards the cheaper alternation of the path until every sink is
// integral. Throws ContractError if the support has a cycle or the flow
// does not meet the demands.
RoundingResult round_vertex(const std::vector<Rational>& demand,
                            std::size_t num_sources,
                            const std::vector<double>& unit_cost,
                            std::vector<Rational> flow);

// Rounds an optimal basic solution of build_lp's problem.
ClusterAssignment round_assignment(const Instance& inst,
                                   const AssignmentLp& lp,
                                   const transport::Solution& sol,
                                   std::size_t* iterations = nullptr);

// Cluster-to-facility problem with opening decisions: every cluster goes
// to one open facility, loads at most γ·u(w).
struct IpProblem {
  std::vector<Rational> demand;       // d(S)
  std::vector<Rational> capacity;     // u(w)
  std::vector<double> opening_cost;   // f(w)
  std::vector<double> route_cost;     // 2c(S,w), clusters × facilities

  std::size_t num_clusters() const { return demand.size(); }
  std::size_t num_facilities() const { return capacity.size(); }
};

IpProblem build_ip(const Instance& inst, const Clustering& clustering);

struct IpResult {
  ClusterAssignment assignment;
  std::vector<FacilityId> open;
  double objective = 0.0;
  bool optimal = false;      // search completed at this γ
  bool interrupted = false;  // budget ran out
  std::size_t nodes = 0;
};

// Branch-and-bound over open indicators and cluster placements with
// transportation relaxations. When no packing fits at γ = 1 the capacity
// factor is raised to the smallest feasible packing ratio found by binary
// search (tolerance 1e-6). Throws InfeasibleError only without facilities
// or with a cluster but no capacity at all.
IpResult solve_ip(const IpProblem& p, const Budget& budget = {});

}  // namespace clr
