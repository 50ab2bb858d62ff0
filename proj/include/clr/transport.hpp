#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "clr/common.hpp"

// Transportation problems: ship the demand of every sink from capacitated
// sources at minimum linear cost. Solved by a transportation simplex that
// keeps flows exact and returns basic (extreme point) solutions.
namespace clr::transport {

inline constexpr double forbidden = std::numeric_limits<double>::infinity();

struct Problem {
  std::vector<Rational> demand;    // one per sink
  std::vector<Rational> capacity;  // one per source
  // Per-unit cost, row-major sinks × sources. `forbidden` disables a cell.
  std::vector<double> unit_cost;

  std::size_t num_sinks() const { return demand.size(); }
  std::size_t num_sources() const { return capacity.size(); }
  double cost(std::size_t sink, std::size_t source) const {
    return unit_cost[sink * capacity.size() + source];
  }
};

enum class Status { optimal, infeasible };

struct Cell {
  std::uint32_t sink;
  std::uint32_t source;
  bool operator==(const Cell&) const = default;
};

// Spanning-tree basis of the balanced problem (real sinks plus one slack
// sink absorbing unused capacity). Reusable as a warm start for problems
// of the same shape whose costs changed but demands/capacities did not.
struct Basis {
  std::size_t num_sinks = 0;
  std::size_t num_sources = 0;
  std::vector<std::uint32_t> cells;
};

struct Solution {
  Status status = Status::infeasible;
  std::size_t num_sources = 0;
  std::vector<Rational> demand;
  std::vector<Rational> flow;  // row-major sinks × sources
  double objective = 0.0;
  Basis basis;
  std::size_t pivots = 0;

  const Rational& at(std::size_t sink, std::size_t source) const {
    return flow[sink * num_sources + source];
  }
};

// Optimal basic solution. Infeasible when total demand exceeds total
// capacity or when forbidden cells cannot be avoided. An invalid or
// infeasible warm basis is ignored.
Solution solve(const Problem& problem, const Basis* warm = nullptr);

// Cells with 0 < x(sink, source) < demand(sink).
std::vector<Cell> support_forest(const Solution& sol);

}  // namespace clr::transport
