#pragma once

#include <optional>

#include "clr/budget.hpp"
#include "clr/cfl.hpp"
#include "clr/mst.hpp"

namespace clr {

enum class CflBoundMode { exact, heuristic };

struct CflBound {
  double value = 0.0;  // L̃
  bool certified = false;
  cfl::CflSolution solution;
};

// CFL with the same sites and c̃ = 2c/ū. Exact mode falls back to local
// search (uncertified) when the size cap refuses or the budget runs out.
// Throws InfeasibleError when Σd > Σu.
CflBound cfl_lower_bound(const Instance& inst, CflBoundMode mode,
                         std::size_t exact_cap = 50'000,
                         const Budget& budget = {});

enum class BoundSource { mst, cfl };

struct BoundReport {
  double mst_bound = 0.0;                // L′
  std::optional<double> cfl_bound;       // L̃, absent when skipped
  bool cfl_certified = false;
  double best_bound = 0.0;
  BoundSource which = BoundSource::mst;
};

BoundReport make_bound_report(double mst_bound,
                              const std::optional<CflBound>& cfl);

// Throws ContractError when the best bound is zero.
double gap_to_lower_bound(double alg_cost, const BoundReport& bounds);

}  // namespace clr
