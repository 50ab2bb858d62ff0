#include "clr/lowerbounds.hpp"

namespace clr {

CflBound cfl_lower_bound(const Instance& inst, CflBoundMode mode,
                         std::size_t exact_cap, const Budget& budget) {
  if (inst.total_demand() > inst.total_capacity()) {
    throw InfeasibleError("total demand " +
                          format_rational(inst.total_demand()) +
                          " exceeds total capacity " +
                          format_rational(inst.total_capacity()));
  }
  const auto p = cfl::build_raw(inst);
  CflBound out;
  if (mode == CflBoundMode::exact &&
      inst.num_clients() * inst.num_facilities() <= exact_cap) {
    out.solution = cfl::exact(p, exact_cap, budget);
    out.certified = out.solution.exact;
  } else {
    out.solution = cfl::local_search(p, budget);
  }
  out.value = out.solution.cost();
  return out;
}

BoundReport make_bound_report(double mst_bound,
                              const std::optional<CflBound>& cfl) {
  BoundReport r;
  r.mst_bound = mst_bound;
  r.best_bound = mst_bound;
  if (cfl) {
    r.cfl_bound = cfl->value;
    r.cfl_certified = cfl->certified;
    if (cfl->value > mst_bound) {
      r.best_bound = cfl->value;
      r.which = BoundSource::cfl;
    }
  }
  return r;
}

double gap_to_lower_bound(double alg_cost, const BoundReport& bounds) {
  if (!(bounds.best_bound > 0.0)) {
    throw ContractError("gap to lower bound is undefined for a zero bound");
  }
  return (alg_cost - bounds.best_bound) / bounds.best_bound;
}

}  // namespace clr
