#include "clr/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "clr/routing.hpp"

namespace clr {

std::string VariantConfig::name() const {
  std::string out = backend == Backend::ls ? "ls" : "ip";
  out += routing == RoutingPost::double_tree ? "-dts" : "-lkh";
  return out;
}

VariantConfig variant(std::string_view name) {
  VariantConfig cfg;
  if (name == "ls-dts" || name == "ls-lkh") {
    cfg.backend = Backend::ls;
  } else if (name == "ip-dts" || name == "ip-lkh") {
    cfg.backend = Backend::ip;
  } else {
    throw InputError("unknown variant '" + std::string(name) +
                     "' (expected ls-dts, ip-dts, ls-lkh or ip-lkh)");
  }
  cfg.routing = name.ends_with("lkh") ? RoutingPost::improved
                                      : RoutingPost::double_tree;
  return cfg;
}

Budget default_budget(std::size_t num_clients) {
  Budget b;
  b.max_nodes = 200'000;
  if (num_clients <= 200) return b;
  const double minute = 60.0;
  if (num_clients <= 600) {
    b.no_improve_seconds = 60 * minute;
    b.total_seconds = 180 * minute;
  } else if (num_clients <= 1000) {
    b.no_improve_seconds = 90 * minute;
    b.total_seconds = 270 * minute;
  } else {
    b.no_improve_seconds = 120 * minute;
    b.total_seconds = 360 * minute;
  }
  return b;
}

Certificate certify(double cost, const BoundReport& bounds,
                    const Rational& epsilon, double heuristic_alpha) {
  Certificate c;
  if (!bounds.cfl_bound) return c;
  c.alpha = bounds.cfl_certified ? 1.0 : heuristic_alpha;
  c.theorem_bound = 4.0 * bounds.mst_bound +
                    2.0 * c.alpha / to_double(epsilon) * *bounds.cfl_bound;
  c.holds = cost <= c.theorem_bound +
                        cost_tolerance * std::max(1.0, c.theorem_bound);
  return c;
}

namespace {

double seconds_since(const Stopwatch& clock, double& mark) {
  const double now = clock.elapsed();
  const double out = now - mark;
  mark = now;
  return out;
}

// Adds facilities by ascending f/u until the open set holds all demand.
bool complete_open_set(const Instance& inst, std::vector<FacilityId>& open) {
  Rational cap = 0;
  std::vector<char> is_open(inst.num_facilities(), 0);
  for (auto w : open) {
    if (!is_open[w.value]) cap += inst.facility(w).capacity;
    is_open[w.value] = 1;
  }
  const Rational need = inst.total_demand();
  if (cap >= need) return false;
  std::vector<std::uint32_t> order(inst.num_facilities());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto& fa = inst.facilities()[a];
    const auto& fb = inst.facilities()[b];
    return fa.opening_cost / to_double(fa.capacity) <
           fb.opening_cost / to_double(fb.capacity);
  });
  for (auto w : order) {
    if (cap >= need) break;
    if (is_open[w]) continue;
    open.push_back(FacilityId{w});
    cap += inst.facilities()[w].capacity;
  }
  return true;
}

}  // namespace

RunResult run(const Instance& inst, const VariantConfig& cfg) {
  if (cfg.epsilon <= 0 || cfg.epsilon > 1) {
    throw InputError("epsilon must lie in (0, 1], got " +
                     format_rational(cfg.epsilon));
  }
  if (inst.total_demand() > inst.total_capacity()) {
    throw InfeasibleError("total demand " +
                          format_rational(inst.total_demand()) +
                          " exceeds total capacity " +
                          format_rational(inst.total_capacity()));
  }
  RunResult r;
  Stopwatch clock;
  double mark = 0.0;

  const auto mst = mst_lower_bound(inst);
  std::optional<CflBound> cfl_bound;
  if (cfg.bounds != BoundMode::skip) {
    cfl_bound = cfl_lower_bound(inst,
                                cfg.bounds == BoundMode::exact
                                    ? CflBoundMode::exact
                                    : CflBoundMode::heuristic,
                                cfg.exact_cfl_cap, cfg.bound_budget);
  }
  r.bounds = make_bound_report(mst.weight, cfl_bound);
  r.times.bounds = seconds_since(clock, mark);

  r.clustering = cluster(preprocess(inst, mst, cfg.epsilon));
  const auto& cl = r.clustering;
  r.times.cluster = seconds_since(clock, mark);

  if (cfg.backend == Backend::ls) {
    const std::vector<FacilityId> none;
    const auto& free = cfg.free_f1 ? cl.f1 : none;
    const bool reuse = cfl_bound && cfl_bound->certified &&
                       cfg.cfl_mode == cfl::Mode::raw && free.empty() &&
                       cfg.cfl_solver == CflSolver::exact;
    if (reuse) {
      r.cfl = cfl_bound->solution;
    } else {
      const auto p = cfg.cfl_mode == cfl::Mode::raw
                         ? cfl::build_raw(inst, free)
                         : cfl::build_clustered(inst, cl, free);
      if (cfg.cfl_solver == CflSolver::exact &&
          p.num_points() * p.num_facilities() <= cfg.exact_cfl_cap) {
        r.cfl = cfl::exact(p, cfg.exact_cfl_cap, cfg.budget);
      } else {
        r.cfl = cfl::local_search(p, cfg.budget, cfg.seed);
      }
    }
    r.interrupted = r.cfl->interrupted;
    r.f2 = r.cfl->open;

    std::vector<FacilityId> open = cl.f1;
    open.insert(open.end(), r.f2.begin(), r.f2.end());
    r.facilities_added = complete_open_set(inst, open);
    const auto lp = build_lp(inst, cl, open);
    const auto sol = transport::solve(lp.problem);
    if (sol.status != transport::Status::optimal) {
      throw ContractError("assignment LP infeasible despite enough capacity");
    }
    r.lp_objective = sol.objective;
    r.assignment = round_assignment(inst, lp, sol, &r.rounding_iterations);
  } else {
    auto ip = solve_ip(build_ip(inst, cl), cfg.budget);
    r.interrupted = ip.interrupted;
    r.gamma = ip.assignment.gamma;
    r.f2 = ip.open;
    r.assignment = std::move(ip.assignment);
  }
  r.times.assign = seconds_since(clock, mark);

  std::vector<char> used(inst.num_facilities(), 0);
  for (std::size_t s = 0; s < cl.clusters.size(); ++s) {
    const auto w = r.assignment.facility[s];
    auto tour = build_tour(inst, cl, s, w);
    if (tour.sequence.empty()) continue;
    if (cfg.routing == RoutingPost::improved) {
      tour = improve_tour(inst, std::move(tour));
    }
    used[w.value] = 1;
    r.solution.tours.push_back(std::move(tour));
  }
  // facilities without a tour stay closed
  for (std::uint32_t w = 0; w < inst.num_facilities(); ++w) {
    if (used[w]) r.solution.open_facilities.push_back(FacilityId{w});
  }
  r.times.route = seconds_since(clock, mark);

  r.evaluation = evaluate(inst, r.solution, cfg.epsilon);
  r.certificate =
      certify(r.evaluation.total_cost, r.bounds, cfg.epsilon, cfg.alpha);
  r.times.total = clock.elapsed();
  return r;
}

}  // namespace clr
