#include "clr/cfl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "clr/transport.hpp"

namespace clr::cfl {

namespace {

std::vector<double> facility_costs(const Instance& inst,
                                   const std::vector<FacilityId>& free) {
  std::vector<double> f(inst.num_facilities());
  for (std::size_t w = 0; w < f.size(); ++w) {
    f[w] = inst.facilities()[w].opening_cost;
  }
  for (auto w : free) {
    f.at(w.value) = 0.0;
  }
  return f;
}

bool improves(double candidate, double incumbent) {
  return candidate < incumbent - cost_tolerance * std::max(1.0, std::abs(incumbent));
}

Rational total(const std::vector<Rational>& xs) {
  return std::accumulate(xs.begin(), xs.end(), Rational(0));
}

// Prices open sets against a fixed transportation shape so that a basis
// from one open set warm-starts the next.
class OpenSetPricer {
 public:
  explicit OpenSetPricer(const CflInstance& p) : p_(p) {
    base_.demand = p.demand;
    base_.capacity = p.capacity;
    base_.unit_cost = p.unit_cost;
    total_demand_ = total(p.demand);
  }

  struct Priced {
    bool feasible = false;
    double cost = 0.0;
    transport::Solution sol;
  };

  Priced price(const std::vector<char>& open,
               const transport::Basis* warm) const {
    Priced out;
    Rational cap = 0;
    double opening = 0.0;
    for (std::size_t w = 0; w < open.size(); ++w) {
      if (open[w]) {
        cap += p_.capacity[w];
        opening += p_.opening_cost[w];
      }
    }
    if (cap < total_demand_) {
      return out;
    }
    transport::Problem prob = base_;
    const auto m = p_.num_facilities();
    for (std::size_t s = 0; s < p_.num_points(); ++s) {
      for (std::size_t w = 0; w < m; ++w) {
        if (!open[w]) prob.unit_cost[s * m + w] = transport::forbidden;
      }
    }
    out.sol = transport::solve(prob, warm);
    if (out.sol.status != transport::Status::optimal) {
      return out;
    }
    out.feasible = true;
    out.cost = opening + out.sol.objective;
    return out;
  }

 private:
  const CflInstance& p_;
  transport::Problem base_;
  Rational total_demand_;
};

CflSolution to_solution(const CflInstance& p, const std::vector<char>& open,
                        const transport::Solution& sol) {
  CflSolution out;
  for (std::size_t w = 0; w < open.size(); ++w) {
    if (open[w]) {
      out.open.push_back(FacilityId{static_cast<std::uint32_t>(w)});
      out.opening_cost += p.opening_cost[w];
    }
  }
  out.assignment = sol.flow;
  out.connection_cost = sol.objective;
  return out;
}

std::vector<char> greedy_open(const CflInstance& p) {
  const auto m = p.num_facilities();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return p.opening_cost[a] / to_double(p.capacity[a]) <
           p.opening_cost[b] / to_double(p.capacity[b]);
  });
  std::vector<char> open(m, 0);
  Rational need = total(p.demand), cap = 0;
  for (auto w : order) {
    if (cap >= need) break;
    open[w] = 1;
    cap += p.capacity[w];
  }
  return open;
}

}  // namespace

CflInstance build_raw(const Instance& inst,
                      const std::vector<FacilityId>& free_facilities) {
  CflInstance p;
  p.mode = Mode::raw;
  const auto nf = inst.num_facilities();
  const double scale = 2.0 / to_double(inst.vehicle_capacity());
  for (const auto& c : inst.clients()) p.demand.push_back(c.demand);
  for (const auto& f : inst.facilities()) p.capacity.push_back(f.capacity);
  p.opening_cost = facility_costs(inst, free_facilities);
  p.unit_cost.resize(inst.num_clients() * nf);
  for (std::uint32_t v = 0; v < inst.num_clients(); ++v) {
    for (std::uint32_t w = 0; w < nf; ++w) {
      p.unit_cost[v * nf + w] =
          scale * inst.distance(ClientId{v}, FacilityId{w});
    }
  }
  return p;
}

CflInstance build_clustered(const Instance& inst, const Clustering& clustering,
                            const std::vector<FacilityId>& free_facilities) {
  CflInstance p;
  p.mode = Mode::clustered;
  const double scale = 2.0 / to_double(inst.vehicle_capacity());
  for (const auto& c : clustering.clusters) p.demand.push_back(c.demand);
  for (const auto& f : inst.facilities()) p.capacity.push_back(f.capacity);
  p.opening_cost = facility_costs(inst, free_facilities);
  p.unit_cost = cluster_facility_costs(inst, clustering);
  for (auto& c : p.unit_cost) c *= scale;
  return p;
}

CflSolution evaluate_open_set(const CflInstance& p,
                              const std::vector<FacilityId>& open) {
  std::vector<char> mask(p.num_facilities(), 0);
  for (auto w : open) mask.at(w.value) = 1;
  OpenSetPricer pricer(p);
  auto priced = pricer.price(mask, nullptr);
  if (!priced.feasible) {
    throw InfeasibleError("open facilities cannot serve the demand");
  }
  return to_solution(p, mask, priced.sol);
}

CflSolution local_search(const CflInstance& p, const Budget& budget,
                         std::uint64_t seed) {
  if (total(p.demand) > total(p.capacity)) {
    throw InfeasibleError("total demand exceeds total facility capacity");
  }
  Stopwatch clock;
  OpenSetPricer pricer(p);
  const auto m = p.num_facilities();

  std::vector<char> open = greedy_open(p);
  auto current = pricer.price(open, nullptr);
  if (!current.feasible) {
    // forbidden-free instances are always feasible once Σu ≥ Σd
    throw InfeasibleError("initial facility set is infeasible");
  }

  std::mt19937_64 rng(seed);
  bool interrupted = false;
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<std::size_t> opened, closed;
    for (std::size_t w = 0; w < m; ++w) (open[w] ? opened : closed).push_back(w);

    // moves are (facility to close or npos, facility to open or npos)
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    for (auto w : opened) moves.emplace_back(w, none);
    for (auto w : closed) moves.emplace_back(none, w);
    for (auto a : opened) {
      for (auto b : closed) moves.emplace_back(a, b);
    }
    std::shuffle(moves.begin(), moves.end(), rng);

    for (auto [out_w, in_w] : moves) {
      if (clock.expired(budget)) {
        interrupted = true;
        break;
      }
      auto candidate = open;
      if (out_w != none) candidate[out_w] = 0;
      if (in_w != none) candidate[in_w] = 1;
      auto priced = pricer.price(candidate, &current.sol.basis);
      if (priced.feasible && improves(priced.cost, current.cost)) {
        open = std::move(candidate);
        current = std::move(priced);
        clock.mark_improvement();
        improved = true;
        break;
      }
    }
    if (interrupted) break;
  }

  auto out = to_solution(p, open, current.sol);
  out.exact = false;
  out.interrupted = interrupted;
  return out;
}

CflSolution exact(const CflInstance& p, std::size_t size_cap,
                  const Budget& budget) {
  const auto m = p.num_facilities();
  const auto n = p.num_points();
  if (size_cap > 0 && n * m > size_cap) {
    throw LimitError("exact CFL refused: " + std::to_string(n * m) +
                     " variables exceed the cap of " +
                     std::to_string(size_cap));
  }
  const Rational need = total(p.demand);
  if (need > total(p.capacity)) {
    throw InfeasibleError("total demand exceeds total facility capacity");
  }
  Stopwatch clock;

  enum : char { undecided = 0, fixed_open = 1, fixed_closed = 2 };
  struct Node {
    std::vector<char> state;
    transport::Basis basis;
  };

  OpenSetPricer pricer(p);
  std::vector<char> best_open = greedy_open(p);
  double best_cost = pricer.price(best_open, nullptr).cost;

  std::vector<Node> stack;
  stack.push_back({std::vector<char>(m, undecided), {}});
  std::size_t nodes = 0;
  bool interrupted = false;

  transport::Problem relax;
  relax.demand = p.demand;
  relax.capacity = p.capacity;
  relax.unit_cost.resize(n * m);

  while (!stack.empty()) {
    if (clock.expired(budget) ||
        (budget.max_nodes > 0 && nodes >= budget.max_nodes)) {
      interrupted = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++nodes;

    Rational cap = 0;
    double fixed_cost = 0.0;
    for (std::size_t w = 0; w < m; ++w) {
      if (node.state[w] != fixed_closed) cap += p.capacity[w];
      if (node.state[w] == fixed_open) fixed_cost += p.opening_cost[w];
    }
    if (cap < need) continue;

    // z(w) relaxed to load/u(w): undecided facilities charge f/u per unit
    for (std::size_t w = 0; w < m; ++w) {
      double extra = 0.0;
      bool closed = node.state[w] == fixed_closed;
      if (node.state[w] == undecided) {
        extra = p.opening_cost[w] / to_double(p.capacity[w]);
      }
      for (std::size_t s = 0; s < n; ++s) {
        relax.unit_cost[s * m + w] =
            closed ? transport::forbidden : p.cost(s, w) + extra;
      }
    }
    auto sol = transport::solve(relax, node.basis.cells.empty() ? nullptr
                                                                : &node.basis);
    if (sol.status != transport::Status::optimal) continue;
    const double bound = fixed_cost + sol.objective;

    // Opening every used facility gives a feasible solution.
    std::vector<Rational> load(m, Rational(0));
    double connection = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t w = 0; w < m; ++w) {
        const auto& x = sol.at(s, w);
        if (x > 0) {
          load[w] += x;
          connection += p.cost(s, w) * to_double(x);
        }
      }
    }
    std::vector<char> used(m, 0);
    double heuristic = connection;
    for (std::size_t w = 0; w < m; ++w) {
      if (node.state[w] == fixed_open || load[w] > 0) {
        used[w] = 1;
        heuristic += p.opening_cost[w];
      }
    }
    if (improves(heuristic, best_cost)) {
      best_cost = heuristic;
      best_open = used;
      clock.mark_improvement();
    }
    if (!improves(bound, best_cost)) continue;

    // most fractional undecided indicator with a real cost impact
    std::int64_t branch = -1;
    double best_frac = 2.0;
    for (std::size_t w = 0; w < m; ++w) {
      if (node.state[w] != undecided || load[w] == 0 ||
          load[w] == p.capacity[w] || p.opening_cost[w] == 0.0) {
        continue;
      }
      double z = to_double(load[w] / p.capacity[w]);
      double frac = std::abs(z - 0.5);
      if (frac < best_frac) {
        best_frac = frac;
        branch = static_cast<std::int64_t>(w);
      }
    }
    if (branch < 0) continue;  // relaxation integral: heuristic == bound

    const auto bw = static_cast<std::size_t>(branch);
    const bool open_first = to_double(load[bw] / p.capacity[bw]) >= 0.5;
    Node open_child{node.state, sol.basis};
    open_child.state[bw] = fixed_open;
    Node closed_child{std::move(node.state), sol.basis};
    closed_child.state[bw] = fixed_closed;
    if (open_first) {
      stack.push_back(std::move(closed_child));
      stack.push_back(std::move(open_child));
    } else {
      stack.push_back(std::move(open_child));
      stack.push_back(std::move(closed_child));
    }
  }

  auto priced = pricer.price(best_open, nullptr);
  auto out = to_solution(p, best_open, priced.sol);
  out.exact = !interrupted;
  out.interrupted = interrupted;
  return out;
}

}  // namespace clr::cfl
