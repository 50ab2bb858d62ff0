#include "clr/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>

namespace clr {

AssignmentLp build_lp(const Instance& inst, const Clustering& clustering,
                      const std::vector<FacilityId>& open) {
  AssignmentLp lp;
  lp.sources = open;
  std::sort(lp.sources.begin(), lp.sources.end());
  lp.sources.erase(std::unique(lp.sources.begin(), lp.sources.end()),
                   lp.sources.end());

  const auto nf = inst.num_facilities();
  const auto m = lp.sources.size();
  const auto all = cluster_facility_costs(inst, clustering);
  Rational cap = 0, need = 0;
  for (auto w : lp.sources) {
    lp.problem.capacity.push_back(inst.facility(w).capacity);
    cap += inst.facility(w).capacity;
  }
  for (std::size_t s = 0; s < clustering.clusters.size(); ++s) {
    const auto& d = clustering.clusters[s].demand;
    lp.problem.demand.push_back(d);
    need += d;
    for (std::size_t j = 0; j < m; ++j) {
      double c = all[s * nf + lp.sources[j].value];
      lp.cluster_cost.push_back(c);
      lp.problem.unit_cost.push_back(c / to_double(d));
    }
  }
  if (need > cap) {
    throw InfeasibleError("open facilities hold " + format_rational(cap) +
                          " but clusters need " + format_rational(need));
  }
  return lp;
}

namespace {

// Vertex ids of the support graph: sinks first, then sources.
struct SupportGraph {
  std::size_t sinks;
  std::vector<std::vector<std::size_t>> adj;

  bool is_source(std::size_t v) const { return v >= sinks; }
};

SupportGraph support_graph(const std::vector<Rational>& demand,
                           std::size_t m, const std::vector<Rational>& flow) {
  const auto n = demand.size();
  SupportGraph g{n, std::vector<std::vector<std::size_t>>(n + m)};
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t w = 0; w < m; ++w) {
      const auto& x = flow[s * m + w];
      if (x > 0 && x < demand[s]) {
        g.adj[s].push_back(n + w);
        g.adj[n + w].push_back(s);
      }
    }
  }
  return g;
}

bool has_cycle(const SupportGraph& g) {
  std::vector<std::size_t> parent(g.adj.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t s = 0; s < g.sinks; ++s) {
    for (auto w : g.adj[s]) {
      auto a = find(s), b = find(w);
      if (a == b) return true;
      parent[a] = b;
    }
  }
  return false;
}

}  // namespace

RoundingResult round_vertex(const std::vector<Rational>& demand,
                            std::size_t num_sources,
                            const std::vector<double>& unit_cost,
                            std::vector<Rational> flow) {
  const auto n = demand.size();
  const auto m = num_sources;
  for (std::size_t s = 0; s < n; ++s) {
    Rational sum = 0;
    for (std::size_t w = 0; w < m; ++w) {
      if (flow[s * m + w] < 0) {
        throw ContractError("rounding: negative flow");
      }
      sum += flow[s * m + w];
    }
    if (sum != demand[s]) {
      throw ContractError("rounding: sink " + std::to_string(s) +
                          " is not fully served");
    }
  }

  RoundingResult out;
  for (;;) {
    auto g = support_graph(demand, m, flow);
    if (out.iterations == 0 && has_cycle(g)) {
      throw ContractError("rounding: fractional support is not a forest");
    }
    std::optional<std::size_t> start;
    bool any_edge = false;
    for (std::size_t w = 0; w < m; ++w) {
      const auto deg = g.adj[n + w].size();
      any_edge = any_edge || deg > 0;
      if (deg == 1 && !start) start = n + w;
    }
    if (!any_edge) break;
    if (!start) {
      throw ContractError("rounding: support has no leaf facility");
    }

    // nearest other leaf facility, by hops, lowest id on ties
    std::vector<std::int64_t> prev(g.adj.size(), -1);
    std::vector<char> seen(g.adj.size(), 0);
    std::deque<std::size_t> queue{*start};
    seen[*start] = 1;
    std::optional<std::size_t> end;
    while (!queue.empty() && !end) {
      std::vector<std::size_t> layer(queue.begin(), queue.end());
      queue.clear();
      std::vector<std::size_t> next;
      for (auto v : layer) {
        for (auto u : g.adj[v]) {
          if (seen[u]) continue;
          seen[u] = 1;
          prev[u] = static_cast<std::int64_t>(v);
          next.push_back(u);
        }
      }
      std::sort(next.begin(), next.end());
      for (auto u : next) {
        if (g.is_source(u) && g.adj[u].size() == 1) {
          end = u;
          break;
        }
      }
      queue.assign(next.begin(), next.end());
    }
    if (!end) {
      throw ContractError("rounding: leaf facility without a partner");
    }

    // path w0, S1, w1, ..., Sk, wk; I = (Si, w(i-1)), I' = (Si, wi)
    std::vector<std::size_t> path;
    for (auto v = static_cast<std::int64_t>(*end); v >= 0; v = prev[v]) {
      path.push_back(static_cast<std::size_t>(v));
    }
    std::reverse(path.begin(), path.end());
    std::vector<std::size_t> cells_i, cells_j;
    for (std::size_t k = 1; k + 1 < path.size(); k += 2) {
      const auto s = path[k];
      cells_i.push_back(s * m + (path[k - 1] - n));
      cells_j.push_back(s * m + (path[k + 1] - n));
    }
    double cost_i = 0.0, cost_j = 0.0;
    for (auto c : cells_i) cost_i += unit_cost[c];
    for (auto c : cells_j) cost_j += unit_cost[c];

    // Shift away from the dearer side; per-unit costs keep the LP
    // objective from increasing.
    auto& down = cost_i >= cost_j ? cells_i : cells_j;
    auto& up = cost_i >= cost_j ? cells_j : cells_i;
    Rational delta = flow[down.front()];
    for (auto c : down) delta = std::min(delta, flow[c]);
    for (auto c : up) delta = std::min(delta, demand[c / m] - flow[c]);
    for (auto c : down) flow[c] -= delta;
    for (auto c : up) flow[c] += delta;
    ++out.iterations;
  }

  out.source.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t w = 0; w < m; ++w) {
      if (flow[s * m + w] == demand[s]) {
        out.source[s] = w;
        break;
      }
    }
  }
  out.flow = std::move(flow);
  return out;
}

ClusterAssignment round_assignment(const Instance& inst,
                                   const AssignmentLp& lp,
                                   const transport::Solution& sol,
                                   std::size_t* iterations) {
  if (sol.status != transport::Status::optimal) {
    throw ContractError("rounding needs an optimal transportation solution");
  }
  auto r = round_vertex(lp.problem.demand, lp.sources.size(),
                        lp.problem.unit_cost, sol.flow);
  ClusterAssignment a;
  a.source = AssignmentSource::lp_rounded;
  a.load.assign(inst.num_facilities(), Rational(0));
  for (std::size_t s = 0; s < r.source.size(); ++s) {
    auto w = lp.sources[r.source[s]];
    a.facility.push_back(w);
    a.load[w.value] += lp.problem.demand[s];
  }
  if (iterations) *iterations = r.iterations;
  return a;
}

IpProblem build_ip(const Instance& inst, const Clustering& clustering) {
  IpProblem p;
  for (const auto& c : clustering.clusters) p.demand.push_back(c.demand);
  for (const auto& f : inst.facilities()) {
    p.capacity.push_back(f.capacity);
    p.opening_cost.push_back(f.opening_cost);
  }
  p.route_cost = cluster_facility_costs(inst, clustering);
  for (auto& c : p.route_cost) c *= 2.0;
  return p;
}

namespace {

bool improves(double candidate, double incumbent) {
  return candidate <
         incumbent - cost_tolerance * std::max(1.0, std::abs(incumbent));
}

struct Placement {
  std::vector<std::size_t> facility;  // per cluster
  double cost = 0.0;
};

double placement_cost(const IpProblem& p, const std::vector<std::size_t>& at) {
  const auto m = p.num_facilities();
  std::vector<char> used(m, 0);
  double cost = 0.0;
  for (std::size_t s = 0; s < at.size(); ++s) {
    cost += p.route_cost[s * m + at[s]];
    used[at[s]] = 1;
  }
  for (std::size_t w = 0; w < m; ++w) {
    if (used[w]) cost += p.opening_cost[w];
  }
  return cost;
}

// Depth-first bin packing of clusters into capacities γ·u(w). Ignores
// costs apart from trying cheap facilities first.
class Packer {
 public:
  Packer(const IpProblem& p, std::size_t node_budget)
      : p_(p), budget_(node_budget) {
    order_.resize(p.num_clusters());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) {
      return p.demand[a] > p.demand[b];
    });
  }

  // Empty optional: no packing found (proved or budget). `exhausted`
  // tells the two apart.
  std::optional<std::vector<std::size_t>> pack(const Rational& gamma,
                                               bool& exhausted) {
    const auto m = p_.num_facilities();
    room_.resize(m);
    for (std::size_t w = 0; w < m; ++w) room_[w] = gamma * p_.capacity[w];
    at_.assign(p_.num_clusters(), 0);
    nodes_ = 0;
    out_of_budget_ = false;
    bool ok = dfs(0);
    exhausted = !ok && out_of_budget_;
    if (!ok) return std::nullopt;
    return at_;
  }

 private:
  bool dfs(std::size_t k) {
    if (k == order_.size()) return true;
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    const auto s = order_[k];
    const auto m = p_.num_facilities();
    std::vector<std::size_t> cand(m);
    std::iota(cand.begin(), cand.end(), 0);
    std::stable_sort(cand.begin(), cand.end(), [&](auto a, auto b) {
      return p_.route_cost[s * m + a] < p_.route_cost[s * m + b];
    });
    std::vector<Rational> tried;
    for (auto w : cand) {
      if (room_[w] < p_.demand[s]) continue;
      // facilities with equal room are interchangeable for feasibility
      if (std::find(tried.begin(), tried.end(), room_[w]) != tried.end()) {
        continue;
      }
      tried.push_back(room_[w]);
      room_[w] -= p_.demand[s];
      at_[s] = w;
      if (dfs(k + 1)) return true;
      room_[w] += p_.demand[s];
      if (out_of_budget_) return false;
    }
    return false;
  }

  const IpProblem& p_;
  std::size_t budget_;
  std::vector<std::size_t> order_;
  std::vector<Rational> room_;
  std::vector<std::size_t> at_;
  std::size_t nodes_ = 0;
  bool out_of_budget_ = false;
};

Rational packing_ratio(const IpProblem& p, const std::vector<std::size_t>& at) {
  std::vector<Rational> load(p.num_facilities(), Rational(0));
  for (std::size_t s = 0; s < at.size(); ++s) load[at[s]] += p.demand[s];
  Rational worst = 0;
  for (std::size_t w = 0; w < load.size(); ++w) {
    worst = std::max(worst, load[w] / p.capacity[w]);
  }
  return worst;
}

struct SearchOutcome {
  std::optional<Placement> best;
  bool complete = false;
  std::size_t nodes = 0;
};

// Branch-and-bound at a fixed capacity factor.
SearchOutcome branch_and_bound(const IpProblem& p, const Rational& gamma,
                               std::optional<Placement> incumbent,
                               const Budget& budget, const Stopwatch& clock) {
  const auto n = p.num_clusters();
  const auto m = p.num_facilities();
  enum : char { undecided = 0, fixed_open = 1, fixed_closed = 2 };
  struct Node {
    std::vector<char> state;   // per facility
    std::vector<char> banned;  // per cell
    transport::Basis basis;
  };

  std::vector<Rational> cap(m);
  for (std::size_t w = 0; w < m; ++w) cap[w] = gamma * p.capacity[w];
  std::vector<std::size_t> by_demand(n);
  std::iota(by_demand.begin(), by_demand.end(), 0);
  std::stable_sort(by_demand.begin(), by_demand.end(),
                   [&](auto a, auto b) { return p.demand[a] > p.demand[b]; });

  transport::Problem relax;
  relax.demand = p.demand;
  relax.capacity = cap;
  relax.unit_cost.resize(n * m);

  SearchOutcome out;
  out.best = std::move(incumbent);
  std::vector<Node> stack;
  stack.push_back({std::vector<char>(m, undecided),
                   std::vector<char>(n * m, 0), {}});
  bool interrupted = false;

  while (!stack.empty()) {
    if (clock.expired(budget) ||
        (budget.max_nodes > 0 && out.nodes >= budget.max_nodes)) {
      interrupted = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++out.nodes;

    double fixed = 0.0;
    for (std::size_t w = 0; w < m; ++w) {
      if (node.state[w] == fixed_open) fixed += p.opening_cost[w];
      const double extra = node.state[w] == undecided
                               ? p.opening_cost[w] / to_double(cap[w])
                               : 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        const auto c = s * m + w;
        relax.unit_cost[c] =
            node.state[w] == fixed_closed || node.banned[c]
                ? transport::forbidden
                : p.route_cost[c] / to_double(p.demand[s]) + extra;
      }
    }
    auto sol = transport::solve(relax, node.basis.cells.empty() ? nullptr
                                                                : &node.basis);
    if (sol.status != transport::Status::optimal) continue;
    const double bound = fixed + sol.objective;
    if (out.best && !improves(bound, out.best->cost)) continue;

    std::vector<Rational> load(m, Rational(0));
    for (std::size_t c = 0; c < n * m; ++c) load[c % m] += sol.flow[c];

    // Round: each cluster to its largest share if it fits, otherwise to
    // the cheapest allowed facility with room.
    {
      std::vector<Rational> room = cap;
      std::vector<char> used(m, 0);
      std::vector<std::size_t> at(n, 0);
      bool ok = true;
      for (auto s : by_demand) {
        std::optional<std::size_t> pick;
        Rational share = 0;
        for (std::size_t w = 0; w < m; ++w) {
          if (sol.at(s, w) > share) {
            share = sol.at(s, w);
            pick = w;
          }
        }
        if (pick && room[*pick] < p.demand[s]) pick.reset();
        if (!pick) {
          double best = transport::forbidden;
          for (std::size_t w = 0; w < m; ++w) {
            const auto c = s * m + w;
            if (node.state[w] == fixed_closed || node.banned[c] ||
                room[w] < p.demand[s]) {
              continue;
            }
            double price = p.route_cost[c] + (used[w] ? 0.0 : p.opening_cost[w]);
            if (price < best) {
              best = price;
              pick = w;
            }
          }
        }
        if (!pick) {
          ok = false;
          break;
        }
        at[s] = *pick;
        used[*pick] = 1;
        room[*pick] -= p.demand[s];
      }
      if (ok) {
        double cost = placement_cost(p, at);
        if (!out.best || improves(cost, out.best->cost)) {
          out.best = Placement{std::move(at), cost};
        }
      }
    }
    if (out.best && !improves(bound, out.best->cost)) continue;

    // branch on the most fractional opening indicator first
    std::optional<std::size_t> fac;
    double closest = 2.0;
    for (std::size_t w = 0; w < m; ++w) {
      if (node.state[w] != undecided || p.opening_cost[w] == 0.0 ||
          load[w] == 0 || load[w] == cap[w]) {
        continue;
      }
      double gap = std::abs(to_double(load[w] / cap[w]) - 0.5);
      if (gap < closest) {
        closest = gap;
        fac = w;
      }
    }
    if (fac) {
      const bool open_first = to_double(load[*fac] / cap[*fac]) >= 0.5;
      Node open_child{node.state, node.banned, sol.basis};
      open_child.state[*fac] = fixed_open;
      Node closed_child{std::move(node.state), std::move(node.banned),
                        sol.basis};
      closed_child.state[*fac] = fixed_closed;
      if (open_first) std::swap(open_child, closed_child);
      stack.push_back(std::move(open_child));
      stack.push_back(std::move(closed_child));
      continue;
    }

    // then on a split cluster: largest demand, its largest share
    std::optional<std::size_t> split;
    for (auto s : by_demand) {
      for (std::size_t w = 0; w < m; ++w) {
        const auto& x = sol.at(s, w);
        if (x > 0 && x < p.demand[s]) {
          split = s;
          break;
        }
      }
      if (split) break;
    }
    if (!split) continue;  // integral: the rounding above reproduced it
    const auto s = *split;
    std::size_t w_big = 0;
    for (std::size_t w = 1; w < m; ++w) {
      if (sol.at(s, w) > sol.at(s, w_big)) w_big = w;
    }
    Node forced{node.state, node.banned, sol.basis};
    for (std::size_t w = 0; w < m; ++w) {
      if (w != w_big) forced.banned[s * m + w] = 1;
    }
    Node banned{std::move(node.state), std::move(node.banned), sol.basis};
    banned.banned[s * m + w_big] = 1;
    stack.push_back(std::move(banned));
    stack.push_back(std::move(forced));
  }
  out.complete = !interrupted;
  return out;
}

IpResult finish(const IpProblem& p, const Placement& best,
                const Rational& gamma, SearchOutcome& search) {
  IpResult r;
  r.objective = best.cost;
  r.optimal = search.complete;
  r.interrupted = !search.complete;
  r.nodes = search.nodes;
  auto& a = r.assignment;
  a.gamma = gamma;
  a.source = gamma == 1 ? AssignmentSource::ip : AssignmentSource::ip_gamma;
  a.load.assign(p.num_facilities(), Rational(0));
  for (std::size_t s = 0; s < best.facility.size(); ++s) {
    auto w = best.facility[s];
    a.facility.push_back(FacilityId{static_cast<std::uint32_t>(w)});
    a.load[w] += p.demand[s];
  }
  for (std::size_t w = 0; w < p.num_facilities(); ++w) {
    if (a.load[w] > 0) {
      r.open.push_back(FacilityId{static_cast<std::uint32_t>(w)});
    }
  }
  return r;
}

}  // namespace

IpResult solve_ip(const IpProblem& p, const Budget& budget) {
  const auto n = p.num_clusters();
  const auto m = p.num_facilities();
  if (n == 0) {
    IpResult r;
    r.optimal = true;
    r.assignment.load.assign(m, Rational(0));
    return r;
  }
  if (m == 0) {
    throw InfeasibleError("clusters but no facilities");
  }
  Stopwatch clock;
  constexpr std::size_t packing_nodes = 200'000;
  Packer packer(p, packing_nodes);

  Rational total_d = 0, total_u = 0, max_d = 0, max_u = 0;
  for (const auto& d : p.demand) {
    total_d += d;
    max_d = std::max(max_d, d);
  }
  for (const auto& u : p.capacity) {
    total_u += u;
    max_u = std::max(max_u, u);
  }
  const Rational lo_bound =
      std::max({Rational(1), total_d / total_u, max_d / max_u});

  if (lo_bound == 1) {
    bool exhausted = false;
    auto packed = packer.pack(Rational(1), exhausted);
    if (packed || exhausted) {
      std::optional<Placement> start;
      if (packed) start = Placement{*packed, placement_cost(p, *packed)};
      auto search = branch_and_bound(p, Rational(1), start, budget, clock);
      if (search.best) return finish(p, *search.best, Rational(1), search);
    }
  }

  // Smallest capacity factor with a packing: bisection on doubles, then
  // snapped to the exact worst load ratio of the packing found.
  std::vector<std::size_t> everything(n, 0);
  for (std::size_t w = 1; w < m; ++w) {
    if (p.capacity[w] > p.capacity[everything[0]]) {
      std::fill(everything.begin(), everything.end(), w);
    }
  }
  std::vector<std::size_t> witness = everything;
  double hi = to_double(packing_ratio(p, witness));
  double lo = to_double(lo_bound);
  auto try_gamma = [&](const Rational& g) {
    bool exhausted = false;
    auto packed = packer.pack(g, exhausted);
    if (packed) witness = *packed;
    return packed.has_value();
  };
  if (try_gamma(lo_bound)) {
    hi = lo;
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    // a rational just above mid keeps the packing test exact
    const Rational g(static_cast<std::int64_t>(std::ceil(mid * 1e7)),
                     10'000'000);
    if (try_gamma(g)) {
      hi = std::min(hi, to_double(packing_ratio(p, witness)));
    } else {
      lo = mid;
    }
  }
  const Rational gamma = std::max(Rational(1), packing_ratio(p, witness));
  std::optional<Placement> start =
      Placement{witness, placement_cost(p, witness)};
  auto search = branch_and_bound(p, gamma, start, budget, clock);
  return finish(p, *search.best, gamma, search);
}

}  // namespace clr
