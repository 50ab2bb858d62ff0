#include "clr/oracle.hpp"

#include <limits>

namespace clr {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Held–Karp over client subsets from one depot.
struct SubsetTsp {
  std::vector<double> cost;                    // per mask
  std::vector<std::vector<std::uint32_t>> order;  // per mask

  SubsetTsp(const Instance& inst, FacilityId w) {
    const auto n = inst.num_clients();
    const std::size_t full = std::size_t{1} << n;
    const auto depot = inst.site(w);
    auto site = [&](std::size_t v) {
      return inst.site(ClientId{static_cast<std::uint32_t>(v)});
    };
    std::vector<double> dp(full * n, inf);
    std::vector<std::int32_t> parent(full * n, -1);
    for (std::size_t v = 0; v < n; ++v) {
      dp[(std::size_t{1} << v) * n + v] = inst.distance(depot, site(v));
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
      for (std::size_t last = 0; last < n; ++last) {
        const double here = dp[mask * n + last];
        if (!(mask >> last & 1) || here == inf) continue;
        for (std::size_t next = 0; next < n; ++next) {
          if (mask >> next & 1) continue;
          const auto to = (mask | std::size_t{1} << next) * n + next;
          const double c = here + inst.distance(site(last), site(next));
          if (c < dp[to]) {
            dp[to] = c;
            parent[to] = static_cast<std::int32_t>(last);
          }
        }
      }
    }
    cost.assign(full, inf);
    order.resize(full);
    cost[0] = 0.0;
    for (std::size_t mask = 1; mask < full; ++mask) {
      std::int64_t best_last = -1;
      for (std::size_t last = 0; last < n; ++last) {
        if (!(mask >> last & 1)) continue;
        const double c = dp[mask * n + last] + inst.distance(site(last), depot);
        if (c < cost[mask]) {
          cost[mask] = c;
          best_last = static_cast<std::int64_t>(last);
        }
      }
      std::vector<std::uint32_t> seq;
      std::size_t m = mask;
      for (auto v = best_last; v >= 0;) {
        seq.push_back(static_cast<std::uint32_t>(v));
        const auto p = parent[m * n + static_cast<std::size_t>(v)];
        m &= ~(std::size_t{1} << v);
        v = p;
      }
      order[mask].assign(seq.rbegin(), seq.rend());
    }
  }
};

// Mixed-radix encoding of unit vectors.
struct Radix {
  std::vector<std::size_t> base;    // units(v) + 1
  std::vector<std::size_t> stride;
  std::size_t size = 1;

  std::size_t digit(std::size_t code, std::size_t v) const {
    return code / stride[v] % base[v];
  }
  // Calls fn on every code whose digits are at most those of `top`,
  // zero included.
  template <typename Fn>
  void for_each_below(std::size_t top, Fn&& fn) const {
    std::vector<std::size_t> d(base.size(), 0);
    std::size_t code = 0;
    for (;;) {
      fn(code);
      std::size_t v = 0;
      for (; v < base.size(); ++v) {
        if (d[v] < digit(top, v)) {
          ++d[v];
          code += stride[v];
          break;
        }
        code -= d[v] * stride[v];
        d[v] = 0;
      }
      if (v == base.size()) return;
    }
  }
};

}  // namespace

ExactResult brute_force_opt(const Instance& inst, const OracleCaps& caps) {
  const auto n = inst.num_clients();
  const auto nf = inst.num_facilities();
  if (n > caps.max_clients || nf > caps.max_facilities) {
    throw LimitError("oracle limited to " + std::to_string(caps.max_clients) +
                     " clients and " + std::to_string(caps.max_facilities) +
                     " facilities");
  }
  ExactResult out;
  if (n == 0) return out;

  bool integral = true;
  for (const auto& c : inst.clients()) {
    integral = integral && c.demand.denominator() == 1;
  }
  out.upper_bound_only = !integral;

  Radix rx;
  std::vector<Rational> unit(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& d = inst.clients()[v].demand;
    const std::size_t units =
        integral ? static_cast<std::size_t>(d.numerator()) : 1;
    unit[v] = integral ? Rational(1) : d;
    rx.stride.push_back(rx.size);
    rx.base.push_back(units + 1);
    if (rx.size > caps.max_states / (units + 1)) {
      throw LimitError("oracle state space exceeds " +
                       std::to_string(caps.max_states));
    }
    rx.size *= units + 1;
  }
  out.states = rx.size;
  const std::size_t total = rx.size - 1;

  auto load_of = [&](std::size_t code) {
    Rational sum = 0;
    for (std::size_t v = 0; v < n; ++v) sum += unit[v] * static_cast<std::int64_t>(rx.digit(code, v));
    return sum;
  };
  auto support = [&](std::size_t code) {
    std::size_t mask = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (rx.digit(code, v) > 0) mask |= std::size_t{1} << v;
    }
    return mask;
  };
  std::vector<Rational> load(rx.size);
  std::vector<std::size_t> mask(rx.size);
  for (std::size_t code = 0; code < rx.size; ++code) {
    load[code] = load_of(code);
    mask[code] = support(code);
  }
  const Rational& ubar = inst.vehicle_capacity();

  // g[w][code]: cheapest tours from w delivering exactly `code`
  std::vector<SubsetTsp> tsp;
  std::vector<std::vector<double>> g(nf, std::vector<double>(rx.size, inf));
  std::vector<std::vector<std::size_t>> first_tour(
      nf, std::vector<std::size_t>(rx.size, 0));
  for (std::uint32_t w = 0; w < nf; ++w) {
    tsp.emplace_back(inst, FacilityId{w});
    auto& gw = g[w];
    gw[0] = 0.0;
    for (std::size_t code = 1; code < rx.size; ++code) {
      std::size_t lead = 0;
      while (rx.digit(code, lead) == 0) ++lead;
      rx.for_each_below(code, [&](std::size_t s) {
        if (rx.digit(s, lead) == 0 || load[s] > ubar) return;
        const double c = tsp[w].cost[mask[s]] + gw[code - s];
        if (c < gw[code]) {
          gw[code] = c;
          first_tour[w][code] = s;
        }
      });
    }
  }

  // split of all units among facilities
  double best = inf;
  std::vector<std::size_t> best_split;
  std::vector<std::size_t> split(nf, 0);
  auto priced = [&](std::size_t w, std::size_t code) {
    if (code == 0) return 0.0;
    if (load[code] > inst.facilities()[w].capacity) return inf;
    return g[w][code] + inst.facilities()[w].opening_cost;
  };
  auto recurse = [&](auto&& self, std::size_t w, std::size_t rest,
                     double acc) -> void {
    if (acc >= best) return;
    if (w + 1 == nf) {
      const double c = acc + priced(w, rest);
      if (c < best) {
        best = c;
        split[w] = rest;
        best_split = split;
      }
      return;
    }
    rx.for_each_below(rest, [&](std::size_t code) {
      const double c = priced(w, code);
      if (c == inf) return;
      split[w] = code;
      self(self, w + 1, rest - code, acc + c);
    });
  };
  if (nf > 0) recurse(recurse, 0, total, 0.0);
  if (best == inf) {
    throw InfeasibleError("no capacity-feasible solution");
  }

  out.opt = best;
  for (std::uint32_t w = 0; w < nf; ++w) {
    std::size_t code = best_split[w];
    if (code == 0) continue;
    out.solution.open_facilities.push_back(FacilityId{w});
    while (code != 0) {
      const auto s = first_tour[w][code];
      Tour t;
      t.facility = FacilityId{w};
      for (auto v : tsp[w].order[mask[s]]) {
        t.sequence.push_back(ClientId{v});
        t.service.push_back(unit[v] *
                            static_cast<std::int64_t>(rx.digit(s, v)));
      }
      out.solution.tours.push_back(std::move(t));
      code -= s;
    }
  }
  return out;
}

}  // namespace clr
