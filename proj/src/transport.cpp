#include "clr/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace clr::transport {

namespace {

// Lexicographic cost: penalty count first (forbidden cells), then money.
struct Cost2 {
  std::int64_t pen = 0;
  double c = 0.0;
};

class Simplex {
 public:
  explicit Simplex(const Problem& p)
      : p_(p),
        m_(p.num_sources()),
        n_(p.num_sinks() + 1),
        nodes_(m_ + n_),
        cells_(m_ * n_) {
    pen_.assign(cells_, 0);
    cost_.assign(cells_, 0.0);
    double scale = 1.0;
    for (std::size_t j = 0; j + 1 < n_; ++j) {
      for (std::size_t i = 0; i < m_; ++i) {
        double c = p.cost(j, i);
        auto id = j * m_ + i;
        if (std::isinf(c)) {
          pen_[id] = 1;
        } else {
          cost_[id] = c;
          scale = std::max(scale, std::abs(c));
        }
      }
    }
    eps_ = 1e-9 * scale;

    supply_ = p.capacity;
    demand_ = p.demand;
    Rational total_cap = std::accumulate(supply_.begin(), supply_.end(),
                                         Rational(0));
    Rational total_dem = std::accumulate(demand_.begin(), demand_.end(),
                                         Rational(0));
    demand_.push_back(total_cap - total_dem);
  }

  bool balanced_feasible() const { return demand_.back() >= 0; }

  bool load_warm(const Basis& warm) {
    if (warm.num_sinks + 1 != n_ || warm.num_sources != m_ ||
        warm.cells.size() != nodes_ - 1) {
      return false;
    }
    in_basis_.assign(cells_, 0);
    basis_ = warm.cells;
    for (auto id : basis_) {
      if (id >= cells_ || in_basis_[id]) {
        return false;
      }
      in_basis_[id] = 1;
    }
    return flows_from_basis();
  }

  void cold_start() {
    std::vector<std::uint32_t> order(cells_);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      if (pen_[a] != pen_[b]) return pen_[a] < pen_[b];
      if (cost_[a] != cost_[b]) return cost_[a] < cost_[b];
      return a < b;
    });
    std::vector<Rational> rs = supply_, rd = demand_;
    std::vector<char> src_on(m_, 1), snk_on(n_, 1);
    std::size_t src_left = m_, snk_left = n_;
    flow_.assign(cells_, Rational(0));
    in_basis_.assign(cells_, 0);
    basis_.clear();
    for (auto id : order) {
      if (src_left == 0 || snk_left == 0) {
        break;
      }
      std::size_t i = id % m_, j = id / m_;
      if (!src_on[i] || !snk_on[j]) {
        continue;
      }
      Rational amount = std::min(rs[i], rd[j]);
      flow_[id] = amount;
      rs[i] -= amount;
      rd[j] -= amount;
      in_basis_[id] = 1;
      basis_.push_back(id);
      bool src_done = rs[i] == 0, snk_done = rd[j] == 0;
      if (src_done && snk_done) {
        if (src_left == 1 && snk_left == 1) {
          src_on[i] = 0;
          snk_on[j] = 0;
          --src_left;
          --snk_left;
        } else if (snk_left > 1) {
          snk_on[j] = 0;
          --snk_left;
        } else {
          src_on[i] = 0;
          --src_left;
        }
      } else if (src_done) {
        src_on[i] = 0;
        --src_left;
      } else {
        snk_on[j] = 0;
        --snk_left;
      }
    }
  }

  std::size_t run() {
    build_adjacency();
    rebuild_tree();
    std::size_t pivots = 0;
    std::size_t degenerate_streak = 0;
    const std::size_t bland_after = 4 * nodes_ + 50;
    std::size_t cursor = 0;
    const std::size_t block =
        std::max<std::size_t>(64, cells_ / 16 + 1);

    for (;;) {
      bool bland = degenerate_streak > bland_after;
      std::int64_t entering = bland ? price_bland() : price_block(cursor, block);
      if (entering < 0) {
        break;
      }
      bool degenerate = pivot(static_cast<std::uint32_t>(entering));
      degenerate_streak = degenerate ? degenerate_streak + 1 : 0;
      ++pivots;
    }
    return pivots;
  }

  Solution extract() const {
    Solution sol;
    sol.num_sources = m_;
    sol.demand = p_.demand;
    const std::size_t real = (n_ - 1) * m_;
    sol.flow.assign(flow_.begin(), flow_.begin() + static_cast<long>(real));
    sol.status = Status::optimal;
    double obj = 0.0;
    for (std::size_t id = 0; id < real; ++id) {
      if (flow_[id] > 0) {
        if (pen_[id]) {
          sol.status = Status::infeasible;
        } else {
          obj += cost_[id] * to_double(flow_[id]);
        }
      }
    }
    sol.objective = obj;
    sol.basis.num_sinks = n_ - 1;
    sol.basis.num_sources = m_;
    sol.basis.cells = basis_;
    std::sort(sol.basis.cells.begin(), sol.basis.cells.end());
    return sol;
  }

 private:
  // Node numbering: sources [0, m), sinks [m, m + n).
  std::size_t src_node(std::uint32_t id) const { return id % m_; }
  std::size_t snk_node(std::uint32_t id) const { return m_ + id / m_; }

  bool flows_from_basis() {
    flow_.assign(cells_, Rational(0));
    build_adjacency();
    std::vector<Rational> residual(nodes_);
    for (std::size_t i = 0; i < m_; ++i) residual[i] = supply_[i];
    for (std::size_t j = 0; j < n_; ++j) residual[m_ + j] = demand_[j];
    std::vector<std::size_t> degree(nodes_);
    std::vector<char> used(cells_, 0);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < nodes_; ++v) {
      degree[v] = adj_[v].size();
      if (degree[v] == 1) stack.push_back(v);
    }
    std::size_t assigned = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      if (degree[v] != 1) continue;
      std::uint32_t edge = 0;
      bool found = false;
      for (auto id : adj_[v]) {
        if (!used[id]) {
          edge = id;
          found = true;
          break;
        }
      }
      if (!found) continue;
      used[edge] = 1;
      ++assigned;
      auto other = (v < m_) ? snk_node(edge) : src_node(edge);
      Rational amount = residual[v];
      if (amount < 0) return false;
      flow_[edge] = amount;
      residual[v] = 0;
      residual[other] -= amount;
      --degree[v];
      if (--degree[other] == 1) stack.push_back(other);
    }
    if (assigned != basis_.size()) return false;
    for (const auto& r : residual) {
      if (r != 0) return false;
    }
    return true;
  }

  void build_adjacency() {
    adj_.assign(nodes_, {});
    for (auto id : basis_) {
      adj_[src_node(id)].push_back(id);
      adj_[snk_node(id)].push_back(id);
    }
  }

  bool rebuild_tree() {
    parent_cell_.assign(nodes_, -1);
    parent_.assign(nodes_, -1);
    depth_.assign(nodes_, 0);
    pot_.assign(nodes_, Cost2{});
    std::vector<char> seen(nodes_, 0);
    std::vector<std::size_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto v = queue[head];
      for (auto id : adj_[v]) {
        auto u = (v < m_) ? snk_node(id) : src_node(id);
        if (seen[u]) continue;
        seen[u] = 1;
        parent_[u] = static_cast<std::int64_t>(v);
        parent_cell_[u] = id;
        depth_[u] = depth_[v] + 1;
        // cost(id) = pot(source) + pot(sink)
        pot_[u].pen = pen_[id] - pot_[v].pen;
        pot_[u].c = cost_[id] - pot_[v].c;
        queue.push_back(u);
      }
    }
    return queue.size() == nodes_;
  }

  bool negative(std::uint32_t id, Cost2& rc) const {
    auto i = src_node(id), j = snk_node(id);
    rc.pen = pen_[id] - pot_[i].pen - pot_[j].pen;
    rc.c = cost_[id] - pot_[i].c - pot_[j].c;
    return rc.pen < 0 || (rc.pen == 0 && rc.c < -eps_);
  }

  static bool better(const Cost2& a, const Cost2& b) {
    if (a.pen != b.pen) return a.pen < b.pen;
    return a.c < b.c;
  }

  std::int64_t price_block(std::size_t& cursor, std::size_t block) const {
    std::int64_t best = -1;
    Cost2 best_rc{};
    Cost2 rc;
    for (std::size_t scanned = 0; scanned < cells_;) {
      std::size_t end = std::min(scanned + block, cells_);
      for (; scanned < end; ++scanned) {
        auto id = static_cast<std::uint32_t>((cursor + scanned) % cells_);
        if (in_basis_[id]) continue;
        if (negative(id, rc) && (best < 0 || better(rc, best_rc))) {
          best = id;
          best_rc = rc;
        }
      }
      if (best >= 0) {
        cursor = (cursor + scanned) % cells_;
        return best;
      }
    }
    return -1;
  }

  std::int64_t price_bland() const {
    Cost2 rc;
    for (std::uint32_t id = 0; id < cells_; ++id) {
      if (!in_basis_[id] && negative(id, rc)) return id;
    }
    return -1;
  }

  // Returns true when the pivot was degenerate.
  bool pivot(std::uint32_t entering) {
    // Path source(entering) -> ... -> sink(entering) in the tree. Cells on
    // it alternate decrease/increase starting with a decrease.
    std::size_t a = src_node(entering), b = snk_node(entering);
    std::vector<std::uint32_t> up_a, up_b;
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        up_a.push_back(static_cast<std::uint32_t>(parent_cell_[a]));
        a = static_cast<std::size_t>(parent_[a]);
      } else {
        up_b.push_back(static_cast<std::uint32_t>(parent_cell_[b]));
        b = static_cast<std::size_t>(parent_[b]);
      }
    }
    path_.assign(up_a.begin(), up_a.end());
    path_.insert(path_.end(), up_b.rbegin(), up_b.rend());

    std::int64_t leaving = -1;
    Rational theta;
    for (std::size_t k = 0; k < path_.size(); k += 2) {
      auto id = path_[k];
      if (leaving < 0 || flow_[id] < theta ||
          (flow_[id] == theta && id < static_cast<std::uint32_t>(leaving))) {
        leaving = id;
        theta = flow_[id];
      }
    }
    if (theta != 0) {
      flow_[entering] += theta;
      for (std::size_t k = 0; k < path_.size(); ++k) {
        if (k % 2 == 0) {
          flow_[path_[k]] -= theta;
        } else {
          flow_[path_[k]] += theta;
        }
      }
    }
    auto out = static_cast<std::uint32_t>(leaving);
    in_basis_[out] = 0;
    in_basis_[entering] = 1;
    *std::find(basis_.begin(), basis_.end(), out) = entering;
    auto drop = [&](std::size_t node) {
      auto& list = adj_[node];
      list.erase(std::find(list.begin(), list.end(), out));
    };
    drop(src_node(out));
    drop(snk_node(out));
    adj_[src_node(entering)].push_back(entering);
    adj_[snk_node(entering)].push_back(entering);
    rebuild_tree();
    return theta == 0;
  }

  const Problem& p_;
  std::size_t m_, n_, nodes_, cells_;
  std::vector<std::int64_t> pen_;
  std::vector<double> cost_;
  double eps_ = 1e-9;
  std::vector<Rational> supply_, demand_;
  std::vector<Rational> flow_;
  std::vector<char> in_basis_;
  std::vector<std::uint32_t> basis_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::int64_t> parent_, parent_cell_;
  std::vector<std::size_t> depth_;
  std::vector<Cost2> pot_;
  std::vector<std::uint32_t> path_;
};

}  // namespace

Solution solve(const Problem& problem, const Basis* warm) {
  if (problem.unit_cost.size() != problem.num_sinks() * problem.num_sources()) {
    throw InputError("transport: cost matrix has wrong size");
  }
  Solution infeasible;
  infeasible.status = Status::infeasible;
  infeasible.num_sources = problem.num_sources();
  infeasible.demand = problem.demand;
  infeasible.flow.assign(problem.num_sinks() * problem.num_sources(),
                         Rational(0));
  if (problem.num_sources() == 0) {
    bool any = std::any_of(problem.demand.begin(), problem.demand.end(),
                           [](const Rational& d) { return d > 0; });
    if (!any) {
      infeasible.status = Status::optimal;
    }
    return infeasible;
  }

  Simplex simplex(problem);
  if (!simplex.balanced_feasible()) {
    return infeasible;
  }
  if (warm == nullptr || !simplex.load_warm(*warm)) {
    simplex.cold_start();
  }
  auto pivots = simplex.run();
  auto sol = simplex.extract();
  sol.pivots = pivots;
  return sol;
}

std::vector<Cell> support_forest(const Solution& sol) {
  std::vector<Cell> out;
  const auto m = sol.num_sources;
  for (std::size_t s = 0; s < sol.demand.size(); ++s) {
    for (std::size_t w = 0; w < m; ++w) {
      const auto& x = sol.flow[s * m + w];
      if (x > 0 && x < sol.demand[s]) {
        out.push_back({static_cast<std::uint32_t>(s),
                       static_cast<std::uint32_t>(w)});
      }
    }
  }
  return out;
}

}  // namespace clr::transport
