#include "clr/routing.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace clr {

namespace {

// Node of V(T_S) closest to w; lowest node id on ties.
std::uint32_t connecting_node(const Instance& inst, const Clustering& cl,
                              const Cluster& c, FacilityId w) {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> nodes = c.nodes;
  std::sort(nodes.begin(), nodes.end());
  for (auto v : nodes) {
    if (cl.tree.nodes[v].kind == NodeKind::root) continue;
    double d = inst.distance(cl.tree.site(inst, v), inst.site(w));
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

}  // namespace

double tour_bound(const Instance& inst, const Clustering& clustering,
                  std::size_t cluster, FacilityId w) {
  const auto& c = clustering.clusters.at(cluster);
  const auto v = connecting_node(inst, clustering, c, w);
  return 2.0 * (tree_cost(inst, clustering.tree, c.edges) +
                inst.distance(clustering.tree.site(inst, v), inst.site(w)));
}

Tour build_tour(const Instance& inst, const Clustering& clustering,
                std::size_t cluster, FacilityId w) {
  const auto& c = clustering.clusters.at(cluster);
  const auto& t = clustering.tree;
  Tour tour;
  tour.facility = w;
  if (c.nodes.empty()) return tour;

  std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
  for (const auto& e : c.edges) {
    adj[e.parent].push_back(e.child);
    adj[e.child].push_back(e.parent);
  }
  const auto start = connecting_node(inst, clustering, c, w);

  // preorder walk of the doubled tree; first visits only
  std::map<std::uint32_t, std::size_t> slot;  // client -> sequence index
  std::vector<char> seen(t.size(), 0);
  std::vector<std::uint32_t> stack{start};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = 1;
    const auto& node = t.nodes[v];
    if (node.kind == NodeKind::client) {
      auto [it, fresh] = slot.emplace(node.origin, tour.sequence.size());
      if (fresh) {
        tour.sequence.push_back(ClientId{node.origin});
        tour.service.push_back(node.demand);
      } else {
        tour.service[it->second] += node.demand;
      }
    }
    auto found = adj.find(v);
    if (found == adj.end()) continue;
    const auto& next = found->second;
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      if (!seen[*it]) stack.push_back(*it);
    }
  }
  return tour;
}

namespace {

class TourImprover {
 public:
  TourImprover(const Instance& inst, const Tour& tour) : inst_(inst) {
    route_.push_back(inst.site(tour.facility));
    for (auto v : tour.sequence) route_.push_back(inst.site(v));
    route_.push_back(inst.site(tour.facility));
    order_.resize(tour.sequence.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  }

  void run() {
    while (two_opt() || or_opt()) {
    }
  }

  // positions of the original sequence in the improved order
  const std::vector<std::size_t>& order() const { return order_; }

 private:
  double d(std::size_t a, std::size_t b) const {
    return inst_.distance(route_[a], route_[b]);
  }
  static bool gains(double delta) { return delta < -1e-10; }

  bool two_opt() {
    const auto k = order_.size();
    for (std::size_t i = 1; i + 1 <= k; ++i) {
      for (std::size_t j = i + 1; j <= k; ++j) {
        double delta = d(i - 1, j) + d(i, j + 1) - d(i - 1, i) - d(j, j + 1);
        if (gains(delta)) {
          std::reverse(route_.begin() + i, route_.begin() + j + 1);
          std::reverse(order_.begin() + (i - 1), order_.begin() + j);
          return true;
        }
      }
    }
    return false;
  }

  bool or_opt() {
    const auto k = order_.size();
    for (std::size_t len = 1; len <= 3 && len < k; ++len) {
      for (std::size_t i = 1; i + len - 1 <= k; ++i) {
        const std::size_t j = i + len - 1;  // segment route_[i..j]
        const double removed = d(i - 1, i) + d(j, j + 1) - d(i - 1, j + 1);
        // insert between p and p+1, both outside the segment
        for (std::size_t p = 0; p <= k; ++p) {
          if (p + 1 >= i && p <= j) continue;
          const double base = d(p, p + 1);
          const double fwd = d(p, i) + d(j, p + 1) - base;
          const double rev = d(p, j) + d(i, p + 1) - base;
          const bool reversed = rev < fwd;
          if (gains(std::min(fwd, rev) - removed)) {
            move_segment(i, j, p, reversed);
            return true;
          }
        }
      }
    }
    return false;
  }

  void move_segment(std::size_t i, std::size_t j, std::size_t p,
                    bool reversed) {
    std::vector<SiteIndex> seg(route_.begin() + i, route_.begin() + j + 1);
    std::vector<std::size_t> seg_order(order_.begin() + (i - 1),
                                       order_.begin() + j);
    if (reversed) {
      std::reverse(seg.begin(), seg.end());
      std::reverse(seg_order.begin(), seg_order.end());
    }
    route_.erase(route_.begin() + i, route_.begin() + j + 1);
    order_.erase(order_.begin() + (i - 1), order_.begin() + j);
    // p indexed the old route; it shifts left if it followed the segment
    const std::size_t at = (p > j ? p - seg.size() : p) + 1;
    route_.insert(route_.begin() + at, seg.begin(), seg.end());
    order_.insert(order_.begin() + (at - 1), seg_order.begin(),
                  seg_order.end());
  }

  const Instance& inst_;
  std::vector<SiteIndex> route_;    // depot, clients..., depot
  std::vector<std::size_t> order_;  // sequence index per client position
};

}  // namespace

Tour improve_tour(const Instance& inst, Tour tour) {
  if (tour.sequence.size() < 3) return tour;
  TourImprover improver(inst, tour);
  improver.run();
  Tour out;
  out.facility = tour.facility;
  for (auto i : improver.order()) {
    out.sequence.push_back(tour.sequence[i]);
    out.service.push_back(tour.service[i]);
  }
  if (tour_cost(inst, out) > tour_cost(inst, tour)) return tour;
  return out;
}

}  // namespace clr
