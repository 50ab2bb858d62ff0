#include "clr/mst.hpp"

#include <limits>
#include <tuple>

namespace clr {

std::optional<double> AugmentedGraph::weight(Node a, Node b) const {
  if (a == b) {
    return std::nullopt;
  }
  if (a > b) {
    std::swap(a, b);
  }
  if (a == root) {
    if (is_facility(b)) {
      return 0.0;
    }
    return std::nullopt;
  }
  if (is_facility(a) && is_facility(b)) {
    return std::nullopt;
  }
  double c = inst_->distance(site(a), site(b));
  if (is_facility(a)) {
    c += inst_->facility(facility(a)).opening_cost / 2.0;
  }
  return c;
}

MstResult mst_lower_bound(const Instance& inst) {
  AugmentedGraph g(inst);
  const auto n = g.num_nodes();
  if (inst.num_facilities() == 0 && inst.num_clients() > 0) {
    throw InputError("instance has clients but no facilities");
  }

  using Key = std::tuple<double, std::uint32_t, std::uint32_t>;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<Key> key(n, Key{inf, 0, 0});
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<char> in_tree(n, 0);

  MstResult out;
  out.edges.reserve(n > 0 ? n - 1 : 0);
  in_tree[AugmentedGraph::root] = 1;
  auto relax_from = [&](std::uint32_t u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      auto w = g.weight(u, v);
      if (!w) continue;
      Key k{*w, std::min(u, v), std::max(u, v)};
      if (k < key[v]) {
        key[v] = k;
        parent[v] = u;
      }
    }
  };
  relax_from(AugmentedGraph::root);
  for (std::size_t added = 1; added < n; ++added) {
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!in_tree[v] && std::get<0>(key[v]) < inf &&
          (!found || key[v] < key[best])) {
        best = v;
        found = true;
      }
    }
    if (!found) {
      throw InputError("augmented graph is disconnected");
    }
    in_tree[best] = 1;
    out.weight += std::get<0>(key[best]);
    out.edges.push_back({parent[best], best});
    relax_from(best);
  }
  return out;
}

}  // namespace clr
