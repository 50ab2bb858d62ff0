#include "clr/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace clr {

SiteIndex WorkTree::site(const Instance& inst, std::uint32_t node) const {
  const auto& n = nodes[node];
  if (n.kind == NodeKind::facility) {
    return inst.site(FacilityId{n.origin});
  }
  return inst.site(ClientId{n.origin});
}

WorkTree preprocess(const Instance& inst, const MstResult& mst,
                    const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) {
    throw InputError("epsilon must lie in (0, 1], got " +
                     format_rational(epsilon));
  }
  const auto nf = static_cast<std::uint32_t>(inst.num_facilities());
  const auto nc = static_cast<std::uint32_t>(inst.num_clients());
  const std::uint32_t base = 1 + nf + nc;
  if (mst.edges.size() + 1 != base) {
    throw InputError("spanning tree does not match the instance");
  }

  WorkTree t;
  t.leaf_cap = epsilon * inst.vehicle_capacity();
  t.nodes.resize(base);
  t.children.resize(base);
  t.nodes[0].kind = NodeKind::root;
  for (std::uint32_t w = 0; w < nf; ++w) {
    t.nodes[1 + w] = {NodeKind::facility, w, Rational(0), -1};
  }
  for (std::uint32_t v = 0; v < nc; ++v) {
    t.nodes[1 + nf + v] = {NodeKind::client, v, inst.clients()[v].demand, -1};
  }
  for (const auto& e : mst.edges) {
    t.nodes[e.child].parent = e.parent;
    t.children[e.parent].push_back(e.child);
  }
  for (std::uint32_t w = 0; w < nf; ++w) {
    if (t.nodes[1 + w].parent != 0) {
      throw InputError("spanning tree lacks the root edge of facility " +
                       std::to_string(w));
    }
  }

  for (std::uint32_t v = 0; v < nc; ++v) {
    const std::uint32_t id = 1 + nf + v;
    const Rational d = inst.clients()[v].demand;
    const bool leaf = t.children[id].empty();
    if (leaf && d <= t.leaf_cap) {
      continue;
    }
    t.nodes[id].kind = NodeKind::dummy;
    t.nodes[id].demand = 0;
    const auto pieces = ceil_div(d, t.leaf_cap).numerator();
    const Rational share = d / pieces;
    for (std::int64_t k = 0; k < pieces; ++k) {
      auto leaf_id = static_cast<std::uint32_t>(t.nodes.size());
      t.nodes.push_back({NodeKind::client, v, share, id});
      t.children.emplace_back();
      t.children[id].push_back(leaf_id);
    }
  }

  // subtree demands, children before parents
  t.subtree_demand.assign(t.nodes.size(), Rational(0));
  std::vector<std::uint32_t> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto c : t.children[order[i]]) {
      order.push_back(c);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    t.subtree_demand[*it] += t.nodes[*it].demand;
    if (t.nodes[*it].parent >= 0) {
      t.subtree_demand[static_cast<std::size_t>(t.nodes[*it].parent)] +=
          t.subtree_demand[*it];
    }
  }
  return t;
}

namespace {

// Collects nodes, edges and client leaves of the current subtree at `top`.
void collect_subtree(const WorkTree& t,
                     const std::vector<std::vector<std::uint32_t>>& children,
                     std::uint32_t top, Cluster& out) {
  std::vector<std::uint32_t> stack{top};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    out.nodes.push_back(v);
    if (t.nodes[v].kind == NodeKind::client) {
      out.leaves.push_back(v);
    }
    const auto& kids = children[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      out.edges.push_back({v, *it});
      stack.push_back(*it);
    }
  }
}

}  // namespace

Clustering cluster(WorkTree work) {
  Clustering out;
  out.leaf_cap = work.leaf_cap;
  const Rational cap = work.leaf_cap;
  const Rational half = cap / 2;
  const auto n = work.size();

  auto children = work.children;
  auto sub = work.subtree_demand;

  std::vector<std::size_t> depth(n, 0);
  std::vector<std::uint32_t> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto c : children[order[i]]) {
      depth[c] = depth[order[i]] + 1;
      order.push_back(c);
    }
  }
  std::vector<std::uint32_t> by_depth(order.begin() + 1, order.end());
  std::sort(by_depth.begin(), by_depth.end(), [&](auto a, auto b) {
    if (depth[a] != depth[b]) return depth[a] > depth[b];
    return a < b;
  });

  // Every node deeper than the current one already carries at most `cap`,
  // so the current node's children all qualify for selection.
  for (auto vp : by_depth) {
    while (sub[vp] > cap) {
      std::vector<std::uint32_t> kids = children[vp];
      std::sort(kids.begin(), kids.end(), [&](auto a, auto b) {
        if (sub[a] != sub[b]) return sub[a] > sub[b];
        return a < b;
      });
      std::vector<std::uint32_t> picked;
      Rational sum = 0;
      for (auto k : kids) {
        if (sub[k] == 0) continue;
        if (sum + sub[k] <= cap) {
          picked.push_back(k);
          sum += sub[k];
        }
        if (sum >= half) break;
      }
      if (sum < half || picked.empty()) {
        throw ContractError("clustering: no child selection reaches cap/2");
      }

      Cluster c;
      c.demand = sum;
      std::sort(picked.begin(), picked.end());
      for (auto k : picked) {
        c.edges.push_back({vp, k});
        collect_subtree(work, children, k, c);
      }
      c.nodes.push_back(vp);
      out.clusters.push_back(std::move(c));
      ++out.extractions;

      auto& list = children[vp];
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](auto k) {
                                  return std::binary_search(
                                      picked.begin(), picked.end(), k);
                                }),
                 list.end());
      for (std::int64_t a = vp; a >= 0; a = work.nodes[a].parent) {
        sub[static_cast<std::size_t>(a)] -= sum;
      }
    }
  }

  for (auto w : children[0]) {
    if (sub[w] == 0) {
      continue;
    }
    Cluster c;
    c.residual = true;
    c.facility = FacilityId{work.nodes[w].origin};
    c.demand = sub[w];
    collect_subtree(work, children, w, c);
    out.f1.push_back(*c.facility);
    out.clusters.push_back(std::move(c));
  }
  std::sort(out.f1.begin(), out.f1.end());

  for (std::size_t i = 0; i < out.clusters.size(); ++i) {
    if (out.clusters[i].demand < half) {
      out.small.push_back(i);
    }
  }
  out.tree = std::move(work);
  return out;
}

std::vector<double> cluster_facility_costs(const Instance& inst,
                                           const Clustering& clustering) {
  const auto nf = inst.num_facilities();
  std::vector<double> out(clustering.clusters.size() * nf,
                          std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < clustering.clusters.size(); ++s) {
    // distinct sites only: split leaves share their client's site
    std::vector<SiteIndex> sites;
    for (auto node : clustering.clusters[s].nodes) {
      if (clustering.tree.nodes[node].kind != NodeKind::root) {
        sites.push_back(clustering.tree.site(inst, node));
      }
    }
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    for (std::size_t w = 0; w < nf; ++w) {
      const auto ws = inst.site(FacilityId{static_cast<std::uint32_t>(w)});
      double best = std::numeric_limits<double>::infinity();
      for (auto st : sites) {
        best = std::min(best, inst.distance(st, ws));
      }
      out[s * nf + w] = best;
    }
  }
  return out;
}

double tree_cost(const Instance& inst, const WorkTree& tree,
                 const std::vector<TreeEdge>& edges) {
  double sum = 0.0;
  for (const auto& e : edges) {
    if (e.parent == 0 || e.child == 0) {
      continue;  // root edges have no length
    }
    sum += tree.edge_length(inst, e.parent, e.child);
  }
  return sum;
}

std::vector<std::string> verify_clustering(const Instance& inst,
                                           const Clustering& cl) {
  std::vector<std::string> out;
  const auto& t = cl.tree;
  const Rational half = cl.leaf_cap / 2;

  // demand per original client across clusters
  std::vector<Rational> got(inst.num_clients(), Rational(0));
  std::set<std::uint32_t> leaves_seen;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges_seen;
  std::set<std::pair<std::uint32_t, std::uint32_t>> tree_edges;
  for (std::uint32_t v = 1; v < t.size(); ++v) {
    tree_edges.insert({static_cast<std::uint32_t>(t.nodes[v].parent), v});
  }
  std::map<std::uint32_t, std::size_t> small_facility;

  for (std::size_t s = 0; s < cl.clusters.size(); ++s) {
    const auto& c = cl.clusters[s];
    const std::string tag = "cluster " + std::to_string(s) + ": ";
    Rational d = 0;
    std::set<std::uint32_t> node_set(c.nodes.begin(), c.nodes.end());
    for (auto leaf : c.leaves) {
      if (!leaves_seen.insert(leaf).second) {
        out.push_back(tag + "leaf " + std::to_string(leaf) + " in two clusters");
      }
      if (!node_set.count(leaf)) {
        out.push_back(tag + "leaf outside its tree");
      }
      d += t.nodes[leaf].demand;
      got[t.nodes[leaf].origin] += t.nodes[leaf].demand;
    }
    if (d != c.demand) {
      out.push_back(tag + "recorded demand differs from its leaves");
    }
    if (d > cl.leaf_cap) {
      out.push_back(tag + "demand " + format_rational(d) + " exceeds cap");
    }
    if (!c.residual && d < half) {
      out.push_back(tag + "extracted cluster below cap/2");
    }
    for (const auto& e : c.edges) {
      if (!tree_edges.count({e.parent, e.child})) {
        out.push_back(tag + "edge not in the tree");
      }
      if (!edges_seen.insert({e.parent, e.child}).second) {
        out.push_back(tag + "edge shared with another cluster");
      }
      if (!node_set.count(e.parent) || !node_set.count(e.child)) {
        out.push_back(tag + "edge endpoint missing from node set");
      }
    }
    if (d < half) {
      std::vector<std::uint32_t> facs;
      for (auto node : c.nodes) {
        if (t.nodes[node].kind == NodeKind::facility) {
          facs.push_back(t.nodes[node].origin);
        }
      }
      if (facs.size() != 1) {
        out.push_back(tag + "small cluster without a unique facility");
      } else if (!small_facility.emplace(facs[0], s).second) {
        out.push_back(tag + "small clusters share facility " +
                      std::to_string(facs[0]));
      }
    }
  }
  for (std::size_t v = 0; v < inst.num_clients(); ++v) {
    if (got[v] != inst.clients()[v].demand) {
      out.push_back("client " + std::to_string(v) + " covered " +
                    format_rational(got[v]) + " of " +
                    format_rational(inst.clients()[v].demand));
    }
  }
  return out;
}

}  // namespace clr
