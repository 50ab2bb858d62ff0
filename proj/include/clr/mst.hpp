#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "clr/model.hpp"

namespace clr {

// Graph on {r} ∪ F ∪ C used by the spanning tree bound. Node 0 is the
// artificial root r, nodes 1..|F| the facilities, then the clients.
// Weights: c'(r,w) = 0, c'(v,w) = c(v,w) + f(w)/2, c'(v,v') = c(v,v').
// There are no facility-facility or root-client edges.
class AugmentedGraph {
 public:
  using Node = std::uint32_t;
  static constexpr Node root = 0;

  explicit AugmentedGraph(const Instance& inst) : inst_(&inst) {}

  std::size_t num_nodes() const { return 1 + inst_->num_sites(); }
  bool is_facility(Node a) const {
    return a >= 1 && a <= inst_->num_facilities();
  }
  bool is_client(Node a) const { return a > inst_->num_facilities(); }
  Node node(FacilityId w) const { return 1 + w.value; }
  Node node(ClientId v) const {
    return static_cast<Node>(1 + inst_->num_facilities() + v.value);
  }
  FacilityId facility(Node a) const { return FacilityId{a - 1}; }
  ClientId client(Node a) const {
    return ClientId{static_cast<std::uint32_t>(a - 1 -
                                               inst_->num_facilities())};
  }
  // Instance site of a non-root node.
  SiteIndex site(Node a) const { return a - 1; }

  std::optional<double> weight(Node a, Node b) const;

 private:
  const Instance* inst_;
};

struct TreeEdge {
  std::uint32_t parent;
  std::uint32_t child;
  bool operator==(const TreeEdge&) const = default;
};

struct MstResult {
  double weight = 0.0;          // c'(T')
  std::vector<TreeEdge> edges;  // rooted at r, in augmented node ids
};

// Minimum spanning tree of the augmented graph. Edges are totally ordered
// by (weight, smaller endpoint, larger endpoint), so the tree is unique and
// always contains every {r, w}.
MstResult mst_lower_bound(const Instance& inst);

}  // namespace clr
