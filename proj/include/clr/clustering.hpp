#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clr/model.hpp"
#include "clr/mst.hpp"

namespace clr {

enum class NodeKind : std::uint8_t { root, facility, dummy, client };

struct WorkNode {
  NodeKind kind = NodeKind::root;
  // Facility or client index this node stands for (unused for the root).
  std::uint32_t origin = 0;
  Rational demand;  // positive on client leaves only
  std::int64_t parent = -1;
};

// The spanning tree after splitting clients: clients only at leaves, every
// leaf demand at most leaf_cap = ε·ū. Node ids 0..|F|+|C| coincide with the
// augmented graph ids; split leaves are appended after them.
struct WorkTree {
  std::vector<WorkNode> nodes;
  std::vector<std::vector<std::uint32_t>> children;
  std::vector<Rational> subtree_demand;
  Rational leaf_cap;

  std::size_t size() const { return nodes.size(); }
  // Location of a non-root node (dummies and leaves sit at their client).
  SiteIndex site(const Instance& inst, std::uint32_t node) const;
  double edge_length(const Instance& inst, std::uint32_t a,
                     std::uint32_t b) const {
    return inst.distance(site(inst, a), site(inst, b));
  }
};

// Requires 0 < epsilon <= 1 and a tree from mst_lower_bound.
WorkTree preprocess(const Instance& inst, const MstResult& mst,
                    const Rational& epsilon);

struct Cluster {
  std::vector<std::uint32_t> leaves;  // client leaves (work node ids)
  std::vector<TreeEdge> edges;        // T_S
  std::vector<std::uint32_t> nodes;   // V(T_S)
  Rational demand;
  bool residual = false;
  std::optional<FacilityId> facility;  // w_S of a residual cluster
};

struct Clustering {
  WorkTree tree;  // the preprocessed tree before any removal
  std::vector<Cluster> clusters;
  std::vector<FacilityId> f1;
  std::vector<std::size_t> small;  // clusters with demand < leaf_cap / 2
  Rational leaf_cap;
  std::size_t extractions = 0;
};

// Repeatedly cuts clusters of demand in [leaf_cap/2, leaf_cap] below the
// deepest overloaded node, then emits one residual cluster per facility
// whose remaining subtree still holds demand.
Clustering cluster(WorkTree work);

// c(S, w) = min over V(T_S) of c(node, w); row-major clusters × facilities.
std::vector<double> cluster_facility_costs(const Instance& inst,
                                           const Clustering& clustering);

double tree_cost(const Instance& inst, const WorkTree& tree,
                 const std::vector<TreeEdge>& edges);

// Violations of the clustering guarantees (partition, caps, disjointness,
// unique facilities of small clusters, lower demand of extracted clusters).
std::vector<std::string> verify_clustering(const Instance& inst,
                                           const Clustering& clustering);

}  // namespace clr
