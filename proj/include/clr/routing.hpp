#pragma once

#include "clr/clustering.hpp"

namespace clr {

// Tour from facility w over the client leaves of one cluster: the cluster
// tree plus an edge from its node closest to w, doubled, walked depth-first
// from w and shortcut to first visits. Leaves of the same client merge into
// one visit.
Tour build_tour(const Instance& inst, const Clustering& clustering,
                std::size_t cluster, FacilityId w);

// 2(c(T_S) + c(S, w)) for the same cluster and facility.
double tour_bound(const Instance& inst, const Clustering& clustering,
                  std::size_t cluster, FacilityId w);

// 2-opt and Or-opt (segments of 1 to 3 clients, either orientation) with
// first improvement until no move helps. Same facility, clients and service;
// the cost never increases.
Tour improve_tour(const Instance& inst, Tour tour);

}  // namespace clr
