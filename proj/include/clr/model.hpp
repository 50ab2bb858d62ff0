#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clr/common.hpp"

namespace clr {

// Index into V = F ∪ C: facilities occupy [0, |F|), clients [|F|, |F|+|C|).
using SiteIndex = std::uint32_t;

struct FacilityData {
  Rational capacity;
  double opening_cost = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct ClientData {
  Rational demand;
  double x = 0.0;
  double y = 0.0;
};

// A capacitated location routing instance. Immutable after construction.
class Instance {
 public:
  // Distances are Euclidean distances between the given coordinates.
  static Instance euclidean(std::string name,
                            std::vector<FacilityData> facilities,
                            std::vector<ClientData> clients,
                            Rational vehicle_capacity);

  // Distances are taken from a dense (|F|+|C|)^2 row-major matrix, sites
  // ordered facilities first. Coordinates are ignored.
  static Instance with_matrix(std::string name,
                              std::vector<FacilityData> facilities,
                              std::vector<ClientData> clients,
                              Rational vehicle_capacity,
                              std::vector<double> matrix);

  const std::string& name() const { return name_; }
  std::size_t num_facilities() const { return facilities_.size(); }
  std::size_t num_clients() const { return clients_.size(); }
  std::size_t num_sites() const { return facilities_.size() + clients_.size(); }

  const FacilityData& facility(FacilityId w) const {
    return facilities_[w.value];
  }
  const ClientData& client(ClientId v) const { return clients_[v.value]; }
  const std::vector<FacilityData>& facilities() const { return facilities_; }
  const std::vector<ClientData>& clients() const { return clients_; }

  const Rational& vehicle_capacity() const { return vehicle_capacity_; }
  bool is_euclidean() const { return matrix_.empty(); }
  const std::vector<double>& matrix() const { return matrix_; }

  SiteIndex site(FacilityId w) const { return w.value; }
  SiteIndex site(ClientId v) const {
    return static_cast<SiteIndex>(facilities_.size()) + v.value;
  }

  double distance(SiteIndex a, SiteIndex b) const;
  double distance(ClientId v, FacilityId w) const {
    return distance(site(v), site(w));
  }
  double distance(ClientId a, ClientId b) const {
    return distance(site(a), site(b));
  }

  Rational total_demand() const;
  Rational total_capacity() const;

 private:
  Instance() = default;

  std::string name_;
  std::vector<FacilityData> facilities_;
  std::vector<ClientData> clients_;
  Rational vehicle_capacity_;
  std::vector<double> matrix_;
};

struct Tour {
  FacilityId facility;
  std::vector<ClientId> sequence;
  // service[i] is the demand delivered to sequence[i].
  std::vector<Rational> service;

  Rational load() const;
};

struct Solution {
  std::vector<FacilityId> open_facilities;
  std::vector<Tour> tours;
};

struct Evaluation {
  double total_cost = 0.0;
  double routing_cost = 0.0;
  double opening_cost = 0.0;
  std::vector<Rational> facility_load;  // indexed by facility
  double max_relative_excess = 0.0;
  bool feasible_strict = false;
  bool feasible_relaxed = false;  // at the slack passed to evaluate()
  std::size_t single_tour_clients = 0;
  std::vector<std::string> violations;  // against the relaxed slack
};

// Every failing metric triple, demand, capacity or size mismatch, one
// string each. Exhaustive triangle check up to 300 sites, sampled above.
std::vector<std::string> validate_instance(const Instance& inst,
                                           std::uint64_t sample_seed = 1);

// c(w, v1) + Σ c(vi, vi+1) + c(vk, w); zero for an empty sequence.
double tour_cost(const Instance& inst, const Tour& tour);

// Throws InputError if a tour references an unknown facility or client.
// feasible_relaxed uses per-facility capacity u(w) + slack_epsilon·ū.
Evaluation evaluate(const Instance& inst, const Solution& sol,
                    const Rational& slack_epsilon);

}  // namespace clr
