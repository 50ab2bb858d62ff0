#include "clr/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace clr {

Instance Instance::euclidean(std::string name,
                             std::vector<FacilityData> facilities,
                             std::vector<ClientData> clients,
                             Rational vehicle_capacity) {
  Instance inst;
  inst.name_ = std::move(name);
  inst.facilities_ = std::move(facilities);
  inst.clients_ = std::move(clients);
  inst.vehicle_capacity_ = vehicle_capacity;
  return inst;
}

Instance Instance::with_matrix(std::string name,
                               std::vector<FacilityData> facilities,
                               std::vector<ClientData> clients,
                               Rational vehicle_capacity,
                               std::vector<double> matrix) {
  const auto n = facilities.size() + clients.size();
  if (matrix.size() != n * n) {
    throw InputError("distance matrix must have " + std::to_string(n * n) +
                     " entries, got " + std::to_string(matrix.size()));
  }
  Instance inst;
  inst.name_ = std::move(name);
  inst.facilities_ = std::move(facilities);
  inst.clients_ = std::move(clients);
  inst.vehicle_capacity_ = vehicle_capacity;
  inst.matrix_ = std::move(matrix);
  if (n == 0) {
    // an empty matrix means Euclidean; nothing to distinguish
    inst.matrix_.clear();
  }
  return inst;
}

double Instance::distance(SiteIndex a, SiteIndex b) const {
  if (!matrix_.empty()) {
    return matrix_[static_cast<std::size_t>(a) * num_sites() + b];
  }
  const auto nf = static_cast<SiteIndex>(facilities_.size());
  double ax, ay, bx, by;
  if (a < nf) {
    ax = facilities_[a].x;
    ay = facilities_[a].y;
  } else {
    ax = clients_[a - nf].x;
    ay = clients_[a - nf].y;
  }
  if (b < nf) {
    bx = facilities_[b].x;
    by = facilities_[b].y;
  } else {
    bx = clients_[b - nf].x;
    by = clients_[b - nf].y;
  }
  const double dx = ax - bx, dy = ay - by;
  return std::sqrt(dx * dx + dy * dy);
}

Rational Instance::total_demand() const {
  Rational sum = 0;
  for (const auto& c : clients_) {
    sum += c.demand;
  }
  return sum;
}

Rational Instance::total_capacity() const {
  Rational sum = 0;
  for (const auto& f : facilities_) {
    sum += f.capacity;
  }
  return sum;
}

Rational Tour::load() const {
  Rational sum = 0;
  for (const auto& s : service) {
    sum += s;
  }
  return sum;
}

std::vector<std::string> validate_instance(const Instance& inst,
                                           std::uint64_t sample_seed) {
  std::vector<std::string> out;
  if (inst.vehicle_capacity() <= 0) {
    out.push_back("vehicle capacity must be positive, got " +
                  format_rational(inst.vehicle_capacity()));
  }
  for (std::size_t v = 0; v < inst.num_clients(); ++v) {
    if (inst.clients()[v].demand <= 0) {
      out.push_back("client " + std::to_string(v) +
                    ": nonpositive demand " +
                    format_rational(inst.clients()[v].demand));
    }
  }
  for (std::size_t w = 0; w < inst.num_facilities(); ++w) {
    const auto& f = inst.facilities()[w];
    if (f.capacity <= 0) {
      out.push_back("facility " + std::to_string(w) +
                    ": nonpositive capacity " + format_rational(f.capacity));
    }
    if (!(f.opening_cost >= 0.0) || !std::isfinite(f.opening_cost)) {
      out.push_back("facility " + std::to_string(w) +
                    ": invalid opening cost");
    }
  }

  const auto n = static_cast<SiteIndex>(inst.num_sites());
  if (inst.is_euclidean()) {
    // Euclidean distances are a metric by construction; only coordinates
    // can break them.
    auto finite = [](double x, double y) {
      return std::isfinite(x) && std::isfinite(y);
    };
    for (std::size_t w = 0; w < inst.num_facilities(); ++w) {
      const auto& f = inst.facilities()[w];
      if (!finite(f.x, f.y)) {
        out.push_back("facility " + std::to_string(w) +
                      ": non-finite coordinate");
      }
    }
    for (std::size_t v = 0; v < inst.num_clients(); ++v) {
      const auto& c = inst.clients()[v];
      if (!finite(c.x, c.y)) {
        out.push_back("client " + std::to_string(v) +
                      ": non-finite coordinate");
      }
    }
    return out;
  }

  for (SiteIndex a = 0; a < n; ++a) {
    if (inst.distance(a, a) != 0.0) {
      out.push_back("c(" + std::to_string(a) + "," + std::to_string(a) +
                    ") != 0");
    }
    for (SiteIndex b = a + 1; b < n; ++b) {
      double ab = inst.distance(a, b);
      if (!(ab >= 0.0) || !std::isfinite(ab)) {
        out.push_back("c(" + std::to_string(a) + "," + std::to_string(b) +
                      ") is negative or not finite");
      }
      if (std::abs(ab - inst.distance(b, a)) > cost_tolerance) {
        out.push_back("asymmetric: c(" + std::to_string(a) + "," +
                      std::to_string(b) + ") != c(" + std::to_string(b) +
                      "," + std::to_string(a) + ")");
      }
    }
  }

  auto check = [&](SiteIndex a, SiteIndex b, SiteIndex m) {
    double direct = inst.distance(a, b);
    double via = inst.distance(a, m) + inst.distance(m, b);
    if (direct > via + cost_tolerance * std::max(1.0, via)) {
      std::ostringstream msg;
      msg << "triangle inequality: c(" << a << "," << b << ")=" << direct
          << " > c(" << a << "," << m << ")+c(" << m << "," << b
          << ")=" << via;
      out.push_back(msg.str());
    }
  };
  if (n <= 300) {
    for (SiteIndex a = 0; a < n; ++a) {
      for (SiteIndex b = a + 1; b < n; ++b) {
        for (SiteIndex m = 0; m < n; ++m) {
          if (m != a && m != b) {
            check(a, b, m);
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<SiteIndex> pick(0, n - 1);
    for (std::size_t i = 0; i < 10 * static_cast<std::size_t>(n); ++i) {
      SiteIndex a = pick(rng), b = pick(rng), m = pick(rng);
      if (a != b && m != a && m != b) {
        check(a, b, m);
      }
    }
  }
  return out;
}

double tour_cost(const Instance& inst, const Tour& tour) {
  if (tour.sequence.empty()) {
    return 0.0;
  }
  const SiteIndex depot = inst.site(tour.facility);
  double cost = inst.distance(depot, inst.site(tour.sequence.front()));
  for (std::size_t i = 0; i + 1 < tour.sequence.size(); ++i) {
    cost += inst.distance(inst.site(tour.sequence[i]),
                          inst.site(tour.sequence[i + 1]));
  }
  cost += inst.distance(inst.site(tour.sequence.back()), depot);
  return cost;
}

Evaluation evaluate(const Instance& inst, const Solution& sol,
                    const Rational& slack_epsilon) {
  const auto nf = inst.num_facilities();
  const auto nc = inst.num_clients();
  Evaluation ev;
  ev.facility_load.assign(nf, Rational(0));

  std::vector<char> is_open(nf, 0);
  for (auto w : sol.open_facilities) {
    if (w.value >= nf) {
      throw InputError("open facility id " + std::to_string(w.value) +
                       " is unknown");
    }
    if (!is_open[w.value]) {
      is_open[w.value] = 1;
      ev.opening_cost += inst.facility(w).opening_cost;
    }
  }

  std::vector<Rational> served(nc, Rational(0));
  std::vector<std::size_t> visits(nc, 0);
  std::vector<std::string> strict_only;
  const Rational& ubar = inst.vehicle_capacity();

  for (std::size_t t = 0; t < sol.tours.size(); ++t) {
    const auto& tour = sol.tours[t];
    if (tour.facility.value >= nf) {
      throw InputError("tour " + std::to_string(t) +
                       " references unknown facility " +
                       std::to_string(tour.facility.value));
    }
    if (tour.service.size() != tour.sequence.size()) {
      throw InputError("tour " + std::to_string(t) +
                       ": service and sequence lengths differ");
    }
    for (auto v : tour.sequence) {
      if (v.value >= nc) {
        throw InputError("tour " + std::to_string(t) +
                         " references unknown client " +
                         std::to_string(v.value));
      }
    }
    ev.routing_cost += tour_cost(inst, tour);

    if (!is_open[tour.facility.value]) {
      ev.violations.push_back("tour " + std::to_string(t) +
                              " starts at closed facility " +
                              std::to_string(tour.facility.value));
    }
    std::vector<ClientId> seen = tour.sequence;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      ev.violations.push_back("tour " + std::to_string(t) +
                              " visits a client twice");
    }
    Rational load = 0;
    for (std::size_t i = 0; i < tour.sequence.size(); ++i) {
      const auto& s = tour.service[i];
      if (s < 0) {
        ev.violations.push_back("tour " + std::to_string(t) +
                                " has negative service");
      }
      served[tour.sequence[i].value] += s;
      if (s > 0) {
        ++visits[tour.sequence[i].value];
      }
      load += s;
    }
    if (load > ubar) {
      ev.violations.push_back("tour " + std::to_string(t) + " load " +
                              format_rational(load) +
                              " exceeds vehicle capacity " +
                              format_rational(ubar));
    }
    ev.facility_load[tour.facility.value] += load;
  }

  for (std::size_t v = 0; v < nc; ++v) {
    if (served[v] != inst.clients()[v].demand) {
      ev.violations.push_back("client " + std::to_string(v) + " served " +
                              format_rational(served[v]) + " of demand " +
                              format_rational(inst.clients()[v].demand));
    }
    if (visits[v] == 1) {
      ++ev.single_tour_clients;
    }
  }

  const Rational slack = slack_epsilon * ubar;
  for (std::size_t w = 0; w < nf; ++w) {
    const auto& cap = inst.facilities()[w].capacity;
    const auto& load = ev.facility_load[w];
    if (load > cap) {
      double excess = to_double((load - cap) / cap);
      ev.max_relative_excess = std::max(ev.max_relative_excess, excess);
      std::string msg = "facility " + std::to_string(w) + " load " +
                        format_rational(load) + " exceeds capacity " +
                        format_rational(cap);
      if (load > cap + slack) {
        ev.violations.push_back(msg + " + slack " + format_rational(slack));
      } else {
        strict_only.push_back(std::move(msg));
      }
    }
  }

  ev.total_cost = ev.opening_cost + ev.routing_cost;
  ev.feasible_relaxed = ev.violations.empty();
  ev.feasible_strict = ev.feasible_relaxed && strict_only.empty();
  return ev;
}

}  // namespace clr
