#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "clr/assignment.hpp"
#include "clr/cfl.hpp"
#include "clr/lowerbounds.hpp"

namespace clr {

enum class Backend { ls, ip };
enum class RoutingPost { double_tree, improved };
enum class CflSolver { local_search, exact };
enum class BoundMode { exact, heuristic, skip };

struct VariantConfig {
  Backend backend = Backend::ls;
  RoutingPost routing = RoutingPost::double_tree;
  Rational epsilon = 1;
  cfl::Mode cfl_mode = cfl::Mode::clustered;
  bool free_f1 = true;
  CflSolver cfl_solver = CflSolver::local_search;
  // Approximation factor assumed for a heuristic CFL backend; only used to
  // report the guarantee.
  double alpha = 3.0;
  // Step 2 limits (local search or IP branch-and-bound).
  Budget budget;
  BoundMode bounds = BoundMode::exact;
  Budget bound_budget;
  std::size_t exact_cfl_cap = 50'000;
  std::uint64_t seed = 0;

  std::string name() const;
};

// "ls-dts", "ip-dts", "ls-lkh", "ip-lkh". Throws InputError otherwise.
VariantConfig variant(std::string_view name);

// Budgets by instance size: none up to 200 clients, then 60/180, 90/270
// and 120/360 minutes (no improvement / total) for up to 600, up to 1000
// and larger instances. Branch-and-bound searches also get a node cap.
Budget default_budget(std::size_t num_clients);

struct Certificate {
  double theorem_bound = 0.0;  // 4L′ + (2α/ε)L̃
  double alpha = 1.0;
  bool holds = false;
};

// α is 1 when the CFL bound is certified, otherwise `heuristic_alpha`.
// Without a CFL bound the certificate cannot hold.
Certificate certify(double cost, const BoundReport& bounds,
                    const Rational& epsilon, double heuristic_alpha);

struct StepTimes {
  double bounds = 0.0;
  double cluster = 0.0;
  double assign = 0.0;
  double route = 0.0;
  double total = 0.0;
};

struct RunResult {
  Solution solution;
  Evaluation evaluation;
  BoundReport bounds;
  Certificate certificate;
  StepTimes times;

  Clustering clustering;
  ClusterAssignment assignment;
  std::vector<FacilityId> f2;
  std::optional<cfl::CflSolution> cfl;  // step 2 CFL solution (LS path)
  double lp_objective = 0.0;            // LS path, before rounding
  std::size_t rounding_iterations = 0;
  bool facilities_added = false;  // heuristic CFL left F′ short
  bool interrupted = false;
  Rational gamma = 1;
};

// Steps 1 to 3 for one configuration. Throws InfeasibleError when the
// total demand exceeds the total capacity.
RunResult run(const Instance& inst, const VariantConfig& cfg);

}  // namespace clr
