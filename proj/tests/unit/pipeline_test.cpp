#include <doctest.h>

#include <random>

#include "clr/oracle.hpp"
#include "clr/pipeline.hpp"
#include "fixtures.hpp"

using namespace clr;

namespace {

VariantConfig exact_ls() {
  auto cfg = variant("ls-dts");
  cfg.cfl_mode = cfl::Mode::raw;
  cfg.free_f1 = false;
  cfg.cfl_solver = CflSolver::exact;
  return cfg;
}

}  // namespace

TEST_CASE("variant names") {
  for (const char* n : {"ls-dts", "ip-dts", "ls-lkh", "ip-lkh"}) {
    CHECK(variant(n).name() == n);
  }
  CHECK(variant("ip-lkh").backend == Backend::ip);
  CHECK(variant("ls-lkh").routing == RoutingPost::improved);
  CHECK_THROWS_AS(variant("lkh"), InputError);
}

TEST_CASE("budgets by size") {
  CHECK(default_budget(200).total_seconds == 0.0);
  CHECK(default_budget(600).no_improve_seconds == 3600.0);
  CHECK(default_budget(1000).total_seconds == 270 * 60.0);
  CHECK(default_budget(2500).total_seconds == 360 * 60.0);
}

TEST_CASE("hard family through both paths") {
  const auto inst = gen::lemma3_family(5);
  const auto ls = run(inst, exact_ls());
  CHECK(ls.evaluation.total_cost == 0.0);
  CHECK(ls.evaluation.feasible_relaxed);
  CHECK_FALSE(ls.evaluation.feasible_strict);
  CHECK(ls.evaluation.facility_load[0] == 5);
  CHECK(ls.certificate.holds);
  CHECK(ls.certificate.theorem_bound == doctest::Approx(1.0));

  const auto ip = run(inst, variant("ip-lkh"));
  CHECK(ip.evaluation.total_cost == doctest::Approx(2.0));
  CHECK(ip.evaluation.feasible_strict);
  CHECK(ip.gamma == 1);
}

TEST_CASE("two client line is solved optimally") {
  const auto inst = testing::two_client_line();
  for (const char* name : {"ls-lkh", "ip-lkh", "ls-dts", "ip-dts"}) {
    const auto r = run(inst, variant(name));
    CHECK(r.evaluation.total_cost == doctest::Approx(9.0));
    CHECK(r.evaluation.feasible_strict);
  }
  const auto r = run(inst, exact_ls());
  CHECK(r.certificate.theorem_bound == doctest::Approx(32.4));
  CHECK(r.certificate.alpha == 1.0);
  CHECK(r.certificate.holds);
}

TEST_CASE("certificate rejects an inflated cost") {
  CflBound c;
  c.value = 7.2;
  c.certified = true;
  const auto b = make_bound_report(4.5, c);
  CHECK(certify(32.4, b, 1, 3).holds);
  CHECK_FALSE(certify(33.0, b, 1, 3).holds);
  CHECK(certify(40.0, make_bound_report(4.5, CflBound{7.2, false, {}}), 1, 3)
            .alpha == 3.0);
  CHECK_FALSE(certify(0.0, make_bound_report(4.5, std::nullopt), 1, 3).holds);
}

TEST_CASE("input checks") {
  const auto inst = testing::two_client_line();
  auto cfg = variant("ls-dts");
  cfg.epsilon = 0;
  CHECK_THROWS_AS(run(inst, cfg), InputError);
  cfg.epsilon = Rational(3, 2);
  CHECK_THROWS_AS(run(inst, cfg), InputError);
  const auto short_cap = Instance::euclidean(
      "x", {{Rational(1), 0.0, 0, 0}}, {{Rational(2), 1, 1}}, Rational(2));
  CHECK_THROWS_AS(run(short_cap, variant("ls-dts")), InfeasibleError);
}

TEST_CASE("bifactor guarantee against the oracle") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 60; ++i) {
    const auto inst = testing::random_tiny(rng, 6);
    const double opt = brute_force_opt(inst).opt;
    for (Rational eps : {Rational(1, 2), Rational(1)}) {
      auto cfg = exact_ls();
      cfg.epsilon = eps;
      const auto r = run(inst, cfg);
      const double e = to_double(eps);
      CHECK(r.evaluation.feasible_relaxed);
      CHECK(r.evaluation.total_cost <= (4 + 2 / e) * opt + 1e-9);
      CHECK(r.certificate.holds);
      for (const char* name : {"ls-lkh", "ip-dts", "ip-lkh"}) {
        auto other = variant(name);
        other.epsilon = eps;
        const auto o = run(inst, other);
        // slack may undercut the strict optimum
        if (o.evaluation.feasible_strict) {
          CHECK(o.evaluation.total_cost >= opt - 1e-9);
        }
        const bool ok = o.evaluation.feasible_relaxed || o.gamma > 1;
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("clustered default stays feasible on generated instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst =
        gen::generate({100, 3, gen::Level::s, gen::Level::m, gen::Level::l, seed})
            .instance;
    const auto r = run(inst, variant("ls-lkh"));
    CHECK(r.evaluation.feasible_relaxed);
    CHECK(r.bounds.best_bound > 0.0);
    CHECK(r.evaluation.total_cost >= r.bounds.best_bound);
  }
}
