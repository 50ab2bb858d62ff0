#include <doctest.h>

#include <random>

#include "clr/clustering.hpp"
#include "fixtures.hpp"

using namespace clr;

namespace {

Clustering run_clustering(const Instance& inst, Rational eps) {
  return cluster(preprocess(inst, mst_lower_bound(inst), eps));
}

}  // namespace

TEST_CASE("heavy clients split into equal leaves") {
  // facility - big client (d=10) - small client (d=3), ū̄ = 4
  const auto inst = Instance::euclidean(
      "split", {{Rational(20), 0.0, 0, 0}},
      {{Rational(10), 1, 0}, {Rational(3), 2, 0}}, Rational(4));
  const auto tree = preprocess(inst, mst_lower_bound(inst), 1);
  CHECK(tree.leaf_cap == 4);
  std::size_t big_leaves = 0, small_leaves = 0, dummies = 0;
  for (const auto& node : tree.nodes) {
    if (node.kind == NodeKind::dummy) ++dummies;
    if (node.kind != NodeKind::client) continue;
    if (node.origin == 0) {
      ++big_leaves;
      CHECK(node.demand == Rational(10, 3));
    } else {
      ++small_leaves;
      CHECK(node.demand == 3);
    }
  }
  CHECK(big_leaves == 3);
  CHECK(small_leaves == 1);
  CHECK(dummies == 1);
  for (std::size_t a = 0; a < tree.size(); ++a) {
    if (tree.nodes[a].kind == NodeKind::client) CHECK(tree.children[a].empty());
  }
}

TEST_CASE("two client line forms one residual cluster") {
  const auto inst = testing::two_client_line();
  const auto cl = run_clustering(inst, 1);
  REQUIRE(cl.clusters.size() == 1);
  CHECK(cl.extractions == 0);
  CHECK(cl.clusters[0].demand == 7);
  CHECK(cl.clusters[0].residual);
  CHECK(cl.clusters[0].facility == FacilityId{0});
  CHECK(tree_cost(inst, cl.tree, cl.clusters[0].edges) == doctest::Approx(2.0));
  REQUIRE(cl.f1.size() == 1);
  CHECK(cl.f1[0] == FacilityId{0});
  CHECK(cluster_facility_costs(inst, cl)[0] == 0.0);
  CHECK(verify_clustering(inst, cl).empty());
}

TEST_CASE("hard family needs one extraction") {
  const auto inst = gen::lemma3_family(5);
  const auto cl = run_clustering(inst, 1);
  CHECK(verify_clustering(inst, cl).empty());
  CHECK(cl.extractions >= 1);
  bool extracted = false;
  for (const auto& c : cl.clusters) {
    if (c.residual) continue;
    extracted = true;
    CHECK(c.demand >= 2);
    CHECK(c.demand <= 4);
  }
  CHECK(extracted);
  REQUIRE(cl.f1.size() == 1);
  CHECK(cl.f1[0] == FacilityId{0});
}

TEST_CASE("demand exactly at the cap is not cut") {
  const auto inst = Instance::euclidean("cap", {{Rational(4), 0.0, 0, 0}},
                                        {{Rational(4), 3, 4}}, Rational(4));
  const auto cl = run_clustering(inst, 1);
  REQUIRE(cl.clusters.size() == 1);
  CHECK(cl.clusters[0].residual);
  CHECK(cl.clusters[0].demand == 4);
  CHECK(cl.extractions == 0);
}

TEST_CASE("clustering guarantees on random instances") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 80; ++i) {
    constexpr int ks[] = {0, 3, 5};
    const auto inst = gen::generate({50, ks[i % 3], gen::Level(i % 3),
                                     gen::Level((i / 3) % 3), gen::Level::s,
                                     std::uint64_t(i + 1)})
                          .instance;
    for (Rational eps : {Rational(1, 3), Rational(1, 2), Rational(1)}) {
      const auto cl = run_clustering(inst, eps);
      const auto problems = verify_clustering(inst, cl);
      CHECK_MESSAGE(problems.empty(), inst.name());
      Rational total = 0;
      for (const auto& c : cl.clusters) {
        total += c.demand;
        CHECK(c.demand <= cl.leaf_cap);
      }
      CHECK(total == inst.total_demand());
    }
  }
  for (int i = 0; i < 80; ++i) {
    const auto inst = testing::random_tiny(rng);
    const auto cl = run_clustering(inst, Rational(1, 2));
    CHECK(verify_clustering(inst, cl).empty());
  }
}
