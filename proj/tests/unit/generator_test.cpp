#include <doctest.h>

#include <set>

#include "clr/generator.hpp"
#include "clr/io.hpp"

using namespace clr;
using namespace clr::gen;

TEST_CASE("streams are reproducible and independent") {
  Stream a(42, 0), b(42, 0), c(42, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  Stream s(9, 3);
  for (int i = 0; i < 2000; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto k = s.integer(10, 20);
    CHECK(k >= 10);
    CHECK(k <= 20);
  }
}

TEST_CASE("facility counts and names") {
  CHECK(num_facilities(50) == 5);
  CHECK(num_facilities(150) == 10);
  CHECK(num_facilities(1000) == 50);
  GenParams p{200, 5, Level::l, Level::s, Level::m, 1};
  CHECK(instance_name(p) == "200-5-lsm");
  CHECK(vehicle_capacity(Level::m) == 150);
  CHECK(facility_capacity(Level::l) == 1200);
  CHECK(cost_range(Level::l).first == 20000.0);
}

TEST_CASE("generated instances follow the recipe") {
  for (int k : {0, 3, 5}) {
    GenParams p{300, k, Level::s, Level::l, Level::s, 3};
    const auto g = generate(p);
    const auto& inst = g.instance;
    CHECK(inst.num_clients() == 300);
    CHECK(inst.num_facilities() == 15);
    CHECK(inst.vehicle_capacity() == 70);
    CHECK(g.conglomerate_cells.size() == std::size_t(k));
    CHECK(inst.total_capacity() >= inst.total_demand());
    for (const auto& c : inst.clients()) {
      CHECK(c.demand >= 10);
      CHECK(c.demand <= 20);
      CHECK(c.demand.denominator() == 1);
      CHECK(c.x >= 0.0);
      CHECK(c.x <= 1000.0);
    }
    for (const auto& f : inst.facilities()) {
      CHECK(f.opening_cost >= 20000.0);
      CHECK(f.opening_cost <= 40000.0);
      CHECK(f.capacity == 400);
    }
  }
}

TEST_CASE("same seed gives identical files") {
  GenParams p{100, 3, Level::m, Level::m, Level::m, 77};
  const auto a = io::write_instance(generate(p).instance);
  CHECK(a == io::write_instance(generate(p).instance));
  p.seed = 78;
  CHECK(a != io::write_instance(generate(p).instance));
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(generate({100, 4, Level::s, Level::s, Level::s, 1}),
                  InputError);
  CHECK_THROWS_AS(generate({123, 0, Level::s, Level::s, Level::s, 1}),
                  InputError);
  CHECK_THROWS_AS(parse_level('x'), InputError);
  CHECK(parse_level('m') == Level::m);
  CHECK(level_code(Level::l) == 'l');
}

TEST_CASE("design tables") {
  const auto rows = design_rows();
  CHECK(rows[3].conglomerates == 3);
  CHECK(rows[3].cost == Level::s);
  CHECK(rows[3].vehicle == Level::m);
  CHECK(rows[3].capacity == Level::l);
  std::set<std::tuple<int, int, int, int>> seen;
  for (const auto& r : rows) {
    seen.insert({r.conglomerates, int(r.cost), int(r.vehicle), int(r.capacity)});
  }
  CHECK(seen.size() == 9);
  const auto xl = xl_design();
  CHECK(xl.size() == 27);
  CHECK(xl.front().n == 2500);
  CHECK(xl.back().n == 10000);
  CHECK(full_grid(50).size() == 81);
}

TEST_CASE("hard family") {
  const auto inst = lemma3_family(5);
  CHECK(inst.vehicle_capacity() == 4);
  CHECK(inst.facilities()[0].capacity == 4);
  CHECK(inst.facilities()[1].capacity == 4);
  for (std::uint32_t v = 0; v < 5; ++v) {
    CHECK(inst.distance(ClientId{v}, FacilityId{1}) == 1.0);
    CHECK(inst.distance(ClientId{v}, FacilityId{0}) == 0.0);
  }
  CHECK(lemma3_family(2).vehicle_capacity() == 1);
  CHECK_THROWS_AS(lemma3_family(1), InputError);
}
