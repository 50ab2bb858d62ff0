#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <random>
#include <vector>

#include "clr/model.hpp"

namespace clr::gen {

// 64-bit Mersenne Twister seeded through std::seed_seq with (seed, stream),
// with its own float and integer conversions so that sequences do not
// depend on the standard library's distributions.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t stream);

  std::uint64_t next() { return engine_(); }
  double uniform();                                  // [0, 1)
  double uniform(double lo, double hi);              // [lo, hi)
  std::int64_t integer(std::int64_t lo, std::int64_t hi);  // [lo, hi]

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(i) - 1));
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class Level { s, m, l };

char level_code(Level x);
Level parse_level(char c);

struct GenParams {
  std::size_t n = 100;
  int conglomerates = 0;  // 0, 3 or 5
  Level vehicle = Level::s;
  Level cost = Level::s;
  Level capacity = Level::s;
  std::uint64_t seed = 1;
};

inline constexpr std::array<std::size_t, 15> sizes = {
    50, 100, 150, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 2500, 5000,
    10000};

Rational vehicle_capacity(Level x);   // 70, 150, 300
Rational facility_capacity(Level x);  // 400, 600, 1200
std::pair<double, double> cost_range(Level x);
std::size_t num_facilities(std::size_t n);

// "n-k-abc": vehicle capacity, facility cost, facility capacity.
std::string instance_name(const GenParams& p);

struct Generated {
  Instance instance;
  std::vector<int> conglomerate_cells;  // cell = 3·row + column
  std::size_t reseeds = 0;              // draws rejected for Σd > Σu
};

// Throws InputError on values outside the documented sets.
Generated generate(const GenParams& p);

// 3×3 cell of a point in [0, 1000]².
int cell_of(double x, double y);

// One row of the orthogonal design: conglomerates, facility cost,
// vehicle capacity, facility capacity.
struct DesignRow {
  int conglomerates;
  Level cost;
  Level vehicle;
  Level capacity;
};

std::array<DesignRow, 9> design_rows();

// The 9 rows for each n in {2500, 5000, 10000}.
std::vector<GenParams> xl_design(std::uint64_t seed = 1);

// All 81 parameter combinations for one size.
std::vector<GenParams> full_grid(std::size_t n, std::uint64_t seed = 1);

// n unit clients on facility w1, w2 at distance 1, no opening costs,
// u(w1) = u(w2) = ū = n − 1. Requires n ≥ 2.
Instance lemma3_family(std::size_t n);

}  // namespace clr::gen
