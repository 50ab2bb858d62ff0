#include "clr/generator.hpp"

#include <algorithm>
#include <cmath>

namespace clr::gen {

Stream::Stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  engine_.seed(seq);
}

double Stream::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::int64_t Stream::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(next());
  // reject the incomplete final block
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

char level_code(Level x) {
  switch (x) {
    case Level::s: return 's';
    case Level::m: return 'm';
    case Level::l: return 'l';
  }
  return '?';
}

Level parse_level(char c) {
  switch (c) {
    case 's': return Level::s;
    case 'm': return Level::m;
    case 'l': return Level::l;
  }
  throw InputError(std::string("level must be s, m or l, got '") + c + "'");
}

Rational vehicle_capacity(Level x) {
  constexpr std::int64_t v[] = {70, 150, 300};
  return v[static_cast<int>(x)];
}

Rational facility_capacity(Level x) {
  constexpr std::int64_t v[] = {400, 600, 1200};
  return v[static_cast<int>(x)];
}

std::pair<double, double> cost_range(Level x) {
  switch (x) {
    case Level::s: return {2.0, 4.0};
    case Level::m: return {200.0, 400.0};
    case Level::l: return {20000.0, 40000.0};
  }
  return {0.0, 0.0};
}

std::size_t num_facilities(std::size_t n) {
  if (n == 50) return 5;
  if (n == 150) return 10;
  return n / 20;
}

std::string instance_name(const GenParams& p) {
  return std::to_string(p.n) + "-" + std::to_string(p.conglomerates) + "-" +
         level_code(p.vehicle) + level_code(p.cost) + level_code(p.capacity);
}

int cell_of(double x, double y) {
  auto idx = [](double t) {
    return std::clamp(static_cast<int>(t * 3.0 / 1000.0), 0, 2);
  };
  return 3 * idx(y) + idx(x);
}

namespace {

constexpr double side = 1000.0 / 3.0;

// Cell per point: 80% spread randomly over the conglomeration cells, the
// rest round-robin over the others; then positions uniform in the cells.
std::vector<std::pair<double, double>> place(std::size_t count,
                                             const std::vector<int>& hot,
                                             Stream& rng) {
  std::vector<std::pair<double, double>> out(count);
  if (hot.empty()) {
    for (auto& pt : out) {
      pt.first = rng.uniform(0.0, 1000.0);
      pt.second = rng.uniform(0.0, 1000.0);
    }
    return out;
  }
  std::vector<int> cold;
  for (int c = 0; c < 9; ++c) {
    if (std::find(hot.begin(), hot.end(), c) == hot.end()) cold.push_back(c);
  }
  const auto dense = static_cast<std::size_t>(std::llround(0.8 * count));
  std::vector<int> cells(count);
  for (std::size_t i = 0; i < count; ++i) {
    cells[i] = i < dense
                   ? hot[static_cast<std::size_t>(rng.integer(
                         0, static_cast<std::int64_t>(hot.size()) - 1))]
                   : cold[(i - dense) % cold.size()];
  }
  rng.shuffle(cells);
  for (std::size_t i = 0; i < count; ++i) {
    const int row = cells[i] / 3, col = cells[i] % 3;
    out[i].first = col * side + rng.uniform() * side;
    out[i].second = row * side + rng.uniform() * side;
  }
  return out;
}

}  // namespace

Generated generate(const GenParams& p) {
  if (std::find(sizes.begin(), sizes.end(), p.n) == sizes.end()) {
    throw InputError("instance size " + std::to_string(p.n) +
                     " is not one of the generator sizes");
  }
  if (p.conglomerates != 0 && p.conglomerates != 3 && p.conglomerates != 5) {
    throw InputError("conglomerates must be 0, 3 or 5");
  }
  Generated g{Instance::euclidean("", {}, {}, 1), {}, 0};
  const auto m = num_facilities(p.n);
  const auto cap = facility_capacity(p.capacity);
  const auto [cost_lo, cost_hi] = cost_range(p.cost);

  for (std::uint64_t seed = p.seed;; ++seed) {
    Stream cell_rng(seed, 0), client_rng(seed, 1), facility_rng(seed, 2),
        demand_rng(seed, 3), cost_rng(seed, 4);
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
    cell_rng.shuffle(all);
    std::vector<int> hot(all.begin(), all.begin() + p.conglomerates);
    std::sort(hot.begin(), hot.end());

    auto client_pts = place(p.n, hot, client_rng);
    auto facility_pts = place(m, hot, facility_rng);
    std::vector<ClientData> clients(p.n);
    Rational demand = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
      clients[i].x = client_pts[i].first;
      clients[i].y = client_pts[i].second;
      clients[i].demand = demand_rng.integer(10, 20);
      demand += clients[i].demand;
    }
    std::vector<FacilityData> facilities(m);
    for (std::size_t i = 0; i < m; ++i) {
      facilities[i].x = facility_pts[i].first;
      facilities[i].y = facility_pts[i].second;
      facilities[i].capacity = cap;
      facilities[i].opening_cost = cost_rng.uniform(cost_lo, cost_hi);
    }
    if (demand > cap * static_cast<std::int64_t>(m)) {
      ++g.reseeds;
      continue;
    }
    g.instance = Instance::euclidean(instance_name(p), std::move(facilities),
                                     std::move(clients),
                                     vehicle_capacity(p.vehicle));
    g.conglomerate_cells = std::move(hot);
    return g;
  }
}

std::array<DesignRow, 9> design_rows() {
  using L = Level;
  return {{{0, L::s, L::s, L::s},
           {0, L::m, L::m, L::m},
           {0, L::l, L::l, L::l},
           {3, L::s, L::m, L::l},
           {3, L::m, L::l, L::s},
           {3, L::l, L::s, L::m},
           {5, L::s, L::l, L::m},
           {5, L::m, L::s, L::l},
           {5, L::l, L::m, L::s}}};
}

std::vector<GenParams> xl_design(std::uint64_t seed) {
  std::vector<GenParams> out;
  for (std::size_t n : {2500, 5000, 10000}) {
    for (const auto& row : design_rows()) {
      out.push_back({n, row.conglomerates, row.vehicle, row.cost,
                     row.capacity, seed});
    }
  }
  return out;
}

std::vector<GenParams> full_grid(std::size_t n, std::uint64_t seed) {
  std::vector<GenParams> out;
  constexpr Level levels[] = {Level::s, Level::m, Level::l};
  for (int k : {0, 3, 5}) {
    for (auto a : levels) {
      for (auto b : levels) {
        for (auto c : levels) out.push_back({n, k, a, b, c, seed});
      }
    }
  }
  return out;
}

Instance lemma3_family(std::size_t n) {
  if (n < 2) {
    throw InputError("the hard family needs at least 2 clients");
  }
  const Rational cap(static_cast<std::int64_t>(n) - 1);
  std::vector<FacilityData> facilities{{cap, 0.0, 0.0, 0.0},
                                       {cap, 0.0, 1.0, 0.0}};
  std::vector<ClientData> clients(n, ClientData{Rational(1), 0.0, 0.0});
  return Instance::euclidean("lemma3-" + std::to_string(n),
                             std::move(facilities), std::move(clients), cap);
}

}  // namespace clr::gen
