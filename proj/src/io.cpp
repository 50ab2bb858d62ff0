#include "clr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace clr::io {

namespace {

std::string fmt_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string exact(double x) { return fmt_double(x, 17); }

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw InputError("line " + std::to_string(line) + ": bad number '" + s +
                   "'");
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

Rational parse_rat(const std::string& s, std::size_t line) {
  try {
    return parse_rational(s);
  } catch (const InputError& e) {
    throw InputError("line " + std::to_string(line) + ": " + e.what());
  }
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  const double x = parse_double(s, line);
  if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x))) {
    throw InputError("line " + std::to_string(line) + ": bad count '" + s +
                     "'");
  }
  return static_cast<std::size_t>(x);
}

}  // namespace

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  const bool euclid = inst.is_euclidean();
  out << "NAME " << (inst.name().empty() ? "unnamed" : inst.name()) << '\n'
      << "CLIENTS " << inst.num_clients() << '\n'
      << "FACILITIES " << inst.num_facilities() << '\n'
      << "VEHICLE_CAPACITY " << format_rational(inst.vehicle_capacity())
      << '\n'
      << "METRIC " << (euclid ? "EUCLIDEAN" : "MATRIX") << '\n';
  for (std::size_t w = 0; w < inst.num_facilities(); ++w) {
    const auto& f = inst.facilities()[w];
    out << "FACILITY " << w << ' '
        << (euclid ? exact(f.x) + " " + exact(f.y) : std::string("- -"))
        << ' ' << format_rational(f.capacity) << ' ' << exact(f.opening_cost)
        << '\n';
  }
  for (std::size_t v = 0; v < inst.num_clients(); ++v) {
    const auto& c = inst.clients()[v];
    out << "CLIENT " << v << ' '
        << (euclid ? exact(c.x) + " " + exact(c.y) : std::string("- -"))
        << ' ' << format_rational(c.demand) << '\n';
  }
  if (!euclid) {
    out << "MATRIX\n";
    const auto n = inst.num_sites();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        out << (b ? " " : "") << exact(inst.matrix()[a * n + b]);
      }
      out << '\n';
    }
  }
  out << "END\n";
  return out.str();
}

Instance read_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string name = "unnamed";
  std::size_t num_clients = 0, num_facilities = 0;
  bool have_clients = false, have_facilities = false, euclid = true,
       ended = false;
  Rational ubar = 0;
  std::vector<FacilityData> facilities;
  std::vector<ClientData> clients;
  std::vector<double> matrix;
  bool in_matrix = false;

  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    if (ended) {
      throw InputError("line " + std::to_string(line) + ": text after END");
    }
    const auto& key = tok[0];
    if (in_matrix && key != "END") {
      for (const auto& t : tok) matrix.push_back(parse_double(t, line));
      continue;
    }
    auto want = [&](std::size_t n) {
      if (tok.size() != n) {
        throw InputError("line " + std::to_string(line) + ": " + key +
                         " expects " + std::to_string(n - 1) + " fields");
      }
    };
    if (key == "NAME") {
      want(2);
      name = tok[1];
    } else if (key == "CLIENTS") {
      want(2);
      num_clients = parse_count(tok[1], line);
      have_clients = true;
    } else if (key == "FACILITIES") {
      want(2);
      num_facilities = parse_count(tok[1], line);
      have_facilities = true;
    } else if (key == "VEHICLE_CAPACITY") {
      want(2);
      ubar = parse_rat(tok[1], line);
    } else if (key == "METRIC") {
      want(2);
      if (tok[1] != "EUCLIDEAN" && tok[1] != "MATRIX") {
        throw InputError("line " + std::to_string(line) +
                         ": METRIC must be EUCLIDEAN or MATRIX");
      }
      euclid = tok[1] == "EUCLIDEAN";
    } else if (key == "FACILITY" || key == "CLIENT") {
      const bool fac = key == "FACILITY";
      want(fac ? 6 : 5);
      const auto id = parse_count(tok[1], line);
      const auto expected = fac ? facilities.size() : clients.size();
      if (id != expected) {
        throw InputError("line " + std::to_string(line) + ": " + key +
                         " ids must be consecutive from 0");
      }
      double x = 0.0, y = 0.0;
      if (euclid) {
        x = parse_double(tok[2], line);
        y = parse_double(tok[3], line);
      }
      if (fac) {
        facilities.push_back({parse_rat(tok[4], line),
                              parse_double(tok[5], line), x, y});
      } else {
        clients.push_back({parse_rat(tok[4], line), x, y});
      }
    } else if (key == "MATRIX") {
      want(1);
      if (euclid) {
        throw InputError("line " + std::to_string(line) +
                         ": MATRIX block in a Euclidean instance");
      }
      in_matrix = true;
    } else if (key == "END") {
      want(1);
      ended = true;
      in_matrix = false;
    } else {
      throw InputError("line " + std::to_string(line) + ": unknown keyword '" +
                       key + "'");
    }
  }
  if (!ended) throw InputError("missing END");
  if (!have_clients || !have_facilities) {
    throw InputError("missing CLIENTS or FACILITIES header");
  }
  if (clients.size() != num_clients || facilities.size() != num_facilities) {
    throw InputError("record counts do not match the header");
  }
  if (euclid) {
    return Instance::euclidean(name, std::move(facilities), std::move(clients),
                               ubar);
  }
  return Instance::with_matrix(name, std::move(facilities),
                               std::move(clients), ubar, std::move(matrix));
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["name"] = inst.name();
  j["vehicle_capacity"] = format_rational(inst.vehicle_capacity());
  j["metric"] = inst.is_euclidean() ? "euclidean" : "matrix";
  j["facilities"] = nlohmann::json::array();
  for (const auto& f : inst.facilities()) {
    nlohmann::json e{{"capacity", format_rational(f.capacity)},
                     {"opening_cost", f.opening_cost}};
    if (inst.is_euclidean()) {
      e["x"] = f.x;
      e["y"] = f.y;
    }
    j["facilities"].push_back(e);
  }
  j["clients"] = nlohmann::json::array();
  for (const auto& c : inst.clients()) {
    nlohmann::json e{{"demand", format_rational(c.demand)}};
    if (inst.is_euclidean()) {
      e["x"] = c.x;
      e["y"] = c.y;
    }
    j["clients"].push_back(e);
  }
  if (!inst.is_euclidean()) j["matrix"] = inst.matrix();
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  try {
    const bool euclid = j.at("metric").get<std::string>() == "euclidean";
    std::vector<FacilityData> facilities;
    for (const auto& e : j.at("facilities")) {
      FacilityData f{parse_rational(e.at("capacity").get<std::string>()),
                     e.at("opening_cost").get<double>(), 0.0, 0.0};
      if (euclid) {
        f.x = e.at("x").get<double>();
        f.y = e.at("y").get<double>();
      }
      facilities.push_back(f);
    }
    std::vector<ClientData> clients;
    for (const auto& e : j.at("clients")) {
      ClientData c{parse_rational(e.at("demand").get<std::string>()), 0.0,
                   0.0};
      if (euclid) {
        c.x = e.at("x").get<double>();
        c.y = e.at("y").get<double>();
      }
      clients.push_back(c);
    }
    const auto name = j.value("name", std::string("unnamed"));
    const auto ubar =
        parse_rational(j.at("vehicle_capacity").get<std::string>());
    if (euclid) {
      return Instance::euclidean(name, std::move(facilities),
                                 std::move(clients), ubar);
    }
    return Instance::with_matrix(name, std::move(facilities),
                                 std::move(clients), ubar,
                                 j.at("matrix").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

Instance load_instance(const std::filesystem::path& path) {
  const auto text = read_file(path);
  if (path.extension() == ".json") {
    try {
      return instance_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  return read_instance(text);
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  if (path.extension() == ".json") {
    write_file(path, instance_to_json(inst).dump(1) + "\n");
  } else {
    write_file(path, write_instance(inst));
  }
}

std::string write_solution(const std::string& name, const Solution& sol) {
  std::ostringstream out;
  out << "SOLUTION " << (name.empty() ? "unnamed" : name) << '\n' << "OPEN";
  for (auto w : sol.open_facilities) out << ' ' << w.value;
  out << '\n';
  for (const auto& t : sol.tours) {
    out << "TOUR " << t.facility.value << ' ' << t.sequence.size();
    for (std::size_t i = 0; i < t.sequence.size(); ++i) {
      out << ' ' << t.sequence[i].value << ':'
          << format_rational(t.service[i]);
    }
    out << '\n';
  }
  out << "END\n";
  return out.str();
}

Solution read_solution(std::string_view text) {
  std::istringstream in{std::string(text)};
  Solution sol;
  bool ended = false;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    if (ended) {
      throw InputError("line " + std::to_string(line) + ": text after END");
    }
    if (tok[0] == "SOLUTION") {
      continue;
    } else if (tok[0] == "OPEN") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        sol.open_facilities.push_back(
            FacilityId{static_cast<std::uint32_t>(parse_count(tok[i], line))});
      }
    } else if (tok[0] == "TOUR") {
      if (tok.size() < 3) {
        throw InputError("line " + std::to_string(line) +
                         ": TOUR needs a facility and a length");
      }
      Tour t;
      t.facility =
          FacilityId{static_cast<std::uint32_t>(parse_count(tok[1], line))};
      const auto k = parse_count(tok[2], line);
      if (tok.size() != 3 + k) {
        throw InputError("line " + std::to_string(line) +
                         ": TOUR length does not match its visits");
      }
      for (std::size_t i = 3; i < tok.size(); ++i) {
        const auto colon = tok[i].find(':');
        if (colon == std::string::npos) {
          throw InputError("line " + std::to_string(line) +
                           ": visit must be client:service");
        }
        t.sequence.push_back(ClientId{static_cast<std::uint32_t>(
            parse_count(tok[i].substr(0, colon), line))});
        t.service.push_back(parse_rat(tok[i].substr(colon + 1), line));
      }
      sol.tours.push_back(std::move(t));
    } else if (tok[0] == "END") {
      ended = true;
    } else {
      throw InputError("line " + std::to_string(line) + ": unknown keyword '" +
                       tok[0] + "'");
    }
  }
  if (!ended) throw InputError("missing END");
  return sol;
}

Solution load_solution(const std::filesystem::path& path) {
  return read_solution(read_file(path));
}

ReportRow report_row(const Instance& inst, const VariantConfig& cfg,
                     const RunResult& r) {
  ReportRow row;
  row.instance = inst.name();
  row.variant = cfg.name();
  row.epsilon = cfg.epsilon;
  row.cost = r.evaluation.total_cost;
  row.mst_bound = r.bounds.mst_bound;
  row.cfl_bound = r.bounds.cfl_bound;
  row.cfl_exact = r.bounds.cfl_certified;
  if (r.bounds.best_bound > 0.0) {
    row.gap_lb = gap_to_lower_bound(row.cost, r.bounds);
  }
  row.feasible_strict = r.evaluation.feasible_strict;
  row.max_relative_excess = r.evaluation.max_relative_excess;
  row.times = r.times;
  row.interrupted = r.interrupted;
  row.gamma = r.gamma;
  return row;
}

namespace {

const char* const columns[] = {
    "instance",    "variant",         "epsilon",
    "cost",        "mst_bound",       "cfl_bound",
    "cfl_exact",   "gap_lb",          "feasible_strict",
    "max_relative_excess", "time_cluster", "time_assign",
    "time_route",  "time_total",      "interrupted",
    "gamma"};

std::string num(double x) { return fmt_double(x, 9); }
std::string opt_num(const std::optional<double>& x) {
  return x ? num(*x) : std::string();
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (const char* c : columns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const ReportRow& row, bool omit_timings) {
  auto t = [&](double x) { return omit_timings ? std::string() : num(x); };
  std::vector<std::string> f{row.instance,
                             row.variant,
                             format_rational(row.epsilon),
                             num(row.cost),
                             num(row.mst_bound),
                             opt_num(row.cfl_bound),
                             row.cfl_exact ? "1" : "0",
                             opt_num(row.gap_lb),
                             row.feasible_strict ? "1" : "0",
                             num(row.max_relative_excess),
                             t(row.times.cluster),
                             t(row.times.assign),
                             t(row.times.route),
                             t(row.times.total),
                             row.interrupted ? "1" : "0",
                             format_rational(row.gamma)};
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += f[i];
  }
  return out;
}

nlohmann::json row_to_json(const ReportRow& row, bool omit_timings) {
  nlohmann::json j{{"instance", row.instance},
                   {"variant", row.variant},
                   {"epsilon", format_rational(row.epsilon)},
                   {"cost", row.cost},
                   {"mst_bound", row.mst_bound},
                   {"cfl_exact", row.cfl_exact},
                   {"feasible_strict", row.feasible_strict},
                   {"max_relative_excess", row.max_relative_excess},
                   {"interrupted", row.interrupted},
                   {"gamma", format_rational(row.gamma)}};
  j["cfl_bound"] = row.cfl_bound ? nlohmann::json(*row.cfl_bound) : nullptr;
  j["gap_lb"] = row.gap_lb ? nlohmann::json(*row.gap_lb) : nullptr;
  if (!omit_timings) {
    j["time_cluster"] = row.times.cluster;
    j["time_assign"] = row.times.assign;
    j["time_route"] = row.times.route;
    j["time_total"] = row.times.total;
  }
  return j;
}

std::vector<std::vector<std::pair<std::string, std::string>>> read_csv(
    std::string_view text) {
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> head;
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto f = split(line);
    if (head.empty()) {
      head = f;
      continue;
    }
    if (f.size() != head.size()) {
      throw InputError("CSV row with " + std::to_string(f.size()) +
                       " fields, header has " + std::to_string(head.size()));
    }
    std::vector<std::pair<std::string, std::string>> row;
    for (std::size_t i = 0; i < f.size(); ++i) row.emplace_back(head[i], f[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace clr::io
