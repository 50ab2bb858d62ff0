#include "clr/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "clr/generator.hpp"
#include "clr/io.hpp"
#include "clr/oracle.hpp"
#include "clr/pipeline.hpp"

namespace clr {

namespace fs = std::filesystem;

namespace {

struct SolveFlags {
  std::string variant = "ls-dts";
  std::string epsilon = "1";
  std::uint64_t seed = 0;
  double time_total = -1.0;
  double time_improve = -1.0;
  std::size_t exact_cap = 50'000;
  std::string bounds = "exact";
  std::string cfl_mode = "clustered";
  std::string cfl_solver = "ls";
  bool no_free_f1 = false;
  bool omit_timings = false;

  void add_to(CLI::App* cmd, bool single_variant) {
    if (single_variant) {
      cmd->add_option("--variant", variant, "ls-dts, ip-dts, ls-lkh or ip-lkh");
    }
    cmd->add_option("--epsilon", epsilon, "capacity slack factor in (0, 1]");
    cmd->add_option("--seed", seed, "local search seed");
    cmd->add_option("--time-limit-total", time_total,
                    "step 2 time limit in seconds (0 = none)");
    cmd->add_option("--time-limit-improve", time_improve,
                    "step 2 limit without improvement in seconds (0 = none)");
    cmd->add_option("--exact-cfl-cap", exact_cap,
                    "largest clients x facilities for exact CFL");
    cmd->add_option("--bounds", bounds, "exact, heuristic or skip")
        ->check(CLI::IsMember({"exact", "heuristic", "skip"}));
    cmd->add_option("--cfl-mode", cfl_mode, "raw or clustered")
        ->check(CLI::IsMember({"raw", "clustered"}));
    cmd->add_option("--cfl-solver", cfl_solver, "ls or exact")
        ->check(CLI::IsMember({"ls", "exact"}));
    cmd->add_flag("--no-free-f1", no_free_f1,
                  "keep opening costs of facilities opened by clustering");
    cmd->add_flag("--omit-timings", omit_timings,
                  "leave timing columns empty for reproducible reports");
  }

  VariantConfig config(const std::string& name, std::size_t clients) const {
    auto cfg = clr::variant(name);
    cfg.epsilon = parse_rational(epsilon);
    cfg.seed = seed;
    cfg.budget = default_budget(clients);
    if (time_total >= 0) cfg.budget.total_seconds = time_total;
    if (time_improve >= 0) cfg.budget.no_improve_seconds = time_improve;
    cfg.bound_budget = cfg.budget;
    cfg.exact_cfl_cap = exact_cap;
    cfg.bounds = bounds == "exact"       ? BoundMode::exact
                 : bounds == "heuristic" ? BoundMode::heuristic
                                         : BoundMode::skip;
    cfg.cfl_mode = cfl_mode == "raw" ? cfl::Mode::raw : cfl::Mode::clustered;
    cfg.cfl_solver =
        cfl_solver == "exact" ? CflSolver::exact : CflSolver::local_search;
    cfg.free_f1 = !no_free_f1;
    return cfg;
  }
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".clr" || ext == ".json")) {
          found.push_back(e.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

int cmd_generate(const gen::GenParams& base, const std::string& levels,
                 bool xl, std::size_t lemma3, std::size_t grid,
                 const std::string& out_path, const std::string& format,
                 std::ostream& out) {
  const std::string ext = format == "json" ? ".json" : ".clr";
  std::vector<Instance> made;
  if (lemma3 > 0) {
    made.push_back(gen::lemma3_family(lemma3));
  } else if (xl || grid > 0) {
    auto params = xl ? gen::xl_design(base.seed) : gen::full_grid(grid, base.seed);
    for (const auto& p : params) made.push_back(gen::generate(p).instance);
  } else {
    auto p = base;
    if (levels.size() != 3) {
      throw InputError("--levels takes three letters, e.g. smm");
    }
    p.vehicle = gen::parse_level(levels[0]);
    p.cost = gen::parse_level(levels[1]);
    p.capacity = gen::parse_level(levels[2]);
    made.push_back(gen::generate(p).instance);
  }

  if (made.size() == 1 && (out_path.empty() || !fs::is_directory(out_path))) {
    if (out_path.empty()) {
      out << (format == "json" ? io::instance_to_json(made[0]).dump(1) + "\n"
                               : io::write_instance(made[0]));
    } else {
      io::save_instance(out_path, made[0]);
    }
    return 0;
  }
  if (out_path.empty()) {
    throw InputError("--out must name a directory for several instances");
  }
  fs::create_directories(out_path);
  for (const auto& inst : made) {
    const auto file = fs::path(out_path) / (inst.name() + ext);
    io::save_instance(file, inst);
    out << file.string() << '\n';
  }
  return 0;
}

int cmd_solve(const std::string& path, const SolveFlags& flags,
              const std::string& solution_path, std::ostream& out) {
  const auto inst = io::load_instance(path);
  const auto cfg = flags.config(flags.variant, inst.num_clients());
  const auto r = run(inst, cfg);
  if (!solution_path.empty()) {
    io::write_file(solution_path, io::write_solution(inst.name(), r.solution));
  }
  out << io::csv_header() << '\n'
      << io::csv_row(io::report_row(inst, cfg, r), flags.omit_timings) << '\n';
  return 0;
}

int cmd_bounds(const std::string& path, const std::string& mode,
               std::size_t cap, std::ostream& out) {
  const auto inst = io::load_instance(path);
  const auto mst = mst_lower_bound(inst);
  std::optional<CflBound> cfl;
  if (mode != "skip") {
    cfl = cfl_lower_bound(
        inst, mode == "exact" ? CflBoundMode::exact : CflBoundMode::heuristic,
        cap, default_budget(inst.num_clients()));
  }
  const auto b = make_bound_report(mst.weight, cfl);
  out << "mst_bound " << b.mst_bound << '\n';
  if (b.cfl_bound) {
    out << "cfl_bound " << *b.cfl_bound << '\n'
        << "cfl_exact " << (b.cfl_certified ? 1 : 0) << '\n';
  }
  out << "best_bound " << b.best_bound << '\n'
      << "which " << (b.which == BoundSource::mst ? "mst" : "cfl") << '\n';
  return 0;
}

int cmd_oracle(const std::string& path, std::ostream& out) {
  const auto inst = io::load_instance(path);
  const auto r = brute_force_opt(inst);
  out << "opt " << r.opt << '\n';
  if (r.upper_bound_only) out << "# single-tour clients only: upper bound\n";
  out << io::write_solution(inst.name(), r.solution);
  return 0;
}

int cmd_bench(const std::vector<std::string>& inputs,
              std::vector<std::string> variants, const SolveFlags& flags,
              std::size_t workers, const std::string& csv_path,
              const std::string& json_path, std::ostream& out,
              std::ostream& err) {
  if (variants.empty()) variants.push_back(flags.variant);
  const auto files = expand_inputs(inputs);
  struct Job {
    fs::path file;
    std::string variant;
  };
  std::vector<Job> jobs;
  for (const auto& f : files) {
    for (const auto& v : variants) jobs.push_back({f, v});
  }
  std::vector<std::optional<io::ReportRow>> rows(jobs.size());
  std::vector<std::string> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        const auto inst = io::load_instance(jobs[i].file);
        const auto cfg = flags.config(jobs[i].variant, inst.num_clients());
        rows[i] = io::report_row(inst, cfg, run(inst, cfg));
      } catch (const std::exception& e) {
        failures[i] = jobs[i].file.string() + " (" + jobs[i].variant +
                      "): " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::max<std::size_t>(1, workers); ++w) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) t.join();

  std::string csv = io::csv_header() + "\n";
  nlohmann::json js = nlohmann::json::array();
  int status = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!rows[i]) {
      err << "error: " << failures[i] << '\n';
      status = 1;
      continue;
    }
    csv += io::csv_row(*rows[i], flags.omit_timings) + "\n";
    js.push_back(io::row_to_json(*rows[i], flags.omit_timings));
  }
  if (csv_path.empty()) {
    out << csv;
  } else {
    io::write_file(csv_path, csv);
  }
  if (!json_path.empty()) io::write_file(json_path, js.dump(1) + "\n");
  return status;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path,
               const std::string& epsilon, bool strict, std::ostream& out) {
  const auto inst = io::load_instance(inst_path);
  const auto sol = io::load_solution(sol_path);
  const auto ev = evaluate(inst, sol, parse_rational(epsilon));
  out << "cost " << ev.total_cost << '\n'
      << "feasible_strict " << (ev.feasible_strict ? 1 : 0) << '\n'
      << "feasible_relaxed " << (ev.feasible_relaxed ? 1 : 0) << '\n'
      << "max_relative_excess " << ev.max_relative_excess << '\n';
  for (const auto& v : ev.violations) out << "violation " << v << '\n';
  const bool ok = strict ? ev.feasible_strict : ev.feasible_relaxed;
  if (strict && !ev.feasible_strict && ev.feasible_relaxed) {
    out << "violation facility capacity exceeded (strict check)\n";
  }
  return ok ? 0 : 1;
}

int cmd_plotdata(const std::string& report, std::ostream& out) {
  const auto rows = io::read_csv(io::read_file(report));
  out << "instance,variant,max_relative_excess,gap_lb\n";
  for (const auto& row : rows) {
    auto get = [&](const std::string& key) {
      for (const auto& [k, v] : row) {
        if (k == key) return v;
      }
      throw InputError("report lacks column " + key);
    };
    const auto gap = get("gap_lb");
    if (gap.empty()) continue;
    out << get("instance") << ',' << get("variant") << ','
        << get("max_relative_excess") << ',' << gap << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Capacitated location routing: solver, bounds and experiments"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "write random instances");
  gen::GenParams params;
  std::string levels = "sss", gen_out, format = "text";
  bool xl = false;
  std::size_t lemma3 = 0, grid = 0;
  generate->add_option("--n", params.n, "number of clients");
  generate->add_option("--conglomerates,-k", params.conglomerates,
                       "0, 3 or 5");
  generate->add_option("--levels", levels,
                       "vehicle capacity, facility cost, facility capacity "
                       "as s/m/l letters");
  generate->add_option("--seed", params.seed);
  generate->add_flag("--xl-design", xl, "the 27 large design instances");
  generate->add_option("--lemma3", lemma3, "hard family instance with n clients");
  generate->add_option("--grid", grid, "all 81 combinations for one size");
  generate->add_option("--out", gen_out, "file, or directory for several");
  generate->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* solve = app.add_subcommand("solve", "run one algorithm variant");
  std::string solve_in, solution_out;
  SolveFlags solve_flags;
  solve->add_option("instance", solve_in)->required();
  solve->add_option("--solution", solution_out, "write the solution here");
  solve_flags.add_to(solve, true);

  auto* bounds = app.add_subcommand("bounds", "spanning tree and CFL bounds");
  std::string bounds_in, bounds_mode = "exact";
  std::size_t bounds_cap = 50'000;
  bounds->add_option("instance", bounds_in)->required();
  bounds->add_option("--mode", bounds_mode, "exact, heuristic or skip")
      ->check(CLI::IsMember({"exact", "heuristic", "skip"}));
  bounds->add_option("--exact-cfl-cap", bounds_cap);

  auto* oracle = app.add_subcommand("oracle", "exact optimum of a tiny instance");
  std::string oracle_in;
  oracle->add_option("instance", oracle_in)->required();

  auto* bench = app.add_subcommand("bench", "solve many instances");
  std::vector<std::string> bench_in, bench_variants;
  std::string bench_csv, bench_json;
  std::size_t workers = 1;
  SolveFlags bench_flags;
  bench->add_option("inputs", bench_in, "instance files or directories")
      ->required();
  bench->add_option("--variant", bench_variants, "repeatable");
  bench->add_option("--workers", workers);
  bench->add_option("--out", bench_csv, "CSV report path");
  bench->add_option("--json", bench_json, "JSON report path");
  bench_flags.add_to(bench, false);

  auto* verify = app.add_subcommand("verify", "check a solution");
  std::string verify_inst, verify_sol, verify_eps = "1";
  bool verify_strict = false;
  verify->add_option("instance", verify_inst)->required();
  verify->add_option("solution", verify_sol)->required();
  verify->add_option("--epsilon", verify_eps, "facility slack ε·ū");
  verify->add_flag("--strict", verify_strict, "no facility slack");

  auto* plot = app.add_subcommand("plotdata", "excess vs gap series");
  std::string plot_in;
  plot->add_option("report", plot_in)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) {
      return cmd_generate(params, levels, xl, lemma3, grid, gen_out, format,
                          out);
    }
    if (*solve) return cmd_solve(solve_in, solve_flags, solution_out, out);
    if (*bounds) return cmd_bounds(bounds_in, bounds_mode, bounds_cap, out);
    if (*oracle) return cmd_oracle(oracle_in, out);
    if (*bench) {
      return cmd_bench(bench_in, bench_variants, bench_flags, workers,
                       bench_csv, bench_json, out, err);
    }
    if (*verify) {
      return cmd_verify(verify_inst, verify_sol, verify_eps, verify_strict,
                        out);
    }
    if (*plot) return cmd_plotdata(plot_in, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace clr
