#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "clr/pipeline.hpp"

namespace clr::io {

// Line-oriented instance text. Euclidean instances store coordinates only;
// matrix instances write "- -" for coordinates and a MATRIX block.
std::string write_instance(const Instance& inst);
Instance read_instance(std::string_view text);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// By extension: ".json" uses the structured format, anything else text.
Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

std::string write_solution(const std::string& name, const Solution& sol);
Solution read_solution(std::string_view text);
Solution load_solution(const std::filesystem::path& path);

struct ReportRow {
  std::string instance;
  std::string variant;
  Rational epsilon = 1;
  double cost = 0.0;
  double mst_bound = 0.0;
  std::optional<double> cfl_bound;
  bool cfl_exact = false;
  std::optional<double> gap_lb;
  bool feasible_strict = false;
  double max_relative_excess = 0.0;
  StepTimes times;
  bool interrupted = false;
  Rational gamma = 1;
};

ReportRow report_row(const Instance& inst, const VariantConfig& cfg,
                     const RunResult& r);

std::string csv_header();
// Floats with 9 significant digits; empty fields for absent values.
std::string csv_row(const ReportRow& row, bool omit_timings = false);
nlohmann::json row_to_json(const ReportRow& row, bool omit_timings = false);

// Column name -> value maps, one per data line.
std::vector<std::vector<std::pair<std::string, std::string>>> read_csv(
    std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace clr::io
