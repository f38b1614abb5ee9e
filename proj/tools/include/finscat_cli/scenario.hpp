#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "finscat/phases.hpp"
#include "finscat_cli/config.hpp"
#include "json.hpp"

namespace finscat::cli {

/// A table with one header row; numeric cells only (integers are stored
/// exactly as doubles).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
};

/// Every number printed with 17 significant digits.
std::string format_number(double x);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// A numerical guard fired; message carries the guard and the point at fault.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tables produced by one output kind (wavefront gives one per R).
std::vector<Table> build_tables(const ScenarioConfig& config, const PhaseShiftSet& phases,
                                OutputKind kind, std::vector<std::string>& warnings,
                                nlohmann::json& fits);

PhaseShiftSet scenario_phases(const ScenarioConfig& config);

struct RunResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json manifest;
  std::vector<std::string> warnings;
};

/// Computes every table in config.outputs and writes them, plus
/// manifest.json, to out_dir. Identical configs give byte-identical files.
RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

}  // namespace finscat::cli
