#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "finscat/field.hpp"
#include "finscat/potential.hpp"

namespace finscat::cli {

enum class OutputKind {
  phases,
  amplitude,
  field_map,
  cross_section,
  sigma_total,
  wavefront,
  compare_asymptotic,
};

std::string to_string(OutputKind kind);
std::optional<OutputKind> output_kind_from_string(const std::string& name);

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat format);
std::optional<OutputFormat> output_format_from_string(const std::string& name);

std::string to_string(FluxConvention convention);

struct ThetaGrid {
  int count = 181;
  double min = 0.0;
  double max = std::numbers::pi;

  std::vector<double> values() const;
};

struct ScenarioConfig {
  PotentialSpec potential = PotentialSpec::hard_sphere(1.0);
  double k = 1.0;
  std::optional<int> l_max;
  std::vector<double> r_values;
  ThetaGrid theta_grid;
  std::vector<OutputKind> outputs{OutputKind::phases};
  OutputFormat format = OutputFormat::csv;
  double ode_step = std::numbers::pi / 500.0;
  /// Defaults to min(theta_grid.max, π − ode_step).
  std::optional<double> theta_end;
  FluxConvention flux_convention = FluxConvention::total_minus_incident;

  double resolved_theta_end() const;
};

/// A config that could not be parsed or validated. line is 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Parses the JSON text of a scenario. Relative samples_file paths resolve
/// against base_dir. A manifest written by a previous run is accepted too;
/// its embedded config is used.
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

/// Fully resolved config with sorted keys and tabulated samples inlined.
nlohmann::json canonical_json(const ScenarioConfig& config);

/// 64-bit FNV-1a of the canonical JSON text, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

}  // namespace finscat::cli
