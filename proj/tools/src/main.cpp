#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "finscat/version.hpp"
#include "finscat_cli/config.hpp"
#include "finscat_cli/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::string out = ".";
  std::string format;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, "Scenario JSON (or a previous manifest.json)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
  sub->add_option("--format", opt.format, "Table format, overrides the config")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace finscat::cli;
  CLI::App app{"Finite-distance partial-wave scattering observables"};
  app.set_version_flag("--version", std::string("finscat ") + finscat::kVersion);
  app.require_subcommand(1);

  Options opt;
  std::map<CLI::App*, std::optional<OutputKind>> commands;
  commands[app.add_subcommand("run", "Produce every table listed in the config's outputs")] = std::nullopt;
  const std::pair<const char*, const char*> tables[] = {
      {"phases", "Phase shifts delta_l"},
      {"amplitude", "Finite-distance and conventional amplitudes on the (r, theta) grid"},
      {"field-map", "Wavefunction and scattered flux on the (r, theta) grid"},
      {"cross-section", "Differential cross section with the eta and obliquity corrections"},
      {"sigma-total", "Modified and conventional total cross sections per R"},
      {"wavefront", "Wave-front generatrix and Gaussian curvature, one table per R"},
      {"compare-asymptotic", "Convergence of finite-distance quantities to the r -> inf limit"},
  };
  for (const auto& [name, help] : tables) commands[app.add_subcommand(name, help)] = output_kind_from_string(name);
  for (auto& [sub, kind] : commands) add_common(sub, opt);

  CLI11_PARSE(app, argc, argv);

  ScenarioConfig config;
  try {
    config = load_config(opt.config);
  } catch (const ConfigError& e) {
    std::cerr << "finscat: " << opt.config << ": " << e.what() << "\n";
    return kExitConfig;
  }
  if (!opt.format.empty()) config.format = *output_format_from_string(opt.format);
  for (auto& [sub, kind] : commands) {
    if (sub->parsed() && kind) config.outputs = {*kind};
  }
  const bool needs_r = std::any_of(config.outputs.begin(), config.outputs.end(),
                                   [](OutputKind k) { return k != OutputKind::phases; });
  if (needs_r && config.r_values.empty()) {
    std::cerr << "finscat: " << opt.config << ": config: field 'r_values': required by the requested output\n";
    return kExitConfig;
  }

  try {
    const RunResult result = run_scenario(config, opt.out);
    for (const auto& w : result.warnings) std::cerr << "finscat: warning: " << w << "\n";
    for (const auto& f : result.files) std::cout << f.string() << "\n";
  } catch (const NumericalError& e) {
    std::cerr << "finscat: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "finscat: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
