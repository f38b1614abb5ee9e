#include "finscat_cli/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "finscat/amplitude.hpp"
#include "finscat/error.hpp"
#include "finscat/field.hpp"
#include "finscat/observables.hpp"
#include "finscat/version.hpp"
#include "finscat/wavefront.hpp"

namespace finscat::cli {
namespace {

using nlohmann::json;

const char* guard_name(const Error& e) {
  if (dynamic_cast<const OrderTooLargeError*>(&e)) return "order-too-large";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const DivergenceError*>(&e)) return "divergence";
  if (dynamic_cast<const UndefinedAngleError*>(&e)) return "undefined-angle";
  if (dynamic_cast<const SingularObliquityError*>(&e)) return "singular-obliquity";
  if (dynamic_cast<const StepInstabilityError*>(&e)) return "step-instability";
  if (dynamic_cast<const InsufficientSamplesError*>(&e)) return "insufficient-samples";
  if (dynamic_cast<const MatchNodeError*>(&e)) return "match-node";
  return "numerical";
}

[[noreturn]] void rethrow_at(const Error& e, const std::string& where) {
  throw NumericalError(std::string(guard_name(e)) + " guard: " + e.what() + " [" + where + "]");
}

std::string point(double r, double theta) {
  return "r=" + format_number(r) + ", theta=" + format_number(theta);
}

template <class F>
auto at(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    rethrow_at(e, where);
  }
}

Table phases_table(const PhaseShiftSet& p) {
  Table t{"phases", {"l", "delta_l"}, {"1", "rad"}, {}};
  for (int l = 0; l <= p.l_max; ++l) t.rows.push_back({double(l), p.delta[static_cast<std::size_t>(l)]});
  return t;
}

Table amplitude_table(const ScenarioConfig& c, const PhaseShiftSet& p) {
  Table t{"amplitude",
          {"r", "theta", "re_f", "im_f", "re_f_asymptotic", "im_f_asymptotic", "l_max_eff", "tail_estimate"},
          {"length", "rad", "length", "length", "length", "length", "1", "length"},
          {}};
  for (double r : c.r_values) {
    for (double th : c.theta_grid.values()) {
      const auto s = at(point(r, th), [&] { return amplitude_series(p, r, th); });
      const Complex inf = amplitude_asymptotic(p, th);
      t.rows.push_back({r, th, s.value.real(), s.value.imag(), inf.real(), inf.imag(),
                        double(s.l_max_eff), s.tail_estimate});
    }
  }
  return t;
}

Table field_map_table(const ScenarioConfig& c, const PhaseShiftSet& p) {
  Table t{"field-map",
          {"r", "theta", "re_psi", "im_psi", "jr_sc", "jtheta_sc", "gamma_sc"},
          {"length", "rad", "1", "1", "1/length", "1/length", "rad"},
          {}};
  for (double r : c.r_values) {
    for (double th : c.theta_grid.values()) {
      const FieldPoint fp = at(point(r, th), [&] { return flux(p, r, th, c.flux_convention); });
      t.rows.push_back({r, th, fp.psi.real(), fp.psi.imag(), fp.j_sc.radial, fp.j_sc.polar, fp.gamma_sc});
    }
  }
  return t;
}

Table cross_section_table(const ScenarioConfig& c, const PhaseShiftSet& p) {
  Table t{"cross-section",
          {"r", "theta", "dsigma_domega", "f_abs2", "eta", "tan_gamma"},
          {"length", "rad", "area/sr", "area/sr", "area/sr", "1"},
          {}};
  for (double r : c.r_values) {
    for (double th : c.theta_grid.values()) {
      const auto s = at(point(r, th), [&] { return differential_cross_section(p, r, th); });
      t.rows.push_back({r, th, s.dsigma_domega, s.f_abs2, s.eta, s.tan_gamma});
    }
  }
  return t;
}

Table sigma_total_table(const ScenarioConfig& c, const PhaseShiftSet& p) {
  Table t{"sigma-total", {"R", "sigma_t", "sigma_t_asymptotic"}, {"length", "area", "area"}, {}};
  const double inf = sigma_total_asymptotic(p);
  for (double R : c.r_values) {
    t.rows.push_back({R, at("R=" + format_number(R), [&] { return sigma_total(p, R); }), inf});
  }
  return t;
}

WavefrontCurve traced(const ScenarioConfig& c, const PhaseShiftSet& p, double R) {
  return gaussian_curvature(trace_generatrix(p, R, c.resolved_theta_end(), c.ode_step, c.flux_convention));
}

std::vector<Table> wavefront_tables(const ScenarioConfig& c, const PhaseShiftSet& p,
                                    std::vector<std::string>& warnings) {
  std::vector<Table> out;
  for (std::size_t i = 0; i < c.r_values.size(); ++i) {
    const double R = c.r_values[i];
    const WavefrontCurve curve = at("R=" + format_number(R), [&] { return traced(c, p, R); });
    if (!curve.converged) {
      warnings.push_back("wavefront R=" + format_number(R) + ": step and half-step traces differ by " +
                         format_number(curve.self_check_difference) + " (> 1e-8 R)");
    }
    Table t{"wavefront_R" + std::to_string(i), {"theta", "r", "gamma_sc", "K"},
            {"rad", "length", "rad", "1/length^2"}, {}};
    for (const auto& s : curve.samples) {
      t.rows.push_back({s.theta, s.r, s.gamma_sc, s.curvature ? *s.curvature : NAN});
    }
    out.push_back(std::move(t));
  }
  return out;
}

// Least-squares slope of log y against log r, reported as p in y ∝ r^{−p}.
json decay_exponent(const std::vector<double>& r, const std::vector<double>& y) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(y[i] > 0.0) || !std::isfinite(y[i])) continue;
    const double x = std::log(r[i]), v = std::log(y[i]);
    n += 1;
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  const double det = n * sxx - sx * sx;
  if (n < 2 || det <= 0.0) return nullptr;
  return -(n * sxy - sx * sy) / det;
}

Table compare_table(const ScenarioConfig& c, const PhaseShiftSet& p, std::vector<std::string>& warnings,
                    json& fits) {
  Table t{"compare-asymptotic",
          {"r", "amplitude_deviation", "sigma_ratio", "sigma_ratio_deviation", "sphericity_deviation"},
          {"length", "length", "1", "1", "1"},
          {}};
  if (!c.r_values.empty()) {
    const auto [lo, hi] = std::minmax_element(c.r_values.begin(), c.r_values.end());
    if (*hi < 100.0 * *lo) {
      warnings.push_back("compare-asymptotic: r_values span less than two decades");
    }
  }
  const double inf = sigma_total_asymptotic(p);
  std::vector<double> rs, amp, sig, sph;
  for (double r : c.r_values) {
    double worst = 0.0;
    for (double th : c.theta_grid.values()) {
      const Complex f = at(point(r, th), [&] { return amplitude_finite(p, r, th); });
      worst = std::max(worst, std::abs(f - amplitude_asymptotic(p, th)));
    }
    const double ratio = inf > 0.0 ? at("R=" + format_number(r), [&] { return sigma_total(p, r); }) / inf : NAN;
    double sphericity = NAN;
    try {
      sphericity = sphericity_deviation(trace_generatrix(p, r, c.resolved_theta_end(), c.ode_step,
                                                         c.flux_convention));
    } catch (const Error& e) {
      warnings.push_back("compare-asymptotic: no wavefront at R=" + format_number(r) + " (" +
                         guard_name(e) + " guard: " + e.what() + ")");
    }
    t.rows.push_back({r, worst, ratio, ratio - 1.0, sphericity});
    rs.push_back(r);
    amp.push_back(worst);
    sig.push_back(std::abs(ratio - 1.0));
    sph.push_back(sphericity);
  }
  fits["compare-asymptotic"] = {{"amplitude_deviation", decay_exponent(rs, amp)},
                                {"sigma_ratio_deviation", decay_exponent(rs, sig)},
                                {"sphericity_deviation", decay_exponent(rs, sph)}};
  return t;
}

std::string extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string s;
  for (std::size_t i = 0; i < table.columns.size(); ++i) s += (i ? "," : "") + table.columns[i];
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += '\n';
  }
  return s;
}

std::string to_json(const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  const json doc = {{"table", table.name}, {"columns", table.columns}, {"units", table.units}, {"rows", rows}};
  return doc.dump(1) + "\n";
}

PhaseShiftSet scenario_phases(const ScenarioConfig& config) {
  return at("phases", [&] { return compute_phases(config.potential, config.k, config.l_max.value_or(-1)); });
}

std::vector<Table> build_tables(const ScenarioConfig& config, const PhaseShiftSet& phases, OutputKind kind,
                                std::vector<std::string>& warnings, json& fits) {
  switch (kind) {
    case OutputKind::phases: return {phases_table(phases)};
    case OutputKind::amplitude: return {amplitude_table(config, phases)};
    case OutputKind::field_map: return {field_map_table(config, phases)};
    case OutputKind::cross_section: return {cross_section_table(config, phases)};
    case OutputKind::sigma_total: return {sigma_total_table(config, phases)};
    case OutputKind::wavefront: return wavefront_tables(config, phases, warnings);
    case OutputKind::compare_asymptotic: return {compare_table(config, phases, warnings, fits)};
  }
  return {};
}

RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  const PhaseShiftSet phases = scenario_phases(config);
  RunResult result;
  json fits = json::object();
  std::vector<Table> tables;
  for (OutputKind kind : config.outputs) {
    auto more = build_tables(config, phases, kind, result.warnings, fits);
    for (auto& t : more) tables.push_back(std::move(t));
  }

  json series = json::array();
  for (double r : config.r_values) {
    int l_eff = 0;
    double tail = 0.0;
    for (double th : config.theta_grid.values()) {
      const auto s = at(point(r, th), [&] { return amplitude_series(phases, r, th); });
      l_eff = std::max(l_eff, s.l_max_eff);
      tail = std::max(tail, s.tail_estimate);
    }
    series.push_back({{"r", r}, {"l_max_eff", l_eff}, {"tail_estimate", tail}});
  }

  std::filesystem::create_directories(out_dir);
  json table_info = json::array();
  for (const auto& t : tables) {
    const auto path = out_dir / (t.name + extension(config.format));
    write_file(path, config.format == OutputFormat::csv ? to_csv(t) : to_json(t));
    result.files.push_back(path);
    table_info.push_back({{"name", t.name},
                          {"file", path.filename().string()},
                          {"columns", t.columns},
                          {"units", t.units},
                          {"rows", t.rows.size()}});
  }

  json& m = result.manifest;
  m["finscat_manifest"] = 1;
  m["tool"] = "finscat";
  m["version"] = kVersion;
  m["config"] = canonical_json(config);
  m["config_hash"] = config_hash(config);
  m["phases"] = {{"k", phases.k}, {"l_max", phases.l_max}};
  m["series"] = series;
  m["tables"] = table_info;
  m["fits"] = fits;
  m["warnings"] = result.warnings;
  const auto manifest_path = out_dir / "manifest.json";
  write_file(manifest_path, m.dump(1) + "\n");
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace finscat::cli
