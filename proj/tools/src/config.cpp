#include "finscat_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "finscat/error.hpp"

namespace finscat::cli {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct NamedOutput {
  OutputKind kind;
  const char* name;
};

constexpr NamedOutput kOutputs[] = {
    {OutputKind::phases, "phases"},
    {OutputKind::amplitude, "amplitude"},
    {OutputKind::field_map, "field-map"},
    {OutputKind::cross_section, "cross-section"},
    {OutputKind::sigma_total, "sigma-total"},
    {OutputKind::wavefront, "wavefront"},
    {OutputKind::compare_asymptotic, "compare-asymptotic"},
};

// Keeps the raw text around so that field errors can point at a line.
class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  int line_of_offset(std::size_t offset) const {
    offset = std::min(offset, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(offset), '\n'));
  }

  // Line of the first occurrence of "key" in the document, 0 if absent.
  int line_of_key(const std::string& key) const {
    const auto pos = text_.find('"' + key + '"');
    return pos == std::string::npos ? 0 : line_of_offset(pos);
  }

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    const auto leaf = field.substr(field.find_last_of('.') + 1);
    throw ConfigError(field, line_of_key(leaf), message);
  }

  void check_keys(const json& obj, const std::string& prefix,
                  const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(prefix + key, "unknown key");
    }
  }

  double number(const json& obj, const std::string& key, const std::string& field) const {
    if (!obj.contains(key)) fail(field, "missing required number");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "must be finite");
    return x;
  }

  double positive(const json& obj, const std::string& key, const std::string& field) const {
    const double x = number(obj, key, field);
    if (!(x > 0.0)) fail(field, "must be > 0");
    return x;
  }

  int integer(const json& obj, const std::string& key, const std::string& field) const {
    if (!obj.contains(key)) fail(field, "missing required integer");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<int>();
  }

  std::string string(const json& obj, const std::string& key, const std::string& field) const {
    if (!obj.contains(key)) fail(field, "missing required string");
    const json& v = obj.at(key);
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }

 private:
  const std::string& text_;
};

std::vector<PotentialSample> parse_samples(const Reader& rd, const json& arr) {
  if (!arr.is_array()) rd.fail("potential.samples", "expected an array of [r, V] pairs");
  std::vector<PotentialSample> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& row = arr[i];
    const std::string field = "potential.samples";
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      rd.fail(field, "entry " + std::to_string(i) + " is not a [r, V] pair of numbers");
    }
    out.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  return out;
}

PotentialSpec parse_potential(const Reader& rd, const json& p, const std::filesystem::path& base) {
  if (!p.is_object()) rd.fail("potential", "expected an object");
  const std::string kind = rd.string(p, "kind", "potential.kind");
  try {
    if (kind == "hard-sphere") {
      rd.check_keys(p, "potential.", {"kind", "radius"});
      return PotentialSpec::hard_sphere(rd.positive(p, "radius", "potential.radius"));
    }
    if (kind == "square-well") {
      rd.check_keys(p, "potential.", {"kind", "radius", "depth"});
      return PotentialSpec::square_well(rd.number(p, "depth", "potential.depth"),
                                        rd.positive(p, "radius", "potential.radius"));
    }
    if (kind == "tabulated") {
      rd.check_keys(p, "potential.", {"kind", "samples", "samples_file", "cutoff"});
      const bool inline_samples = p.contains("samples");
      const bool file_samples = p.contains("samples_file");
      if (inline_samples == file_samples) {
        rd.fail("potential.samples", "give exactly one of samples or samples_file");
      }
      std::vector<PotentialSample> samples;
      if (inline_samples) {
        samples = parse_samples(rd, p.at("samples"));
      } else {
        std::filesystem::path file = rd.string(p, "samples_file", "potential.samples_file");
        if (file.is_relative()) file = base / file;
        try {
          samples = read_potential_csv(file);
        } catch (const Error& e) {
          rd.fail("potential.samples_file", e.what());
        }
      }
      if (p.contains("cutoff")) {
        return PotentialSpec::tabulated(std::move(samples), rd.positive(p, "cutoff", "potential.cutoff"));
      }
      return PotentialSpec::tabulated(std::move(samples));
    }
  } catch (const DomainError& e) {
    rd.fail("potential", e.what());
  }
  rd.fail("potential.kind", "expected hard-sphere, square-well or tabulated, got '" + kind + "'");
}

ScenarioConfig parse_document(const Reader& rd, const json& doc, const std::filesystem::path& base) {
  if (!doc.is_object()) throw ConfigError("", 1, "top level must be a JSON object");
  rd.check_keys(doc, "", {"potential", "k", "l_max", "r_values", "theta_grid", "outputs", "format",
                          "ode_step", "theta_end", "flux_convention"});
  ScenarioConfig c;
  if (!doc.contains("potential")) rd.fail("potential", "missing required object");
  c.potential = parse_potential(rd, doc.at("potential"), base);
  c.k = rd.positive(doc, "k", "k");

  if (doc.contains("l_max")) {
    const int l = rd.integer(doc, "l_max", "l_max");
    if (l < 0) rd.fail("l_max", "must be >= 0");
    c.l_max = l;
  }
  if (doc.contains("r_values")) {
    const json& rv = doc.at("r_values");
    if (!rv.is_array()) rd.fail("r_values", "expected an array of lengths");
    for (const json& v : rv) {
      if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>())) {
        rd.fail("r_values", "every entry must be a finite number > 0");
      }
      c.r_values.push_back(v.get<double>());
    }
  }
  if (doc.contains("theta_grid")) {
    const json& g = doc.at("theta_grid");
    if (!g.is_object()) rd.fail("theta_grid", "expected an object {count, min, max}");
    rd.check_keys(g, "theta_grid.", {"count", "min", "max"});
    if (g.contains("count")) c.theta_grid.count = rd.integer(g, "count", "theta_grid.count");
    if (g.contains("min")) c.theta_grid.min = rd.number(g, "min", "theta_grid.min");
    if (g.contains("max")) c.theta_grid.max = rd.number(g, "max", "theta_grid.max");
    if (c.theta_grid.count < 1) rd.fail("theta_grid.count", "must be >= 1");
    if (c.theta_grid.min < 0.0 || c.theta_grid.max > kPi || c.theta_grid.min > c.theta_grid.max) {
      rd.fail("theta_grid", "range must satisfy 0 <= min <= max <= pi");
    }
  }
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    if (!o.is_array()) rd.fail("outputs", "expected an array of output names");
    c.outputs.clear();
    for (const json& v : o) {
      const auto kind = v.is_string() ? output_kind_from_string(v.get<std::string>()) : std::nullopt;
      if (!kind) rd.fail("outputs", "unknown output " + v.dump());
      if (std::find(c.outputs.begin(), c.outputs.end(), *kind) == c.outputs.end()) {
        c.outputs.push_back(*kind);
      }
    }
  }
  if (doc.contains("format")) {
    const auto f = output_format_from_string(rd.string(doc, "format", "format"));
    if (!f) rd.fail("format", "expected csv or json");
    c.format = *f;
  }
  if (doc.contains("ode_step")) {
    c.ode_step = rd.positive(doc, "ode_step", "ode_step");
    if (c.ode_step > kPi / 500.0) rd.fail("ode_step", "must be <= pi/500");
  }
  if (doc.contains("theta_end")) {
    c.theta_end = rd.positive(doc, "theta_end", "theta_end");
    if (*c.theta_end > kPi - c.ode_step) rd.fail("theta_end", "must be <= pi - ode_step");
  }
  if (doc.contains("flux_convention")) {
    const std::string s = rd.string(doc, "flux_convention", "flux_convention");
    if (s == "total-minus-incident") {
      c.flux_convention = FluxConvention::total_minus_incident;
    } else if (s == "scattered-only") {
      c.flux_convention = FluxConvention::scattered_only;
    } else {
      rd.fail("flux_convention", "expected total-minus-incident or scattered-only");
    }
  }
  return c;
}

}  // namespace

std::string to_string(OutputKind kind) {
  for (const auto& o : kOutputs) {
    if (o.kind == kind) return o.name;
  }
  return "unknown";
}

std::optional<OutputKind> output_kind_from_string(const std::string& name) {
  for (const auto& o : kOutputs) {
    if (name == o.name) return o.kind;
  }
  return std::nullopt;
}

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

std::optional<OutputFormat> output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string to_string(FluxConvention convention) {
  return convention == FluxConvention::scattered_only ? "scattered-only" : "total-minus-incident";
}

std::vector<double> ThetaGrid::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? min : min + (max - min) * i / (count - 1));
  }
  return out;
}

double ScenarioConfig::resolved_theta_end() const {
  return theta_end ? *theta_end : std::min(theta_grid.max, kPi - ode_step);
}

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error("config" + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": field '" + field + "'") + ": " + message),
      field_(std::move(field)),
      line_(line) {}

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  const Reader rd(text);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", rd.line_of_offset(e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  if (doc.is_object() && doc.contains("finscat_manifest") && doc.contains("config")) {
    return parse_document(rd, doc.at("config"), base_dir);
  }
  return parse_document(rd, doc, base_dir);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

nlohmann::json canonical_json(const ScenarioConfig& c) {
  json p;
  p["kind"] = finscat::to_string(c.potential.kind());
  switch (c.potential.kind()) {
    case PotentialKind::hard_sphere:
      p["radius"] = c.potential.radius();
      break;
    case PotentialKind::square_well:
      p["radius"] = c.potential.radius();
      p["depth"] = c.potential.depth();
      break;
    case PotentialKind::tabulated: {
      json rows = json::array();
      for (const auto& s : c.potential.samples()) rows.push_back({s.r, s.v});
      p["samples"] = rows;
      p["cutoff"] = c.potential.cutoff();
      break;
    }
  }
  json doc;
  doc["potential"] = p;
  doc["k"] = c.k;
  if (c.l_max) doc["l_max"] = *c.l_max;
  doc["r_values"] = c.r_values;
  doc["theta_grid"] = {{"count", c.theta_grid.count}, {"min", c.theta_grid.min}, {"max", c.theta_grid.max}};
  json outs = json::array();
  for (OutputKind o : c.outputs) outs.push_back(to_string(o));
  doc["outputs"] = outs;
  doc["format"] = to_string(c.format);
  doc["ode_step"] = c.ode_step;
  doc["theta_end"] = c.resolved_theta_end();
  doc["flux_convention"] = to_string(c.flux_convention);
  return doc;
}

std::string config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonical_json(config).dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace finscat::cli
