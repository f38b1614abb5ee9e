#include "finscat/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "finscat/error.hpp"

namespace finscat {
namespace {

void require_length(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

double interpolate(const std::vector<PotentialSample>& samples, double r) {
  if (r <= samples.front().r) return samples.front().v;
  if (r >= samples.back().r) return samples.back().v;
  const auto hi = std::upper_bound(samples.begin(), samples.end(), r,
                                   [](double x, const PotentialSample& s) { return x < s.r; });
  const auto lo = hi - 1;
  const double t = (r - lo->r) / (hi->r - lo->r);
  return lo->v + t * (hi->v - lo->v);
}

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::hard_sphere: return "hard-sphere";
    case PotentialKind::square_well: return "square-well";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(const std::string& name) {
  if (name == "hard-sphere") return PotentialKind::hard_sphere;
  if (name == "square-well") return PotentialKind::square_well;
  if (name == "tabulated") return PotentialKind::tabulated;
  throw DomainError("unknown potential kind '" + name +
                    "' (expected hard-sphere, square-well or tabulated)");
}

PotentialSpec PotentialSpec::hard_sphere(double radius) {
  require_length(radius, "hard-sphere radius");
  PotentialSpec p;
  p.kind_ = PotentialKind::hard_sphere;
  p.radius_ = radius;
  p.cutoff_ = radius;
  return p;
}

PotentialSpec PotentialSpec::square_well(double depth, double radius) {
  require_length(radius, "square-well radius");
  if (!std::isfinite(depth)) throw DomainError("square-well depth must be finite");
  PotentialSpec p;
  p.kind_ = PotentialKind::square_well;
  p.radius_ = radius;
  p.depth_ = depth;
  p.cutoff_ = radius;
  return p;
}

PotentialSpec PotentialSpec::tabulated(std::vector<PotentialSample> samples, double cutoff) {
  if (samples.size() < 2) throw DomainError("tabulated potential needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].r) || !std::isfinite(samples[i].v) || samples[i].r < 0.0) {
      throw DomainError("tabulated potential: sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples[i].r > samples[i - 1].r)) {
      throw DomainError("tabulated potential: radii must be strictly increasing (sample " +
                        std::to_string(i) + ")");
    }
  }
  require_length(cutoff, "tabulated cutoff");
  PotentialSpec p;
  p.kind_ = PotentialKind::tabulated;
  p.samples_ = std::move(samples);
  p.cutoff_ = cutoff;
  p.radius_ = cutoff;
  return p;
}

PotentialSpec PotentialSpec::tabulated(std::vector<PotentialSample> samples) {
  if (samples.empty()) throw DomainError("tabulated potential needs at least two samples");
  const double cutoff = samples.back().r;
  return tabulated(std::move(samples), cutoff);
}

double PotentialSpec::operator()(double r) const {
  switch (kind_) {
    case PotentialKind::hard_sphere:
      throw DomainError("hard-sphere potential has no finite value; use the analytic phases");
    case PotentialKind::square_well:
      return r < radius_ ? -depth_ : 0.0;
    case PotentialKind::tabulated:
      return r >= cutoff_ ? 0.0 : interpolate(samples_, r);
  }
  return 0.0;
}

std::vector<double> PotentialSpec::discontinuities() const {
  switch (kind_) {
    case PotentialKind::hard_sphere:
    case PotentialKind::square_well:
      return {radius_};
    case PotentialKind::tabulated: {
      if (interpolate(samples_, cutoff_) != 0.0) return {cutoff_};
      return {};
    }
  }
  return {};
}

std::vector<PotentialSample> read_potential_csv(std::istream& in) {
  std::vector<PotentialSample> out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    PotentialSample s;
    std::string extra;
    if (!(ss >> s.r >> s.v) || (ss >> extra)) {
      throw DomainError("potential CSV line " + std::to_string(line_no) +
                        ": expected two numeric columns (r, V)");
    }
    out.push_back(s);
  }
  if (!header_seen) throw DomainError("potential CSV is empty (a header line is required)");
  return out;
}

std::vector<PotentialSample> read_potential_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open potential CSV '" + path.string() + "'");
  return read_potential_csv(in);
}

}  // namespace finscat
