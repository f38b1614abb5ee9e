#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace finscat {

enum class PotentialKind { hard_sphere, square_well, tabulated };

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& name);

struct PotentialSample {
  double r = 0.0;
  double v = 0.0;
};

/// Short-range spherical potential in units 2m/ħ² = 1, so V enters the
/// radial equation as u'' = [l(l+1)/r² + V(r) − k²] u.
///
/// A square well of depth V0 > 0 is attractive: V = −V0 for r < a.
/// Tabulated potentials are linearly interpolated, held constant below the
/// first sample, and vanish for r ≥ cutoff.
class PotentialSpec {
 public:
  static PotentialSpec hard_sphere(double radius);
  static PotentialSpec square_well(double depth, double radius);
  static PotentialSpec tabulated(std::vector<PotentialSample> samples, double cutoff);
  /// Cutoff defaults to the last sample radius.
  static PotentialSpec tabulated(std::vector<PotentialSample> samples);

  PotentialKind kind() const { return kind_; }
  double radius() const { return radius_; }
  double depth() const { return depth_; }
  double cutoff() const { return cutoff_; }
  const std::vector<PotentialSample>& samples() const { return samples_; }

  /// V(r). Throws DomainError for the hard sphere, whose wall is infinite.
  double operator()(double r) const;

  /// Radii in (0, cutoff] where V jumps; the radial integrator restarts there.
  std::vector<double> discontinuities() const;

 private:
  PotentialSpec() = default;

  PotentialKind kind_ = PotentialKind::hard_sphere;
  double radius_ = 0.0;
  double depth_ = 0.0;
  double cutoff_ = 0.0;
  std::vector<PotentialSample> samples_;
};

/// Two-column CSV (r, V) with a header line.
std::vector<PotentialSample> read_potential_csv(std::istream& in);
std::vector<PotentialSample> read_potential_csv(const std::filesystem::path& path);

}  // namespace finscat
