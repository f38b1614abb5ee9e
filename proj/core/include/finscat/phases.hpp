#pragma once

#include <vector>

#include "finscat/potential.hpp"
#include "finscat/specfun.hpp"

namespace finscat {

/// Real phase shifts δ_0 … δ_lmax at wavenumber k, each on the branch
/// (−π/2, π/2].
struct PhaseShiftSet {
  double k = 1.0;
  int l_max = 0;
  std::vector<double> delta;

  /// Validates k and the phases and folds every δ_l onto (−π/2, π/2].
  static PhaseShiftSet from_deltas(double k, std::vector<double> deltas);
};

/// Reduces an angle modulo π onto (−π/2, π/2].
double fold_phase(double delta);

/// ⌈k·r_c⌉ + 20.
int default_l_max(double k, double cutoff);

/// tan δ_l = j_l(ka) / n_l(ka).
PhaseShiftSet hard_sphere_phases(double k, double radius, int l_max);

/// Attractive well for depth > 0; interior wavenumber √(k² + depth).
PhaseShiftSet square_well_phases(double k, double depth, double radius, int l_max);

/// Outward Numerov integration of u_l = r R_l, matched to Riccati–Bessel
/// functions through the logarithmic derivative at r_match. The grid is
/// restarted at every jump of V so that the scheme keeps fourth order.
PhaseShiftSet numerov_phases(const PotentialSpec& potential, double k, int l_max,
                             double r_match, double step);

/// Analytic phases for hard sphere and square well, Numerov for tabulated
/// potentials. l_max < 0 selects default_l_max.
PhaseShiftSet compute_phases(const PotentialSpec& potential, double k, int l_max = -1);

/// R_l = C_l h^(2)_l + D_l h^(1)_l with the incoming-wave matching applied:
/// A_l = (2l+1) e^{ilπ} e^{i(−lπ/2 + δ_l)}, C_l = A_l e^{−iδ_l}/2,
/// D_l = A_l e^{iδ_l}/2.
struct RadialCoefficients {
  std::vector<Complex> c;
  std::vector<Complex> d;
  std::vector<Complex> a;
};

RadialCoefficients radial_coefficients(const PhaseShiftSet& phases);

}  // namespace finscat
