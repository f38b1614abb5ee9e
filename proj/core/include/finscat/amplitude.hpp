#pragma once

#include <vector>

#include "finscat/phases.hpp"
#include "finscat/specfun.hpp"

namespace finscat {

/// Smallest kr accepted by the finite-distance series.
inline constexpr double kMinSeriesKr = 0.1;

/// f(r,θ) together with how the partial-wave series behaved.
struct AmplitudeSeries {
  Complex value;
  /// Highest l whose term is above 1e-16 of the largest term.
  int l_max_eff = 0;
  /// Magnitude of the last summed term, |(2l+1) e^{iδ} sin δ y_l P_l| / k.
  double tail_estimate = 0.0;
};

/// f and its exact partial derivatives in r and θ.
struct AmplitudeDerivatives {
  AmplitudeSeries f;
  Complex df_dr;
  Complex df_dtheta;
};

/// f(r,θ) = (1/2ik) Σ_l (2l+1)(e^{2iδ_l} − 1) P_l(cos θ) y_l(i/kr), summed in
/// ascending l. Throws DivergenceError when |(e^{2iδ_l}−1) y_l| grows for five
/// consecutive l beyond l_max/2.
Complex amplitude_finite(const PhaseShiftSet& phases, double r, double theta);
AmplitudeSeries amplitude_series(const PhaseShiftSet& phases, double r, double theta);

/// As amplitude_series, plus ∂f/∂r from the polynomial derivative of
/// y_l(i/kr) and ∂f/∂θ from dP_l/d cos θ.
AmplitudeDerivatives amplitude_derivatives(const PhaseShiftSet& phases, double r, double theta);

/// Conventional r → ∞ amplitude (all y_l = 1).
Complex amplitude_asymptotic(const PhaseShiftSet& phases, double theta);

/// Coefficients g_l(θ) = −(1/2ik)(2l+1)(1 − e^{2iδ_l}) P_l(cos θ) of the
/// Bessel-polynomial expansion f = Σ g_l y_l(i/kr).
std::vector<Complex> expansion_coefficients(const PhaseShiftSet& phases, double theta);

struct PlaneWaveSum {
  Complex value;
  /// Set when l_max < kr + 10.
  bool truncation_warning = false;
};

/// Partial sum of e^{ikr cos θ} in the modulus/argument form
/// Σ (2l+1) i^l M_l (1/kr) sin(kr − lπ/2 + Δ_l) P_l(cos θ).
///
/// Terms whose modulus M_l exceeds 10 (below the turning point, where the
/// Horner sum for y_l and the sine form lose digits to cancellation) and every term for kr < 0.1 use
/// the identical value i^l j_l(kr) from the Bessel recurrence.
PlaneWaveSum plane_wave_exact(double kr, double theta, int l_max);

}  // namespace finscat
