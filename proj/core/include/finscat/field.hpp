#pragma once

#include "finscat/amplitude.hpp"
#include "finscat/phases.hpp"
#include "finscat/specfun.hpp"

namespace finscat {

/// Which flux is called the scattered flux j^sc.
enum class FluxConvention {
  /// j^sc = j − j^in for ψ = ψ^in + ψ^sc. Includes the incident–scattered
  /// interference current, which decays only as 1/r.
  total_minus_incident,
  /// j^sc = Im(ψ^sc* ∇ψ^sc), the current of the outgoing wave alone.
  scattered_only,
};

/// Probability current in the local polar frame, in natural units ħ = m = 1.
struct FluxVector {
  double radial = 0.0;
  double polar = 0.0;
};

/// A complex field value with its gradient (∂/∂r, (1/r)∂/∂θ).
struct WaveGradient {
  Complex value;
  Complex d_r;
  Complex d_polar;
};

/// j = Im(ψ* ∇ψ).
FluxVector probability_current(const WaveGradient& psi);

/// Wavefunction parts and fluxes at one (r, θ).
struct FieldPoint {
  double r = 0.0;
  double theta = 0.0;
  Complex psi_in;
  Complex psi_sc;
  Complex psi;
  FluxVector j_in;
  FluxVector j_sc;
  FluxVector j;
  /// atan2(j^sc_θ, j^sc_r); only meaningful when flux() produced the point.
  double gamma_sc = 0.0;
};

/// ψ^in = e^{ikr cos θ}, ψ^sc = f(r,θ) e^{ikr}/r and ψ = ψ^in + ψ^sc.
/// The flux members are left zero.
FieldPoint wavefunction(const PhaseShiftSet& phases, double r, double theta);

/// ψ^in, ψ^sc with exact gradients (no numerical differentiation).
struct FieldGradients {
  WaveGradient incident;
  WaveGradient scattered;
  AmplitudeSeries series;
};

FieldGradients field_gradients(const PhaseShiftSet& phases, double r, double theta);

/// Complete FieldPoint. Throws UndefinedAngleError when |j^sc| < 1e-14 k.
FieldPoint flux(const PhaseShiftSet& phases, double r, double theta,
                FluxConvention convention = FluxConvention::total_minus_incident);

/// ψ and its gradient from the partial-wave sum Σ_l R_l(r) P_l(cos θ) with
/// R_l = C_l h^(2)_l(kr) + D_l h^(1)_l(kr), using the matched coefficients
/// of radial_coefficients. Partial waves above phases.l_max are free. l_max
/// sets the truncation of the sum and should exceed kr + 25.
WaveGradient partial_wave_field(const PhaseShiftSet& phases, double r, double theta, int l_max);

}  // namespace finscat
