#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "finscat/field.hpp"
#include "finscat/phases.hpp"

namespace finscat {

struct WavefrontSample {
  double theta = 0.0;
  double r = 0.0;
  double gamma_sc = 0.0;
  /// Gaussian curvature; empty until gaussian_curvature() runs, and for
  /// samples where the radial scattered flux changes sign.
  std::optional<double> curvature;
};

/// Generatrix r(θ) of the outgoing wave-front surface, anchored at r(0) = R.
struct WavefrontCurve {
  double R = 0.0;
  double step = 0.0;
  std::vector<WavefrontSample> samples;
  /// |r(θ_end)| difference between the step and half-step traces.
  double self_check_difference = 0.0;
  /// self_check_difference < 1e-8 R.
  bool converged = false;
};

/// γ^sc(r, θ) for θ > 0.
using ObliquityField = std::function<double(double r, double theta)>;

/// Integrates dr/dθ = −r tan γ^sc(r, θ) from r(0) = R with classical RK4 on
/// a uniform grid whose spacing is at most `step` (≤ π/500). γ^sc at the pole
/// is 0. Throws StepInstabilityError if |tan γ^sc| > 10 at any stage.
WavefrontCurve trace_generatrix(const ObliquityField& gamma, double R, double theta_end,
                                double step);

/// As above with γ^sc from the flux of the scattering solution.
WavefrontCurve trace_generatrix(const PhaseShiftSet& phases, double R, double theta_end,
                                double step,
                                FluxConvention convention = FluxConvention::total_minus_incident);

/// K(θ) = (1/r²) cos²γ (1 + dγ/dθ)(1 − tan γ cot θ); at θ = 0 the limit
/// K = (1/R²)(1 + γ')(1 − γ') is used. dγ/dθ is a three-point difference
/// along the curve. Needs at least three samples.
WavefrontCurve gaussian_curvature(WavefrontCurve curve);

/// max |r(θ)/R − 1| over the samples.
double sphericity_deviation(const WavefrontCurve& curve);

}  // namespace finscat
