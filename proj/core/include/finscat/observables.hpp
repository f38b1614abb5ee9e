#pragma once

#include <vector>

#include "finscat/field.hpp"
#include "finscat/phases.hpp"

namespace finscat {

/// One point of the finite-distance differential cross section.
struct CrossSectionSample {
  double r = 0.0;
  double theta = 0.0;
  double dsigma_domega = 0.0;
  double f_abs2 = 0.0;
  double eta = 0.0;
  double tan_gamma = 0.0;
};

/// η(r,θ) = (1/k) Im{ f* ∂f/∂r + e^{ikr(1−cos θ)} [ (ikr(1+cos θ) − 1) f + r ∂f/∂r ] }.
double eta_correction(const PhaseShiftSet& phases, double r, double theta);

/// dσ/dΩ = (|f|² + η)(1 + tan² γ^sc). Throws SingularObliquityError when
/// |j^sc_r| < 1e-12 |j^sc|.
CrossSectionSample differential_cross_section(const PhaseShiftSet& phases, double r, double theta);

/// The same quantity from the flux: r² (1 + tan² γ^sc) j^sc_r / j^in, j^in = k.
double differential_cross_section_flux(const PhaseShiftSet& phases, double r, double theta);

/// dσ/dΩ averaged over one radial wavelength [r, r + 2π/k) with a periodic
/// trapezoid rule, which removes the oscillating interference part of η.
double radially_averaged_cross_section(const PhaseShiftSet& phases, double r, double theta,
                                       int samples = 64);

/// σ_t(R) = (4π/k²) Σ (2l+1) sin²δ_l |y_l(i/kR)|².
double sigma_total(const PhaseShiftSet& phases, double R);

/// σ_t(∞) = (4π/k²) Σ (2l+1) sin²δ_l.
double sigma_total_asymptotic(const PhaseShiftSet& phases);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [−1, 1]; Newton iteration on the roots of
/// P_n to 1e-14.
QuadratureRule gauss_legendre(int n);

/// 2π ∫ |f(R,θ)|² sin θ dθ by an n-point Gauss–Legendre rule in cos θ.
double sigma_total_quadrature(const PhaseShiftSet& phases, double R, int n = 128);

}  // namespace finscat
