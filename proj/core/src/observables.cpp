#include "finscat/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "finscat/amplitude.hpp"
#include "finscat/error.hpp"

namespace finscat {
namespace {

constexpr double kPi = std::numbers::pi;

double eta_from(const AmplitudeDerivatives& a, double k, double r, double theta) {
  const Complex f = a.f.value;
  const double c = std::cos(theta);
  const Complex interference = std::polar(1.0, k * r * (1.0 - c)) *
                               ((Complex(0.0, k * r * (1.0 + c)) - 1.0) * f + r * a.df_dr);
  return std::imag(std::conj(f) * a.df_dr + interference) / k;
}

// 1 + tan²γ = 1/cos²γ is singular when the scattered flux turns tangential.
// The far-field flux itself scales as k|f|²/r², so the test is on cos γ.
void require_oblique(const FieldPoint& p, const char* what) {
  if (std::abs(p.j_sc.radial) < 1e-12 * std::hypot(p.j_sc.radial, p.j_sc.polar)) {
    throw SingularObliquityError(std::string(what) + ": radial scattered flux vanishes at r = " +
                                 std::to_string(p.r) + ", theta = " + std::to_string(p.theta));
  }
}

}  // namespace

double eta_correction(const PhaseShiftSet& phases, double r, double theta) {
  return eta_from(amplitude_derivatives(phases, r, theta), phases.k, r, theta);
}

CrossSectionSample differential_cross_section(const PhaseShiftSet& phases, double r, double theta) {
  const double k = phases.k;
  const AmplitudeDerivatives a = amplitude_derivatives(phases, r, theta);
  const FieldPoint p = flux(phases, r, theta);
  require_oblique(p, "differential_cross_section");
  CrossSectionSample s;
  s.r = r;
  s.theta = theta;
  s.f_abs2 = std::norm(a.f.value);
  s.eta = eta_from(a, k, r, theta);
  s.tan_gamma = p.j_sc.polar / p.j_sc.radial;
  s.dsigma_domega = (s.f_abs2 + s.eta) * (1.0 + s.tan_gamma * s.tan_gamma);
  return s;
}

double differential_cross_section_flux(const PhaseShiftSet& phases, double r, double theta) {
  const double k = phases.k;
  const FieldPoint p = flux(phases, r, theta);
  require_oblique(p, "differential_cross_section_flux");
  const double tan_g = p.j_sc.polar / p.j_sc.radial;
  return r * r * (1.0 + tan_g * tan_g) * p.j_sc.radial / k;
}

double radially_averaged_cross_section(const PhaseShiftSet& phases, double r, double theta,
                                       int samples) {
  if (samples < 1) throw DomainError("radially_averaged_cross_section: samples must be >= 1");
  const double wavelength = 2.0 * kPi / phases.k;
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    acc += differential_cross_section(phases, r + wavelength * i / samples, theta).dsigma_domega;
  }
  return acc / samples;
}

double sigma_total(const PhaseShiftSet& phases, double R) {
  const double k = phases.k;
  const double kR = k * R;
  if (!(kR >= kMinSeriesKr) || !std::isfinite(kR)) {
    throw DomainError("sigma_total: k*R must be >= " + std::to_string(kMinSeriesKr));
  }
  const Complex z(0.0, 1.0 / kR);
  double acc = 0.0;
  double prev = -1.0;
  int growth = 0;
  for (int l = 0; l <= phases.l_max; ++l) {
    const double s = std::sin(phases.delta[static_cast<std::size_t>(l)]);
    const double y2 = std::norm(bessel_poly(l, z));
    const double guard = std::abs(s) * std::sqrt(y2);
    if (2 * l > phases.l_max && prev > 0.0 && guard > prev) {
      if (++growth >= 5) {
        throw DivergenceError("sigma_total: partial-wave terms grow at kR = " + std::to_string(kR));
      }
    } else {
      growth = 0;
    }
    prev = guard;
    acc += (2.0 * l + 1.0) * s * s * y2;
  }
  return 4.0 * kPi / (k * k) * acc;
}

double sigma_total_asymptotic(const PhaseShiftSet& phases) {
  double acc = 0.0;
  for (int l = 0; l <= phases.l_max; ++l) {
    const double s = std::sin(phases.delta[static_cast<std::size_t>(l)]);
    acc += (2.0 * l + 1.0) * s * s;
  }
  return 4.0 * kPi / (phases.k * phases.k) * acc;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  QuadratureRule q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int m = 1; m < n; ++m) {
        const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-14) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int m = 1; m < n; ++m) {
        const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[static_cast<std::size_t>(i)] = -x;
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    q.weights[static_cast<std::size_t>(i)] = w;
    q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return q;
}

double sigma_total_quadrature(const PhaseShiftSet& phases, double R, int n) {
  const QuadratureRule q = gauss_legendre(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    acc += q.weights[i] * std::norm(amplitude_finite(phases, R, std::acos(q.nodes[i])));
  }
  return 2.0 * kPi * acc;
}

}  // namespace finscat
