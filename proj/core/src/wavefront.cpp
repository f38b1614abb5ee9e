#include "finscat/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "finscat/error.hpp"

namespace finscat {
namespace {

constexpr double kMaxTanGamma = 10.0;

struct Trace {
  std::vector<double> theta;
  std::vector<double> r;
};

double gamma_at(const ObliquityField& gamma, double r, double theta) {
  return theta == 0.0 ? 0.0 : gamma(r, theta);
}

double slope(const ObliquityField& gamma, double r, double theta) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw StepInstabilityError("trace_generatrix: r left (0, inf) at theta = " +
                               std::to_string(theta));
  }
  const double t = std::tan(gamma_at(gamma, r, theta));
  if (!(std::abs(t) <= kMaxTanGamma)) {
    throw StepInstabilityError("trace_generatrix: |tan gamma_sc| = " + std::to_string(std::abs(t)) +
                               " exceeds " + std::to_string(kMaxTanGamma) + " at r = " +
                               std::to_string(r) + ", theta = " + std::to_string(theta) +
                               "; the front is not a graph r(theta) here");
  }
  return -r * t;
}

Trace integrate(const ObliquityField& gamma, double R, double theta_end, int n) {
  const double h = theta_end / n;
  Trace t;
  t.theta.reserve(static_cast<std::size_t>(n) + 1);
  t.r.reserve(static_cast<std::size_t>(n) + 1);
  double r = R;
  t.theta.push_back(0.0);
  t.r.push_back(r);
  for (int i = 0; i < n; ++i) {
    const double th = i * h;
    const double k1 = slope(gamma, r, th);
    const double k2 = slope(gamma, r + h / 2 * k1, th + h / 2);
    const double k3 = slope(gamma, r + h / 2 * k2, th + h / 2);
    const double k4 = slope(gamma, r + h * k3, th + h);
    r += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t.theta.push_back((i + 1) * h);
    t.r.push_back(r);
  }
  return t;
}

// Derivative at xe of the parabola through three points.
double lagrange3_derivative(const double* x, const double* f, double xe) {
  const double d0 = ((xe - x[1]) + (xe - x[2])) / ((x[0] - x[1]) * (x[0] - x[2]));
  const double d1 = ((xe - x[0]) + (xe - x[2])) / ((x[1] - x[0]) * (x[1] - x[2]));
  const double d2 = ((xe - x[0]) + (xe - x[1])) / ((x[2] - x[0]) * (x[2] - x[1]));
  return f[0] * d0 + f[1] * d1 + f[2] * d2;
}

}  // namespace

WavefrontCurve trace_generatrix(const ObliquityField& gamma, double R, double theta_end,
                                double step) {
  constexpr double kPi = std::numbers::pi;
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("trace_generatrix: R must be > 0");
  if (!(step > 0.0) || step > kPi / 500.0 * (1.0 + 1e-12)) {
    throw DomainError("trace_generatrix: step must lie in (0, pi/500]");
  }
  if (!(theta_end > 0.0) || theta_end > kPi - step) {
    throw DomainError("trace_generatrix: theta_end must lie in (0, pi - step]");
  }
  const int n = std::max(1, static_cast<int>(std::ceil(theta_end / step - 1e-9)));
  const Trace coarse = integrate(gamma, R, theta_end, n);
  const Trace fine = integrate(gamma, R, theta_end, 2 * n);

  WavefrontCurve curve;
  curve.R = R;
  curve.step = theta_end / n;
  curve.self_check_difference = std::abs(coarse.r.back() - fine.r.back());
  curve.converged = curve.self_check_difference < 1e-8 * R;
  curve.samples.reserve(coarse.r.size());
  for (std::size_t i = 0; i < coarse.r.size(); ++i) {
    WavefrontSample s;
    s.theta = coarse.theta[i];
    s.r = coarse.r[i];
    s.gamma_sc = gamma_at(gamma, s.r, s.theta);
    curve.samples.push_back(s);
  }
  return curve;
}

WavefrontCurve trace_generatrix(const PhaseShiftSet& phases, double R, double theta_end,
                                double step, FluxConvention convention) {
  const ObliquityField gamma = [&](double r, double theta) {
    return flux(phases, r, theta, convention).gamma_sc;
  };
  return trace_generatrix(gamma, R, theta_end, step);
}

WavefrontCurve gaussian_curvature(WavefrontCurve curve) {
  auto& s = curve.samples;
  if (s.size() < 3) {
    throw InsufficientSamplesError("gaussian_curvature: need at least 3 samples, got " +
                                   std::to_string(s.size()));
  }
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const double th[3] = {s[lo].theta, s[lo + 1].theta, s[lo + 2].theta};
    const double ga[3] = {s[lo].gamma_sc, s[lo + 1].gamma_sc, s[lo + 2].gamma_sc};
    // A sign change of cos γ inside the stencil means j^sc_r crosses zero.
    const bool flips = std::signbit(std::cos(ga[0])) != std::signbit(std::cos(ga[1])) ||
                       std::signbit(std::cos(ga[1])) != std::signbit(std::cos(ga[2]));
    if (flips) {
      s[i].curvature.reset();
      continue;
    }
    const double dgamma = lagrange3_derivative(th, ga, s[i].theta);
    const double r2 = s[i].r * s[i].r;
    if (s[i].theta == 0.0) {
      s[i].curvature = (1.0 + dgamma) * (1.0 - dgamma) / r2;
    } else {
      const double g = s[i].gamma_sc;
      const double c = std::cos(g);
      s[i].curvature = c * c * (1.0 + dgamma) * (1.0 - std::tan(g) / std::tan(s[i].theta)) / r2;
    }
  }
  return curve;
}

double sphericity_deviation(const WavefrontCurve& curve) {
  double worst = 0.0;
  for (const auto& s : curve.samples) worst = std::max(worst, std::abs(s.r / curve.R - 1.0));
  return worst;
}

}  // namespace finscat
