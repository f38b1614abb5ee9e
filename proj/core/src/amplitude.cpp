#include "finscat/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "finscat/error.hpp"

namespace finscat {
namespace {

constexpr int kGrowthRun = 5;

void require_angle(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
}

// (2l+1) e^{iδ} sin δ, i.e. (2l+1)(e^{2iδ} − 1)/(2i).
Complex partial_weight(int l, double delta) {
  return (2.0 * l + 1.0) * std::polar(std::sin(delta), delta);
}

template <bool WithDerivatives>
AmplitudeDerivatives sum_series(const PhaseShiftSet& phases, double r, double theta) {
  require_angle(theta);
  const double k = phases.k;
  const double kr = k * r;
  if (!(kr >= kMinSeriesKr) || !std::isfinite(kr)) {
    throw DomainError("amplitude: k*r must be >= " + std::to_string(kMinSeriesKr) + ", got " +
                      std::to_string(kr));
  }
  const int lmax = phases.l_max;
  const double u = std::cos(theta);
  const LegendreTable leg = legendre_table(lmax, std::clamp(u, -1.0, 1.0));
  const Complex z(0.0, 1.0 / kr);
  const Complex dz_dr(0.0, -1.0 / (k * r * r));
  const double sin_t = std::sin(theta);

  AmplitudeDerivatives out;
  Complex f = 0.0, fr = 0.0, ft = 0.0;
  std::vector<double> mags(static_cast<std::size_t>(lmax) + 1);
  double prev_guard = -1.0;
  int growth = 0;
  for (int l = 0; l <= lmax; ++l) {
    const auto il = static_cast<std::size_t>(l);
    const Complex w = partial_weight(l, phases.delta[il]);
    const Complex y = bessel_poly(l, z);
    // Guard on |(e^{2iδ}−1) y_l|, independent of the angular factor.
    const double guard = std::abs(2.0 * std::sin(phases.delta[il])) * std::abs(y);
    if (2 * l > lmax && prev_guard > 0.0 && guard > prev_guard) {
      if (++growth >= kGrowthRun) {
        throw DivergenceError("amplitude: partial-wave terms grow for " +
                              std::to_string(kGrowthRun) + " consecutive l up to l = " +
                              std::to_string(l) + " at kr = " + std::to_string(kr) +
                              "; the series does not converge this close to the target");
      }
    } else {
      growth = 0;
    }
    prev_guard = guard;

    const Complex term = w * leg.p[il] * y;
    mags[il] = std::abs(term) / k;
    f += term;
    if constexpr (WithDerivatives) {
      fr += w * leg.p[il] * bessel_poly_derivative(l, z) * dz_dr;
      ft += w * (-sin_t * leg.dp[il]) * y;
    }
  }
  out.f.value = f / k;
  out.df_dr = fr / k;
  out.df_dtheta = ft / k;
  const double biggest = *std::max_element(mags.begin(), mags.end());
  out.f.l_max_eff = 0;
  for (int l = lmax; l >= 0; --l) {
    if (mags[static_cast<std::size_t>(l)] > 1e-16 * biggest) {
      out.f.l_max_eff = l;
      break;
    }
  }
  out.f.tail_estimate = mags.back();
  return out;
}

}  // namespace

AmplitudeSeries amplitude_series(const PhaseShiftSet& phases, double r, double theta) {
  return sum_series<false>(phases, r, theta).f;
}

Complex amplitude_finite(const PhaseShiftSet& phases, double r, double theta) {
  return amplitude_series(phases, r, theta).value;
}

AmplitudeDerivatives amplitude_derivatives(const PhaseShiftSet& phases, double r, double theta) {
  return sum_series<true>(phases, r, theta);
}

Complex amplitude_asymptotic(const PhaseShiftSet& phases, double theta) {
  require_angle(theta);
  const LegendreTable leg = legendre_table(phases.l_max, std::clamp(std::cos(theta), -1.0, 1.0));
  Complex f = 0.0;
  for (int l = 0; l <= phases.l_max; ++l) {
    const auto il = static_cast<std::size_t>(l);
    f += partial_weight(l, phases.delta[il]) * leg.p[il];
  }
  return f / phases.k;
}

std::vector<Complex> expansion_coefficients(const PhaseShiftSet& phases, double theta) {
  require_angle(theta);
  const LegendreTable leg = legendre_table(phases.l_max, std::clamp(std::cos(theta), -1.0, 1.0));
  std::vector<Complex> g(phases.delta.size());
  for (std::size_t l = 0; l < g.size(); ++l) {
    g[l] = partial_weight(static_cast<int>(l), phases.delta[l]) * leg.p[l] / phases.k;
  }
  return g;
}

PlaneWaveSum plane_wave_exact(double kr, double theta, int l_max) {
  require_angle(theta);
  if (!(kr >= 0.0) || !std::isfinite(kr)) {
    throw DomainError("plane_wave_exact: kr must be finite and >= 0");
  }
  if (l_max < 0) throw DomainError("plane_wave_exact: l_max must be >= 0");
  PlaneWaveSum out;
  out.truncation_warning = l_max < kr + 10.0;
  if (kr == 0.0) {
    out.value = 1.0;
    return out;
  }
  const LegendreTable leg = legendre_table(l_max, std::clamp(std::cos(theta), -1.0, 1.0));
  const auto j = sph_bessel_j_all(l_max, kr);
  constexpr double kMaxSineFormModulus = 10.0;
  Complex sum = 0.0;
  for (int l = 0; l <= l_max; ++l) {
    const auto il = static_cast<std::size_t>(l);
    double radial = j[il];
    if (kr >= kMinSeriesKr && l <= kMaxBesselPolyOrder) {
      const ModulusArgument ma = modulus_argument(l, kr);
      if (ma.modulus <= kMaxSineFormModulus) {
        // sin(kr − lπ/2 + Δ) with the lπ/2 shift applied exactly.
        const double phase = kr + ma.argument;
        double s = 0.0;
        switch (l % 4) {
          case 0: s = std::sin(phase); break;
          case 1: s = -std::cos(phase); break;
          case 2: s = -std::sin(phase); break;
          default: s = std::cos(phase); break;
        }
        radial = ma.modulus * s / kr;
      }
    }
    sum += (2.0 * l + 1.0) * i_pow(l) * radial * leg.p[il];
  }
  out.value = sum;
  return out;
}

}  // namespace finscat
