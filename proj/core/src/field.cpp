#include "finscat/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finscat/error.hpp"

namespace finscat {

FluxVector probability_current(const WaveGradient& psi) {
  return {std::imag(std::conj(psi.value) * psi.d_r), std::imag(std::conj(psi.value) * psi.d_polar)};
}

FieldGradients field_gradients(const PhaseShiftSet& phases, double r, double theta) {
  const AmplitudeDerivatives amp = amplitude_derivatives(phases, r, theta);
  const double k = phases.k;
  const Complex ik(0.0, k);
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  FieldGradients g;
  g.series = amp.f;
  const Complex psi_in = std::polar(1.0, k * r * c);
  g.incident = {psi_in, ik * c * psi_in, -ik * s * psi_in};

  const Complex f = amp.f.value;
  const Complex out = std::polar(1.0, k * r);
  g.scattered.value = f * out / r;
  g.scattered.d_r = out * (amp.df_dr / r + f * (ik / r - 1.0 / (r * r)));
  g.scattered.d_polar = out * amp.df_dtheta / (r * r);
  return g;
}

FieldPoint wavefunction(const PhaseShiftSet& phases, double r, double theta) {
  const Complex f = amplitude_finite(phases, r, theta);
  FieldPoint p;
  p.r = r;
  p.theta = theta;
  p.psi_in = std::polar(1.0, phases.k * r * std::cos(theta));
  p.psi_sc = f * std::polar(1.0, phases.k * r) / r;
  p.psi = p.psi_in + p.psi_sc;
  return p;
}

FieldPoint flux(const PhaseShiftSet& phases, double r, double theta, FluxConvention convention) {
  const FieldGradients g = field_gradients(phases, r, theta);
  const double k = phases.k;
  FieldPoint p;
  p.r = r;
  p.theta = theta;
  p.psi_in = g.incident.value;
  p.psi_sc = g.scattered.value;
  p.psi = p.psi_in + p.psi_sc;

  const WaveGradient total{p.psi, g.incident.d_r + g.scattered.d_r,
                           g.incident.d_polar + g.scattered.d_polar};
  p.j = probability_current(total);
  p.j_in = {k * std::cos(theta), -k * std::sin(theta)};
  switch (convention) {
    case FluxConvention::total_minus_incident:
      p.j_sc = {p.j.radial - p.j_in.radial, p.j.polar - p.j_in.polar};
      break;
    case FluxConvention::scattered_only:
      p.j_sc = probability_current(g.scattered);
      break;
  }
  if (std::hypot(p.j_sc.radial, p.j_sc.polar) < 1e-14 * k) {
    throw UndefinedAngleError("flux: scattered flux vanishes at r = " + std::to_string(r) +
                              ", theta = " + std::to_string(theta) +
                              "; gamma_sc is undefined");
  }
  p.gamma_sc = std::atan2(p.j_sc.polar, p.j_sc.radial);
  return p;
}

WaveGradient partial_wave_field(const PhaseShiftSet& phases, double r, double theta, int l_max) {
  const double k = phases.k;
  const double x = k * r;
  const int lmax = std::max({l_max, phases.l_max, 1});
  const auto j = sph_bessel_j_all(lmax + 1, x);
  const LegendreTable leg = legendre_table(lmax, std::clamp(std::cos(theta), -1.0, 1.0));
  const RadialCoefficients rc = radial_coefficients(phases);
  const double s = std::sin(theta);

  // Outgoing Hankel functions are only needed where δ_l ≠ 0.
  std::vector<Complex> h1(static_cast<std::size_t>(phases.l_max) + 2);
  for (int l = 0; l <= phases.l_max + 1 && l <= kMaxBesselPolyOrder; ++l) {
    h1[static_cast<std::size_t>(l)] = sph_hankel(l, x, HankelKind::first);
  }

  WaveGradient psi{0.0, 0.0, 0.0};
  for (int l = 0; l <= lmax; ++l) {
    const auto il = static_cast<std::size_t>(l);
    // R_l = C h2 + D h1 = 2C j_l + (D − C) h1, which avoids the cancellation
    // between the two Hankel functions below the turning point.
    const Complex free_c = (2.0 * l + 1.0) * i_pow(l) / 2.0;
    const Complex c = l <= phases.l_max ? rc.c[il] : free_c;
    const Complex dmc = l <= phases.l_max ? rc.d[il] - rc.c[il] : Complex(0.0);
    const double dj = l == 0 ? -j[1] : j[il - 1] - (l + 1.0) / x * j[il];
    Complex radial = 2.0 * c * j[il];
    Complex d_radial = 2.0 * c * dj * k;
    if (dmc != Complex(0.0)) {
      const Complex dh = l == 0 ? -h1[1] : h1[il - 1] - (l + 1.0) / x * h1[il];
      radial += dmc * h1[il];
      d_radial += dmc * dh * k;
    }
    psi.value += radial * leg.p[il];
    psi.d_r += d_radial * leg.p[il];
    psi.d_polar += radial * (-s * leg.dp[il]) / r;
  }
  return psi;
}

}  // namespace finscat
