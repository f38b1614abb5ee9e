#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finscat/amplitude.hpp"
#include "finscat/error.hpp"
#include "finscat/field.hpp"
#include "finscat/observables.hpp"
#include "finscat/phases.hpp"
#include "oracles.hpp"

namespace finscat {
namespace {

constexpr double kPi = std::numbers::pi;

PhaseShiftSet hard_sphere() { return hard_sphere_phases(1.0, 1.0, 21); }
PhaseShiftSet square_well() { return square_well_phases(1.0, 4.0, 1.0, 21); }

std::vector<double> theta_grid(int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(kPi * i / (n - 1));
  return t;
}

double max_deviation(const PhaseShiftSet& p, double r) {
  double worst = 0.0;
  for (double th : theta_grid(181)) {
    worst = std::max(worst, std::abs(amplitude_finite(p, r, th) - amplitude_asymptotic(p, th)));
  }
  return worst;
}

TEST(Amplitude, VanishesWithoutPhaseShifts) {
  const auto p = PhaseShiftSet::from_deltas(1.3, std::vector<double>(12, 0.0));
  for (double r : {0.1, 1.0, 50.0}) {
    for (double th : {0.0, 1.0, kPi}) {
      EXPECT_EQ(amplitude_finite(p, r, th), Complex(0.0));
      EXPECT_EQ(amplitude_asymptotic(p, th), Complex(0.0));
    }
  }
}

TEST(Amplitude, SWaveOnlyIsIndependentOfPosition) {
  const double k = 0.7, d0 = 0.9;
  std::vector<double> deltas(8, 0.0);
  deltas[0] = d0;
  const auto p = PhaseShiftSet::from_deltas(k, deltas);
  const Complex expect = (std::exp(Complex(0.0, 2.0 * d0)) - 1.0) / Complex(0.0, 2.0 * k);
  EXPECT_LT(std::abs(expect - std::polar(std::sin(d0), d0) / k), 1e-15);
  for (double r : {0.2, 3.0, 4e5}) {
    for (double th : {0.0, 0.4, 2.0, kPi}) {
      EXPECT_LT(std::abs(amplitude_finite(p, r, th) - expect), 1e-15);
    }
  }
  EXPECT_LT(std::abs(amplitude_asymptotic(p, 1.1) - expect), 1e-15);
}

TEST(Amplitude, RecoversConventionalAmplitudeFarAway) {
  for (const auto& p : {hard_sphere(), square_well()}) {
    double scale = 0.0;
    for (double th : theta_grid(91)) scale = std::max(scale, std::abs(amplitude_asymptotic(p, th)));
    for (double th : theta_grid(91)) {
      const Complex fin = amplitude_finite(p, 1e6, th);
      const Complex inf = amplitude_asymptotic(p, th);
      EXPECT_LT(std::abs(fin - inf), 1e-5 * std::max(std::abs(inf), 1e-2 * scale)) << th;
    }
  }
}

TEST(Amplitude, FiniteDistanceDeviationDecaysAsInverseR) {
  for (const auto& p : {hard_sphere(), square_well()}) {
    const double ratio = max_deviation(p, 1e3) / max_deviation(p, 1e4);
    EXPECT_NEAR(ratio, 10.0, 2.5);
  }
}

TEST(Amplitude, OpticalTheoremInConventionalLimit) {
  const auto p = hard_sphere();
  const double im_f0 = std::imag(amplitude_asymptotic(p, 0.0));
  double sum = 0.0;
  for (int l = 0; l <= p.l_max; ++l) sum += (2.0 * l + 1.0) * std::pow(std::sin(p.delta[l]), 2);
  EXPECT_LT(oracle::rel_diff(im_f0, sum / p.k), 1e-12);
  EXPECT_LT(oracle::rel_diff(im_f0, p.k * sigma_total_asymptotic(p) / (4.0 * kPi)), 1e-10);
}

TEST(Amplitude, DerivativesMatchFiniteDifferences) {
  const auto p = square_well();
  for (double r : {1.3, 4.0, 25.0}) {
    for (double th : {0.3, 1.2, 2.8}) {
      const auto d = amplitude_derivatives(p, r, th);
      const Complex fd_r = oracle::central_difference(
          [&](double x) { return amplitude_finite(p, x, th); }, r, 1e-5 * r);
      const Complex fd_t = oracle::central_difference(
          [&](double x) { return amplitude_finite(p, r, x); }, th, 1e-5);
      const double scale = std::abs(d.f.value);
      EXPECT_LT(std::abs(d.df_dr - fd_r), 1e-7 * scale / r) << r << " " << th;
      EXPECT_LT(std::abs(d.df_dtheta - fd_t), 1e-7 * scale) << r << " " << th;
    }
  }
}

TEST(Amplitude, SeriesDiagnostics) {
  const auto p = hard_sphere();
  const auto s = amplitude_series(p, 3.0, 0.7);
  EXPECT_LE(s.l_max_eff, p.l_max);
  EXPECT_GT(s.l_max_eff, 2);
  EXPECT_TRUE(std::isfinite(s.tail_estimate));
  EXPECT_LT(s.tail_estimate, 1e-12 * std::abs(s.value));
}

TEST(Amplitude, TermsEventuallyDecrease) {
  const auto p = hard_sphere();
  const double kr = 1.5;
  const Complex z(0.0, 1.0 / kr);
  double prev = INFINITY;
  for (int l = 4; l <= p.l_max; ++l) {
    const double term = (2.0 * l + 1.0) * std::abs(std::sin(p.delta[l])) * std::abs(bessel_poly(l, z));
    EXPECT_LT(term, prev) << l;
    prev = term;
  }
}

TEST(Amplitude, DivergenceGuardFires) {
  std::vector<double> deltas;
  for (int l = 0; l <= 30; ++l) deltas.push_back(0.1 * std::pow(0.5, l));
  const auto p = PhaseShiftSet::from_deltas(1.0, deltas);
  EXPECT_THROW(amplitude_finite(p, 1.0, 0.5), DivergenceError);
  EXPECT_NO_THROW(amplitude_finite(p, 1e4, 0.5));
}

TEST(Amplitude, RejectsBadArguments) {
  const auto p = hard_sphere();
  EXPECT_THROW(amplitude_finite(p, 0.05, 1.0), DomainError);
  EXPECT_THROW(amplitude_finite(p, 2.0, -0.1), DomainError);
  EXPECT_THROW(amplitude_finite(p, 2.0, 3.2), DomainError);
  EXPECT_THROW(amplitude_asymptotic(p, 4.0), DomainError);
}

TEST(ExpansionCoefficients, Examples) {
  const auto zero = PhaseShiftSet::from_deltas(1.0, std::vector<double>(5, 0.0));
  for (const Complex& g : expansion_coefficients(zero, 0.8)) EXPECT_EQ(g, Complex(0.0));

  const double k = 2.0;
  const auto half = PhaseShiftSet::from_deltas(k, {kPi / 2});
  for (double th : {0.0, 1.0, kPi}) {
    EXPECT_LT(std::abs(expansion_coefficients(half, th)[0] - Complex(0.0, 1.0 / k)), 1e-15);
  }
}

TEST(ExpansionCoefficients, ReproduceFiniteAmplitude) {
  for (const auto& p : {hard_sphere(), square_well()}) {
    for (double r : {0.8, 2.0, 30.0}) {
      for (double th : {0.0, 0.9, 2.2, kPi}) {
        const auto g = expansion_coefficients(p, th);
        Complex sum = 0.0;
        for (int l = 0; l <= p.l_max; ++l) sum += g[l] * bessel_poly(l, Complex(0.0, 1.0 / (p.k * r)));
        const Complex f = amplitude_finite(p, r, th);
        EXPECT_LT(std::abs(sum - f), 1e-12 * std::max(1.0, std::abs(f)));
      }
    }
  }
}

TEST(PlaneWave, Examples) {
  EXPECT_EQ(plane_wave_exact(0.0, 1.0, 0).value, Complex(1.0));
  EXPECT_EQ(plane_wave_exact(0.0, 2.0, 30).value, Complex(1.0));
  EXPECT_LT(std::abs(plane_wave_exact(10.0, kPi / 3, 40).value - std::polar(1.0, 5.0)), 1e-8);
  EXPECT_LT(std::abs(plane_wave_exact(20.0, kPi, 50).value - std::polar(1.0, -20.0)), 1e-8);
}

TEST(PlaneWave, RandomPartialSums) {
  auto g = oracle::rng();
  for (int i = 0; i < 100; ++i) {
    const double kr = oracle::uniform(g, 0.0, 20.0);
    const double th = oracle::uniform(g, 0.0, kPi);
    const int lmax = static_cast<int>(std::ceil(kr + 25));
    const auto s = plane_wave_exact(kr, th, lmax);
    EXPECT_FALSE(s.truncation_warning);
    EXPECT_LT(std::abs(s.value - std::polar(1.0, kr * std::cos(th))), 1e-8) << kr << " " << th;
  }
}

TEST(PlaneWave, WarnsOnShortTruncation) {
  EXPECT_TRUE(plane_wave_exact(15.0, 0.5, 20).truncation_warning);
  EXPECT_FALSE(plane_wave_exact(15.0, 0.5, 25).truncation_warning);
  EXPECT_THROW(plane_wave_exact(-1.0, 0.5, 5), DomainError);
}

TEST(PartialWaves, ReconstructBoundaryForm) {
  auto g = oracle::rng(7);
  for (const auto& p : {hard_sphere(), square_well()}) {
    for (int i = 0; i < 40; ++i) {
      const double r = oracle::uniform(g, 1.0, 15.0);
      const double th = oracle::uniform(g, 0.0, kPi);
      const int lmax = static_cast<int>(std::ceil(p.k * r + 25));
      const Complex pw = partial_wave_field(p, r, th, lmax).value;
      const Complex boundary = plane_wave_exact(p.k * r, th, lmax).value +
                               amplitude_finite(p, r, th) * std::polar(1.0, p.k * r) / r;
      EXPECT_LT(std::abs(pw - boundary), 1e-8) << r << " " << th;
    }
  }
}

}  // namespace
}  // namespace finscat
