#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "finscat/error.hpp"
#include "finscat/field.hpp"
#include "finscat/phases.hpp"
#include "finscat/wavefront.hpp"

namespace finscat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxStep = kPi / 500;

PhaseShiftSet hard_sphere() { return hard_sphere_phases(1.0, 1.0, 21); }
PhaseShiftSet square_well() { return square_well_phases(1.0, 4.0, 1.0, 21); }

// tan γ = −tan(θ/2) has the closed-form front r = R / cos²(θ/2).
double half_angle_gamma(double, double theta) { return -theta / 2; }
double half_angle_front(double R, double theta) { return R / std::pow(std::cos(theta / 2), 2); }

TEST(Generatrix, ZeroObliquityGivesSphere) {
  const auto curve = trace_generatrix([](double, double) { return 0.0; }, 7.5, 2.0, kMaxStep);
  ASSERT_GT(curve.samples.size(), 300u);
  EXPECT_EQ(curve.samples.front().theta, 0.0);
  for (const auto& s : curve.samples) EXPECT_EQ(s.r, 7.5);
  EXPECT_EQ(sphericity_deviation(curve), 0.0);
  EXPECT_TRUE(curve.converged);
  for (const auto& s : gaussian_curvature(curve).samples) {
    ASSERT_TRUE(s.curvature.has_value());
    EXPECT_NEAR(*s.curvature * s.r * s.r, 1.0, 1e-15);
  }
}

TEST(Generatrix, SamplesAreOrdered) {
  const auto curve = trace_generatrix(half_angle_gamma, 2.0, 1.5, kMaxStep);
  EXPECT_EQ(curve.samples.front().r, 2.0);
  EXPECT_NEAR(curve.samples.back().theta, 1.5, 1e-15);
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    EXPECT_GT(curve.samples[i].theta, curve.samples[i - 1].theta);
    EXPECT_GT(curve.samples[i].r, 0.0);
  }
}

TEST(Generatrix, MatchesClosedFormFront) {
  const auto curve = trace_generatrix(half_angle_gamma, 1.0, 2.5, kMaxStep);
  for (const auto& s : curve.samples) {
    EXPECT_NEAR(s.r / half_angle_front(1.0, s.theta), 1.0, 1e-9);
  }
  EXPECT_TRUE(curve.converged);
}

TEST(Generatrix, FourthOrderConvergence) {
  const double theta_end = 2.5;
  const double exact = half_angle_front(1.0, theta_end);
  // Differences of successive halvings, which need no exact solution.
  const auto end_r = [&](double step) {
    return trace_generatrix(half_angle_gamma, 1.0, theta_end, step).samples.back().r;
  };
  const double r1 = end_r(kMaxStep), r2 = end_r(kMaxStep / 2), r3 = end_r(kMaxStep / 4);
  EXPECT_GE(std::log2(std::abs(r1 - r2) / std::abs(r2 - r3)), 3.5);
  EXPECT_GE(std::log2(std::abs(r1 - exact) / std::abs(r2 - exact)), 3.5);
}

TEST(Generatrix, PhysicalFrontConvergesAtFourthOrder) {
  const auto p = hard_sphere();
  const auto end_r = [&](double step) {
    return trace_generatrix(p, 1.1, 1.5, step, FluxConvention::scattered_only).samples.back().r;
  };
  const double r1 = end_r(kMaxStep), r2 = end_r(kMaxStep / 2), r3 = end_r(kMaxStep / 4);
  EXPECT_GE(std::log2(std::abs(r1 - r2) / std::abs(r2 - r3)), 3.5);
}

// dr/dθ j^sc_r + r j^sc_θ = 0, with dr/dθ from a five-point stencil along
// the traced samples rather than from the integrator's right-hand side.
TEST(Generatrix, TangentIsNormalToScatteredFlux) {
  const auto p = hard_sphere();
  const auto conv = FluxConvention::scattered_only;
  for (double R : {1.5, 30.0}) {
    const auto curve = trace_generatrix(p, R, 2.5, kMaxStep / 2, conv);
    const auto& s = curve.samples;
    const double h = curve.step;
    for (std::size_t i = 2; i + 2 < s.size(); ++i) {
      const double drdt = (s[i - 2].r - 8 * s[i - 1].r + 8 * s[i + 1].r - s[i + 2].r) / (12 * h);
      const auto j = flux(p, s[i].r, s[i].theta, conv).j_sc;
      const double residual = drdt * j.radial + s[i].r * j.polar;
      EXPECT_LT(std::abs(residual), 1e-6 * s[i].r * std::hypot(j.radial, j.polar)) << s[i].theta;
    }
  }
}

TEST(Generatrix, ScatteredOnlyFrontBecomesSpherical) {
  for (const auto& p : {hard_sphere(), square_well()}) {
    double prev = INFINITY;
    std::vector<double> dev;
    for (double kR : {1e3, 1e4, 1e6}) {
      const auto curve = trace_generatrix(p, kR / p.k, kPi - 0.1, kMaxStep,
                                          FluxConvention::scattered_only);
      dev.push_back(sphericity_deviation(curve));
      EXPECT_LT(dev.back(), prev);
      prev = dev.back();
    }
    EXPECT_NEAR(dev[0] / dev[1], 10.0, 2.5);
    EXPECT_LT(dev[2], 1e-3);
  }
}

TEST(Generatrix, LiteralFluxFrontFollowsInterference) {
  const auto p = hard_sphere();
  const double R = 1e6;
  const auto curve = trace_generatrix(p, R, kPi / 2, kMaxStep);
  for (const auto& s : curve.samples) {
    EXPECT_NEAR(s.r / half_angle_front(R, s.theta), 1.0, 1e-4) << s.theta;
  }
}

TEST(Generatrix, NearTangentialFluxAborts) {
  EXPECT_THROW(trace_generatrix([](double, double t) { return t; }, 1.0, 1.6, kMaxStep),
               StepInstabilityError);
}

TEST(Generatrix, RejectsBadArguments) {
  const auto zero = [](double, double) { return 0.0; };
  EXPECT_THROW(trace_generatrix(zero, 1.0, 1.0, kMaxStep * 1.01), DomainError);
  EXPECT_THROW(trace_generatrix(zero, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(trace_generatrix(zero, 1.0, kPi - kMaxStep / 2, kMaxStep), DomainError);
  EXPECT_THROW(trace_generatrix(zero, 1.0, 0.0, kMaxStep), DomainError);
  EXPECT_THROW(trace_generatrix(zero, -1.0, 1.0, kMaxStep), DomainError);
  const auto free = PhaseShiftSet::from_deltas(1.0, std::vector<double>(4, 0.0));
  EXPECT_THROW(trace_generatrix(free, 10.0, 1.0, kMaxStep), UndefinedAngleError);
}

TEST(Curvature, ConstantObliquityClosedForm) {
  const double c = 0.2;
  WavefrontCurve curve;
  curve.R = 3.0;
  for (double th : {0.5, 0.6, 0.7}) curve.samples.push_back({th, 3.0 + th, c, std::nullopt});
  for (const auto& s : gaussian_curvature(curve).samples) {
    const double expect =
        std::pow(std::cos(c), 2) * (1 - std::tan(c) / std::tan(s.theta)) / (s.r * s.r);
    ASSERT_TRUE(s.curvature.has_value());
    EXPECT_NEAR(*s.curvature, expect, 1e-14 * std::abs(expect));
  }
}

TEST(Curvature, PoleLimit) {
  // γ = aθ near the pole: K(0) = (1 + a)(1 − a)/R².
  const double a = 0.3;
  WavefrontCurve curve;
  curve.R = 2.0;
  for (double th : {0.0, 0.01, 0.02}) curve.samples.push_back({th, 2.0, a * th, std::nullopt});
  const auto out = gaussian_curvature(curve);
  EXPECT_NEAR(*out.samples[0].curvature, (1 + a) * (1 - a) / 4.0, 1e-12);
}

TEST(Curvature, HalfAngleFront) {
  // γ = −θ/2 is linear, so the three-point γ' = −1/2 is exact.
  const auto curve = gaussian_curvature(trace_generatrix(half_angle_gamma, 1.0, 2.0, kMaxStep));
  for (const auto& s : curve.samples) {
    if (s.theta == 0.0) continue;
    const double g = -s.theta / 2;
    const double expect = std::pow(std::cos(g), 2) * 0.5 * (1 + std::tan(s.theta / 2) / std::tan(s.theta)) /
                          (s.r * s.r);
    ASSERT_TRUE(s.curvature.has_value());
    EXPECT_NEAR(*s.curvature, expect, 1e-9 * std::abs(expect));
  }
}

TEST(Curvature, NeedsThreeSamples) {
  WavefrontCurve curve;
  curve.samples = {{0.0, 1.0, 0.0, std::nullopt}, {0.1, 1.0, 0.0, std::nullopt}};
  EXPECT_THROW(gaussian_curvature(curve), InsufficientSamplesError);
}

TEST(Curvature, SphericalLimitWithScatteredOnlyFlux) {
  const auto p = hard_sphere();
  const auto curve =
      gaussian_curvature(trace_generatrix(p, 1e6, kPi - 0.1, kMaxStep, FluxConvention::scattered_only));
  for (const auto& s : curve.samples) {
    if (s.theta < 0.1) continue;
    ASSERT_TRUE(s.curvature.has_value());
    EXPECT_LT(std::abs(*s.curvature * s.r * s.r - 1.0), 1e-3) << s.theta;
  }
}

}  // namespace
}  // namespace finscat
