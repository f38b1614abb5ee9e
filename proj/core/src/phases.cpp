#include "finscat/phases.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "finscat/error.hpp"

namespace finscat {
namespace {

constexpr double kPi = std::numbers::pi;

void require_wavenumber(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("wavenumber k must be finite and > 0, got " + std::to_string(k));
  }
}

void require_l_max(int l_max) {
  if (l_max < 0) throw DomainError("l_max must be >= 0, got " + std::to_string(l_max));
}

// δ from tan δ = num/den, folded onto the principal branch. Taking den ≥ 0
// keeps atan2 away from ±π, where tiny phases would round to zero.
double phase_from_ratio(double num, double den) {
  if (!std::isfinite(den)) return 0.0;
  if (std::signbit(den)) {
    num = -num;
    den = -den;
  }
  return fold_phase(std::atan2(num, den));
}

// One radial segment on which V is smooth. The potential is sampled strictly
// inside [lo, hi] so that the endpoints pick up one-sided limits.
struct Segment {
  double lo;
  double hi;
};

class RadialProblem {
 public:
  RadialProblem(const PotentialSpec& v, double k, int l) : v_(v), k2_(k * k), ll_(l * (l + 1.0)) {}

  double q(double r, const Segment& s) const {
    const double guard = 1e-12 * s.hi;
    const double rv = std::clamp(r, s.lo + guard, s.hi - guard);
    return ll_ / (r * r) + v_(rv) - k2_;
  }

 private:
  const PotentialSpec& v_;
  double k2_;
  double ll_;
};

// u and u' at r_end.
struct RadialState {
  double u;
  double du;
};

// Carries (u, u') across a short interval with classical RK4 sub-steps.
RadialState rk4_carry(const RadialProblem& p, const Segment& s, double r0, RadialState y,
                      double length) {
  constexpr int kSubsteps = 16;
  const double h = length / kSubsteps;
  double r = r0;
  for (int i = 0; i < kSubsteps; ++i) {
    const auto f = [&](double rr, double u, double du) {
      return std::array<double, 2>{du, p.q(rr, s) * u};
    };
    const auto k1 = f(r, y.u, y.du);
    const auto k2 = f(r + h / 2, y.u + h / 2 * k1[0], y.du + h / 2 * k1[1]);
    const auto k3 = f(r + h / 2, y.u + h / 2 * k2[0], y.du + h / 2 * k2[1]);
    const auto k4 = f(r + h, y.u + h * k3[0], y.du + h * k3[1]);
    y.u += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    y.du += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    r += h;
  }
  return y;
}

RadialState integrate_radial(const PotentialSpec& potential, double k, int l, double r_match,
                             double step) {
  constexpr double kRescaleAbove = 1e200;
  const RadialProblem prob(potential, k, l);

  std::vector<double> cuts;
  for (double b : potential.discontinuities()) {
    if (b > 0.0 && b < r_match) cuts.push_back(b);
  }
  cuts.push_back(r_match);

  // Integration starts where the centrifugal term is tame for Numerov.
  const int n0 = l == 0 ? 0 : std::max(1, static_cast<int>(std::ceil(std::sqrt(l * (l + 1.0) / 6.0))));

  RadialState carried{0.0, 0.0};
  double lo = 0.0;
  for (std::size_t si = 0; si < cuts.size(); ++si) {
    const Segment seg{lo, cuts[si]};
    const double len = seg.hi - seg.lo;
    int n = std::max(2, static_cast<int>(std::ceil(len / step - 1e-9)));
    if (si == 0) n = std::max(n, n0 + 3);
    const double h = len / n;

    // Three most recent nodes: u[i-2], u[i-1], u[i] and their Q values.
    double u_prev2 = 0.0, u_prev = 0.0, u_cur = 0.0;
    double q_prev2 = 0.0, q_prev = 0.0, q_cur = 0.0;
    int i = 0;
    if (si == 0) {
      if (l == 0) {
        u_prev = 0.0;
        q_prev = 0.0;  // Q(0)·u(0) = 0
        u_cur = h;
        q_cur = prob.q(h, seg);
        i = 1;
      } else {
        const double rs = n0 * h;
        const auto series = [&](double r) {
          const double corr = 1.0 + (prob.q(r, seg) - l * (l + 1.0) / (r * r)) * r * r / (2.0 * (2.0 * l + 3.0));
          return std::pow(r / rs, l + 1.0) * corr;
        };
        u_prev = series(rs);
        q_prev = prob.q(rs, seg);
        u_cur = series(rs + h);
        q_cur = prob.q(rs + h, seg);
        i = n0 + 1;
      }
    } else {
      u_prev = carried.u;
      q_prev = prob.q(seg.lo, seg);
      const RadialState next = rk4_carry(prob, seg, seg.lo, carried, h);
      u_cur = next.u;
      q_cur = prob.q(seg.lo + h, seg);
      i = 1;
    }
    u_prev2 = u_prev;
    q_prev2 = q_prev;

    const double h2 = h * h / 12.0;
    int computed = 1;  // nodes beyond the first one available for the derivative stencil
    for (; i < n; ++i) {
      const double r_next = seg.lo + (i + 1) * h;
      const double q_next = prob.q(r_next, seg);
      const double denom = 1.0 - h2 * q_next;
      if (!(denom > 0.0)) {
        throw DomainError("numerov_phases: step " + std::to_string(step) +
                          " too coarse for the local potential near r = " + std::to_string(r_next));
      }
      const double w_next = 2.0 * (1.0 - h2 * q_cur) * u_cur - (1.0 - h2 * q_prev) * u_prev +
                            12.0 * h2 * q_cur * u_cur;
      const double u_next = w_next / denom;
      u_prev2 = u_prev;
      q_prev2 = q_prev;
      u_prev = u_cur;
      q_prev = q_cur;
      u_cur = u_next;
      q_cur = q_next;
      ++computed;
      if (std::abs(u_cur) > kRescaleAbove) {
        u_prev2 /= kRescaleAbove;
        u_prev /= kRescaleAbove;
        u_cur /= kRescaleAbove;
      }
    }
    if (computed < 2) {
      throw DomainError("numerov_phases: segment [" + std::to_string(seg.lo) + ", " +
                        std::to_string(seg.hi) + "] too short for the step");
    }
    // Backward fourth-order derivative using u'' = Q u at the last three nodes.
    const double du = (u_cur - u_prev) / h +
                      h * (7.0 * q_cur * u_cur + 6.0 * q_prev * u_prev - q_prev2 * u_prev2) / 24.0;
    carried = {u_cur, du};
    lo = seg.hi;
  }
  return carried;
}

}  // namespace

double fold_phase(double delta) {
  if (!std::isfinite(delta)) throw DomainError("phase shift must be finite");
  double d = std::remainder(delta, kPi);  // [-π/2, π/2]
  if (d <= -kPi / 2) d += kPi;
  return d;
}

PhaseShiftSet PhaseShiftSet::from_deltas(double k, std::vector<double> deltas) {
  require_wavenumber(k);
  if (deltas.empty()) throw DomainError("phase shift set needs at least delta_0");
  for (double& d : deltas) d = fold_phase(d);
  PhaseShiftSet s;
  s.k = k;
  s.l_max = static_cast<int>(deltas.size()) - 1;
  s.delta = std::move(deltas);
  return s;
}

int default_l_max(double k, double cutoff) {
  return static_cast<int>(std::ceil(k * cutoff)) + 20;
}

PhaseShiftSet hard_sphere_phases(double k, double radius, int l_max) {
  require_wavenumber(k);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("hard-sphere radius must be > 0");
  require_l_max(l_max);
  const double x = k * radius;
  const auto j = sph_bessel_j_all(l_max, x);
  const auto n = sph_neumann_all(l_max, x);
  std::vector<double> delta(static_cast<std::size_t>(l_max) + 1);
  for (std::size_t l = 0; l < delta.size(); ++l) delta[l] = phase_from_ratio(j[l], n[l]);
  return PhaseShiftSet::from_deltas(k, std::move(delta));
}

PhaseShiftSet square_well_phases(double k, double depth, double radius, int l_max) {
  require_wavenumber(k);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("square-well radius must be > 0");
  require_l_max(l_max);
  const double kin2 = k * k + depth;
  if (!(kin2 > 0.0)) {
    throw DomainError("square_well_phases: k^2 + V0 must be > 0, got " + std::to_string(kin2));
  }
  const double kin = std::sqrt(kin2);
  std::vector<double> delta(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) {
    const RiccatiBessel out = riccati_bessel(l, k * radius);
    const RiccatiBessel in = riccati_bessel(l, kin * radius);
    // Continuity of u'/u at r = a, multiplied through by ĵ_l(k'a).
    const double num = k * out.dj * in.j - kin * in.dj * out.j;
    const double den = k * out.dn * in.j - kin * in.dj * out.n;
    delta[static_cast<std::size_t>(l)] = phase_from_ratio(num, den);
  }
  return PhaseShiftSet::from_deltas(k, std::move(delta));
}

PhaseShiftSet numerov_phases(const PotentialSpec& potential, double k, int l_max, double r_match,
                             double step) {
  require_wavenumber(k);
  require_l_max(l_max);
  if (potential.kind() == PotentialKind::hard_sphere) {
    throw DomainError("numerov_phases: the hard-sphere wall is handled analytically");
  }
  if (!(r_match >= potential.cutoff())) {
    throw DomainError("numerov_phases: r_match " + std::to_string(r_match) +
                      " lies inside the potential cutoff " + std::to_string(potential.cutoff()));
  }
  const double max_step = std::min(1.0 / (10.0 * k), potential.radius() / 100.0);
  if (!(step > 0.0) || step > max_step * (1.0 + 1e-12)) {
    throw DomainError("numerov_phases: step must be in (0, " + std::to_string(max_step) + "]");
  }

  const double x = k * r_match;
  std::vector<double> delta(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) {
    const RadialState s = integrate_radial(potential, k, l, r_match, step);
    if (s.u == 0.0 || std::abs(k * s.u) < 1e-15 * std::abs(s.du)) {
      throw MatchNodeError("numerov_phases: u_" + std::to_string(l) + " has a node at r_match = " +
                           std::to_string(r_match) + "; shift the matching radius");
    }
    const RiccatiBessel rb = riccati_bessel(l, x);
    const double num = k * rb.dj * s.u - s.du * rb.j;
    const double den = k * rb.dn * s.u - s.du * rb.n;
    delta[static_cast<std::size_t>(l)] = phase_from_ratio(num, den);
  }
  return PhaseShiftSet::from_deltas(k, std::move(delta));
}

PhaseShiftSet compute_phases(const PotentialSpec& potential, double k, int l_max) {
  require_wavenumber(k);
  const int lmax = l_max < 0 ? default_l_max(k, potential.cutoff()) : l_max;
  switch (potential.kind()) {
    case PotentialKind::hard_sphere:
      return hard_sphere_phases(k, potential.radius(), lmax);
    case PotentialKind::square_well:
      return square_well_phases(k, potential.depth(), potential.radius(), lmax);
    case PotentialKind::tabulated: {
      const double step = std::min(1.0 / (10.0 * k), potential.radius() / 100.0) / 4.0;
      return numerov_phases(potential, k, lmax, potential.cutoff(), step);
    }
  }
  throw DomainError("compute_phases: unknown potential kind");
}

RadialCoefficients radial_coefficients(const PhaseShiftSet& phases) {
  RadialCoefficients rc;
  const auto n = phases.delta.size();
  rc.a.resize(n);
  rc.c.resize(n);
  rc.d.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double dl = phases.delta[l];
    // e^{ilπ} e^{-ilπ/2} = i^l
    rc.a[l] = (2.0 * l + 1.0) * i_pow(static_cast<int>(l)) * std::polar(1.0, dl);
    rc.c[l] = rc.a[l] * std::polar(1.0, -dl) / 2.0;
    rc.d[l] = rc.a[l] * std::polar(1.0, dl) / 2.0;
  }
  return rc;
}

}  // namespace finscat
