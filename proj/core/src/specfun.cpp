#include "finscat/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "finscat/error.hpp"

namespace finscat {
namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

void require_order(int l, const char* what) {
  if (l < 0) {
    throw DomainError(std::string(what) + ": order must be >= 0, got " + std::to_string(l));
  }
}

// Downward recurrence is only used below the turning point; the start order
// follows the usual l + sqrt(40 l) + 15 rule.
int miller_start_order(int lmax) {
  return lmax + static_cast<int>(std::ceil(std::sqrt(40.0 * lmax))) + 15;
}

std::vector<double> sph_bessel_j_downward(int lmax, double x) {
  constexpr double kRescaleAbove = 1e250;
  const int start = miller_start_order(lmax);
  std::vector<double> out(static_cast<std::size_t>(lmax) + 1, 0.0);
  std::vector<double> low(2, 0.0);  // f_0, f_1 of the unnormalised sequence

  double f_next = 0.0;  // f_{n+1}
  double f = 1e-300;    // f_n
  for (int n = start; n >= 1; --n) {
    const double f_prev = (2.0 * n + 1.0) / x * f - f_next;
    f_next = f;
    f = f_prev;  // now f_{n-1}
    if (n <= lmax) out[static_cast<std::size_t>(n)] = f_next;
    if (std::abs(f) > kRescaleAbove) {
      f *= 1.0 / kRescaleAbove;
      f_next *= 1.0 / kRescaleAbove;
      for (int m = n; m <= lmax; ++m) out[static_cast<std::size_t>(m)] *= 1.0 / kRescaleAbove;
    }
  }
  out[0] = f;
  low[0] = f;
  low[1] = f_next;

  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  // Normalise against whichever of j_0, j_1 is further from a zero.
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / low[0] : j1 / low[1];
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> sph_bessel_j_upward(int lmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(lmax) + 1);
  out[0] = std::sin(x) / x;
  if (lmax == 0) return out;
  out[1] = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int l = 1; l < lmax; ++l) {
    out[static_cast<std::size_t>(l) + 1] =
        (2.0 * l + 1.0) / x * out[static_cast<std::size_t>(l)] - out[static_cast<std::size_t>(l) - 1];
  }
  return out;
}

}  // namespace

HankelKind hankel_kind_from_int(int kind) {
  if (kind == 1) return HankelKind::first;
  if (kind == 2) return HankelKind::second;
  throw DomainError("sph_hankel: kind must be 1 or 2, got " + std::to_string(kind));
}

std::vector<double> bessel_poly_coefficients(int l) {
  require_order(l, "bessel_poly");
  if (l > kMaxBesselPolyOrder) {
    throw OrderTooLargeError("bessel_poly: order " + std::to_string(l) +
                             " exceeds the supported maximum of " +
                             std::to_string(kMaxBesselPolyOrder));
  }
  std::vector<double> c(static_cast<std::size_t>(l) + 1);
  c[0] = 1.0;
  for (int k = 0; k < l; ++k) {
    c[static_cast<std::size_t>(k) + 1] = c[static_cast<std::size_t>(k)] *
                                         (static_cast<double>(l + k + 1) * (l - k)) /
                                         (2.0 * (k + 1));
  }
  return c;
}

Complex bessel_poly(int l, Complex z) {
  const auto c = bessel_poly_coefficients(l);
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex bessel_poly_derivative(int l, Complex z) {
  const auto c = bessel_poly_coefficients(l);
  Complex acc = 0.0;
  for (int k = l; k >= 1; --k) acc = acc * z + static_cast<double>(k) * c[static_cast<std::size_t>(k)];
  return acc;
}

ModulusArgument modulus_argument(int l, double x) {
  require_positive(x, "modulus_argument");
  if (l == 0) {
    require_order(l, "modulus_argument");
    return {1.0, 0.0};
  }
  const Complex y = bessel_poly(l, Complex(0.0, 1.0 / x));
  double arg = std::arg(y);
  if (arg <= -std::numbers::pi) arg = std::numbers::pi;
  return {std::abs(y), arg};
}

std::vector<double> sph_bessel_j_all(int lmax, double x) {
  require_order(lmax, "sph_bessel_j");
  require_positive(x, "sph_bessel_j");
  if (x < static_cast<double>(lmax)) return sph_bessel_j_downward(lmax, x);
  return sph_bessel_j_upward(lmax, x);
}

double sph_bessel_j(int l, double x) { return sph_bessel_j_all(l, x).back(); }

std::vector<double> sph_neumann_all(int lmax, double x) {
  require_order(lmax, "sph_neumann");
  require_positive(x, "sph_neumann");
  std::vector<double> out(static_cast<std::size_t>(lmax) + 1);
  out[0] = -std::cos(x) / x;
  if (lmax == 0) return out;
  out[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 1; l < lmax; ++l) {
    out[static_cast<std::size_t>(l) + 1] =
        (2.0 * l + 1.0) / x * out[static_cast<std::size_t>(l)] - out[static_cast<std::size_t>(l) - 1];
  }
  return out;
}

double sph_neumann(int l, double x) { return sph_neumann_all(l, x).back(); }

Complex i_pow(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex sph_hankel(int l, double x, HankelKind kind) {
  require_positive(x, "sph_hankel");
  const Complex y = bessel_poly(l, Complex(0.0, 1.0 / x));
  // e^{i(x - lπ/2)} = e^{ix} (-i)^l, evaluated without rounding lπ/2.
  const Complex h1 = std::polar(1.0, x) * std::conj(i_pow(l)) * y / Complex(0.0, x);
  switch (kind) {
    case HankelKind::first: return h1;
    case HankelKind::second: return std::conj(h1);
  }
  throw DomainError("sph_hankel: invalid kind");
}

RiccatiBessel riccati_bessel(int l, double x) {
  require_order(l, "riccati_bessel");
  require_positive(x, "riccati_bessel");
  const auto j = sph_bessel_j_all(l, x);
  const auto n = sph_neumann_all(l, x);
  const auto ul = static_cast<std::size_t>(l);
  const double j_lm1 = l == 0 ? std::cos(x) / x : j[ul - 1];
  const double n_lm1 = l == 0 ? std::sin(x) / x : n[ul - 1];
  RiccatiBessel rb;
  rb.j = x * j[ul];
  rb.n = x * n[ul];
  rb.dj = x * j_lm1 - l * j[ul];
  rb.dn = x * n_lm1 - l * n[ul];
  return rb;
}

LegendreTable legendre_table(int lmax, double u) {
  require_order(lmax, "legendre");
  if (!(std::abs(u) <= 1.0)) {
    throw DomainError("legendre: |u| must be <= 1, got " + std::to_string(u));
  }
  LegendreTable t;
  t.p.assign(static_cast<std::size_t>(lmax) + 1, 0.0);
  t.dp.assign(static_cast<std::size_t>(lmax) + 1, 0.0);
  t.p[0] = 1.0;
  if (lmax == 0) return t;
  t.p[1] = u;
  t.dp[1] = 1.0;
  for (int l = 1; l < lmax; ++l) {
    const auto i = static_cast<std::size_t>(l);
    t.p[i + 1] = ((2.0 * l + 1.0) * u * t.p[i] - l * t.p[i - 1]) / (l + 1.0);
    t.dp[i + 1] = t.dp[i - 1] + (2.0 * l + 1.0) * t.p[i];
  }
  return t;
}

double legendre(int l, double u) { return legendre_table(l, u).p.back(); }

}  // namespace finscat
