#pragma once

// Special functions in double precision: spherical Bessel, Neumann and
// Hankel functions, Bessel polynomials and Legendre polynomials.
//
// Everything here is a pure function of its arguments.

#include <complex>
#include <vector>

namespace finscat {

using Complex = std::complex<double>;

/// Largest Bessel-polynomial order supported.
inline constexpr int kMaxBesselPolyOrder = 60;

/// Polar decomposition of y_l(i/x): modulus ≥ 0 and argument in (−π, π].
struct ModulusArgument {
  double modulus = 1.0;
  double argument = 0.0;
};

enum class HankelKind { first = 1, second = 2 };

/// Maps 1 or 2 to a HankelKind, throwing DomainError otherwise.
HankelKind hankel_kind_from_int(int kind);

/// Coefficients a_k = (l+k)! / (k! (l-k)! 2^k), k = 0..l, built by the
/// multiplicative recurrence so that no factorial is ever formed.
std::vector<double> bessel_poly_coefficients(int l);

/// Bessel polynomial y_l(z) = Σ_k (l+k)!/(k!(l−k)!) (z/2)^k.
/// Throws OrderTooLargeError for l > 60.
Complex bessel_poly(int l, Complex z);

/// dy_l/dz, the term-wise derivative of the polynomial.
Complex bessel_poly_derivative(int l, Complex z);

/// (|y_l(i/x)|, arg y_l(i/x)). Exactly (1, 0) for l = 0.
ModulusArgument modulus_argument(int l, double x);

/// Spherical Bessel function j_l(x), x > 0.
/// Downward (Miller) recurrence normalised on j_0 below the turning point,
/// upward recurrence above it.
double sph_bessel_j(int l, double x);

/// j_0 … j_lmax at x in one pass.
std::vector<double> sph_bessel_j_all(int lmax, double x);

/// Spherical Neumann function n_l(x) (n_0 = −cos x / x) by upward recurrence.
double sph_neumann(int l, double x);

std::vector<double> sph_neumann_all(int lmax, double x);

/// Spherical Hankel function from the Bessel-polynomial representation:
/// h^(1)_l(x) = e^{i(x − lπ/2)} y_l(i/x) / (ix), h^(2) its conjugate.
Complex sph_hankel(int l, double x, HankelKind kind);

/// i^l computed exactly.
Complex i_pow(int l);

/// Riccati–Bessel functions ĵ_l(x) = x j_l(x), n̂_l(x) = x n_l(x) and their
/// x-derivatives.
struct RiccatiBessel {
  double j = 0.0;
  double dj = 0.0;
  double n = 0.0;
  double dn = 0.0;
};

RiccatiBessel riccati_bessel(int l, double x);

/// Legendre polynomial P_l(u) by the Bonnet recurrence, |u| ≤ 1.
double legendre(int l, double u);

/// P_l(u) and dP_l/du for l = 0..lmax. The derivative uses
/// P'_{l+1} = P'_{l-1} + (2l+1) P_l, which stays finite at u = ±1.
struct LegendreTable {
  std::vector<double> p;
  std::vector<double> dp;
};

LegendreTable legendre_table(int lmax, double u);

}  // namespace finscat
