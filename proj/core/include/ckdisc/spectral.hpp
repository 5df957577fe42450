#pragma once

#include <complex>

#include "ckdisc/coloring.hpp"
#include "ckdisc/geometry.hpp"

namespace ckdisc {

// Fourier transform of the coloring, exact closed form: the discrete sum over
// cell colors times the unit-cell window factor W(xi) = integral over [0,1]^2
// of e^{-2 pi i x.xi}.
std::complex<double> fhat(const Coloring& c, Vec2 xi);

// Unit-cell window factor alone (product of two one-dimensional integrals).
std::complex<double> cell_window(Vec2 xi);

// Bessel function of the first kind, order zero. Power series for |x| <= 8,
// rational-approximation asymptotic form beyond; absolute error below 1e-8
// everywhere (in practice ~1e-13).
double bessel_j0(double x);

// Fourier transform of arc-length measure on the radius-t circle, evaluated
// radially: sigma_hat(t, r) = 2 pi t J0(2 pi t r). Requires t > 0.
double sigma_hat(double t, double xi_norm);
double sigma_hat(double t, Vec2 xi);

// Energy of the unit-circle transform over a multiplicative ring:
// int_x^{c1 x} |2 pi J0(2 pi u)|^2 du, adaptive to 1e-6 relative. Requires
// x > 0 and c1 > 1.
double ring_energy(double x, double c1);

// Mass of |fhat|^2 over the annulus a/N < |xi| < A, by polar midpoint
// quadrature refined to 1e-3 relative. Requires a > 0, A > 0, a/N < A.
double decay_mass(const Coloring& c, double a, double A, unsigned jobs = 0);

struct ParsevalResult {
    double spatial = 0.0;  // grid quadrature of |D_t(x)|^2 over a padded box
    double spectral = 0.0; // polar quadrature of |fhat|^2 |sigma_hat_t|^2
    double rel_gap() const;
};

// Numerical check of int |D_t|^2 dx = int |fhat|^2 |sigma_hat_t|^2 dxi. The
// spectral side truncates at a radius where the envelopes |fhat| <= N^2 and
// |J0(z)| <= sqrt(2/(pi z)) certify under 0.5% tail. Boards above size 16
// are refused (cost guard). spatial_step must be <= 0.125.
ParsevalResult parseval_check(const Coloring& c, double t, double spatial_step = 0.0625,
                              unsigned jobs = 0);

} // namespace ckdisc
