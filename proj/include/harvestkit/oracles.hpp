#pragma once

// Brute-force reference evaluations. These share no code path with the
// closed forms and adaptive quadrature they are used to check.

#include "harvestkit/specfun.hpp"

namespace harvestkit::oracle {

/// Half-width (units of T) of the time window used by the time-domain oracles.
inline constexpr double kTimeWindow = 16.0;

/// 2 int dt int_{t'<t} dt' e^{ia(t+t')} e^{-iw(t-t')} e^{-t^2/2} e^{-t'^2/2}
/// on an n x n grid over [-16, 16]^2 (units of T^2), evaluated in quad
/// precision. Inner integral: cumulative Simpson; outer: trapezoid.
complex double_time_integral(double a, double w, int n);

/// Same rule in double precision over [-window, window]; for use inside
/// radial compositions where O(1) values make quad precision unnecessary.
complex double_time_integral_fast(double a, double w, int n, double window);

/// int dt e^{-t^2/2} e^{i(a+w)t} by the trapezoid rule with n points on
/// [-16, 16], in quad precision (units of T).
complex switching_fourier(double a, double w, int n);

/// Fixed-grid trapezoid rule with n points on [0, u_max].
complex radial_trapezoid(const Integrand& f, double u_max, int n);

/// 2-D Fourier transform at wavenumber u of the normalized Gaussian spot
/// e^{-|x|^2/(2 s^2)}/(2 pi s^2), on an n x n grid spanning +-12 s.
double gaussian_spot_transform(double s, double u, int n);

} // namespace harvestkit::oracle
