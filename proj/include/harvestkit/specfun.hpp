#pragma once

#include <complex>
#include <functional>

namespace harvestkit {

using complex = std::complex<double>;

/// Bessel function of the first kind, order zero. Even in x.
double bessel_j0(double x);

/// e^{-x^2} erfi(x) for x >= 0 (odd extension for x < 0). Never overflows;
/// behaves as 1/(x sqrt(pi)) for large x.
double exp_scaled_erfi(double x);

/// e^{-x^2} erfc(i x) = e^{-x^2} - i e^{-x^2} erfi(x).
complex erfc_imag_scaled(double x);

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  /// UV cutoff factor: u_max = cutoff_factor / s.
  double cutoff_factor = 10.0;
  /// Widest initial panel before oscillation-based narrowing.
  double default_panel = 1.0;

  void validate() const;
};

struct IntegralResult {
  complex value{};
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  int evaluations = 0;
  bool converged = true;
};

using Integrand = std::function<complex(double)>;

/// Globally adaptive Gauss-Kronrod (21-point) integration over [lower, upper].
/// Initial panels are at most min(default_panel, pi/(2 max(oscillation_scale, 1)))
/// wide; `max_subdivisions` counts bisections beyond the initial panels.
/// Does not throw on non-convergence: check `converged`.
IntegralResult integrate(const Integrand& f, double lower, double upper,
                         const QuadratureSpec& spec, double oscillation_scale);

/// integrate over [0, u_max].
IntegralResult integrate_radial(const Integrand& f, double u_max, const QuadratureSpec& spec,
                                double oscillation_scale);

} // namespace harvestkit
