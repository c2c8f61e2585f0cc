#pragma once

#include "harvestkit/medium.hpp"
#include "harvestkit/specfun.hpp"

#include <string_view>

namespace harvestkit {

/// Spatial profile of each detector. `pointlike` relies on the quadrature
/// cutoff u_max = cutoff_factor / s for UV regularization.
enum class Smearing { gaussian, pointlike };

std::string_view to_string(Smearing s);
Smearing parse_smearing(std::string_view name);

/// SI configuration of an identical detector pair. The coupling enters only
/// through the dimensionless scale (lambda T)^2.
struct DetectorPairConfig {
  double gap = 0.0;         ///< Omega [1/s]
  double pulse_width = 0.0; ///< T [s]
  double spot_size = 0.0;   ///< sigma [m]
  double separation = 0.0;  ///< dx [m]
  double coupling = 0.0;    ///< lambda [1/s]
  Smearing smearing = Smearing::gaussian;

  void validate() const;
  double coupling_scale() const { return coupling * coupling * pulse_width * pulse_width; }
};

/// Second-order reduced-state entries, stored as coefficients of lambda^2 T^2.
struct MatrixElements {
  double L_aa = 0.0;
  double L_bb = 0.0;
  complex L_ab{};
  complex M{};

  MatrixElements scaled(double x) const { return {x * L_aa, x * L_bb, x * L_ab, x * M}; }
};

struct ElementsResult {
  MatrixElements elements;
  double quad_error = 0.0; ///< largest error estimate among the integrals
  int subdivisions = 0;
  int evaluations = 0;
};

/// Fourier transform of the unit-normalized spot at reduced wavenumber u.
double smearing_ft(double s, double u, Smearing kind);

/// Fourier transform of the Gaussian switching at frequency a + w (units of T).
double g1(double a, double w);

/// Ordered double time integral with Gaussian switching (units of T^2):
/// 2 pi e^{-(a^2+w^2)} erfc(i w).
complex g2(double a, double w);

/// UV cutoff u_max = cutoff_factor / s; DomainError when the subsonic branch
/// would be evaluated beyond its crossover.
double radial_cutoff(const DimensionlessPoint& p, const QuadratureSpec& spec);

/// u / (4 pi omega T), the radial measure shared by every element.
double radial_measure(double u, const DimensionlessPoint& p);

double matrix_element_L(const DimensionlessPoint& p, const QuadratureSpec& spec,
                        Smearing smearing = Smearing::gaussian);
complex matrix_element_Lab(const DimensionlessPoint& p, const QuadratureSpec& spec,
                           Smearing smearing = Smearing::gaussian);
complex matrix_element_M(const DimensionlessPoint& p, const QuadratureSpec& spec,
                         Smearing smearing = Smearing::gaussian);

/// All four entries for an identical two-level pair. Throws ConvergenceError
/// or DomainError.
ElementsResult two_level_elements(const DimensionlessPoint& p, const QuadratureSpec& spec,
                                  Smearing smearing = Smearing::gaussian);

/// |<1_K| E |0>|^2 = 4 pi (Omega_K T)^3 for a detector-field mode.
double mode_transition_weight(double mode_gap);

/// Fixed-mode entries for continuous (laser) detector fields at reduced mode
/// gap Omega_K T. The time integrals are evaluated numerically from the mode
/// transition amplitudes; p.a is ignored. Throws DomainError for mode_gap <= 0
/// and for mode_gap > 7, where those integrals run out of precision.
ElementsResult continuous_mode_elements(const DimensionlessPoint& p, double mode_gap,
                                        const QuadratureSpec& spec,
                                        Smearing smearing = Smearing::gaussian);

} // namespace harvestkit
