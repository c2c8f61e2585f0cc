#include "harvestkit/response.hpp"

#include "harvestkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace harvestkit {

std::string_view to_string(Smearing s) {
  return s == Smearing::gaussian ? "gaussian" : "pointlike";
}

Smearing parse_smearing(std::string_view name) {
  if (name == "gaussian") return Smearing::gaussian;
  if (name == "pointlike") return Smearing::pointlike;
  throw ConfigError("unknown smearing '" + std::string(name) + "'");
}

void DetectorPairConfig::validate() const {
  if (!(pulse_width > 0.0)) throw DomainError("pulse width must be positive");
  if (!(spot_size > 0.0)) throw DomainError("spot size must be positive");
  if (!(separation >= 0.0)) throw DomainError("separation must be non-negative");
  if (!(gap >= 0.0)) throw DomainError("gap must be non-negative");
  if (!(coupling >= 0.0)) throw DomainError("coupling must be non-negative");
}

double smearing_ft(double s, double u, Smearing kind) {
  if (kind == Smearing::pointlike) return 1.0;
  return std::exp(-0.5 * s * s * u * u);
}

double g1(double a, double w) {
  const double x = a + w;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * x * x);
}

complex g2(double a, double w) {
  return 2.0 * std::numbers::pi * std::exp(-a * a) * erfc_imag_scaled(w);
}

double radial_cutoff(const DimensionlessPoint& p, const QuadratureSpec& spec) {
  p.validate();
  spec.validate();
  const double u_max = spec.cutoff_factor / p.s;
  if (p.branch == Branch::subsonic && u_max > reduced_crossover(p.delta, p.branch))
    throw DomainError("UV cutoff lies beyond the subsonic crossover scale");
  return u_max;
}

double radial_measure(double u, const DimensionlessPoint& p) {
  return reduced_group_ratio(u, p.delta, p.branch) / (4.0 * std::numbers::pi);
}

namespace {

IntegralResult checked(const Integrand& f, double u_max, const QuadratureSpec& spec,
                       double oscillation, const char* what) {
  IntegralResult r = integrate_radial(f, u_max, spec, oscillation);
  if (!r.converged)
    throw ConvergenceError(std::string(what) + ": quadrature did not converge", r.value,
                           r.error_estimate);
  return r;
}

IntegralResult integrate_L(const DimensionlessPoint& p, const QuadratureSpec& spec,
                           Smearing smearing, bool with_bessel) {
  const double u_max = radial_cutoff(p, spec);
  auto f = [&](double u) -> complex {
    const double w = reduced_omega(u, p.delta, p.branch);
    const double ft = smearing_ft(p.s, u, smearing);
    const double g = g1(p.a, w);
    const double j = with_bessel ? bessel_j0(p.b * u) : 1.0;
    return radial_measure(u, p) * ft * ft * j * g * g;
  };
  return checked(f, u_max, spec, with_bessel ? p.b : 0.0, with_bessel ? "L_ab" : "L");
}

IntegralResult integrate_M(const DimensionlessPoint& p, const QuadratureSpec& spec,
                           Smearing smearing) {
  const double u_max = radial_cutoff(p, spec);
  auto f = [&](double u) -> complex {
    const double w = reduced_omega(u, p.delta, p.branch);
    const double ft = smearing_ft(p.s, u, smearing);
    return -radial_measure(u, p) * ft * ft * bessel_j0(p.b * u) * g2(p.a, w);
  };
  return checked(f, u_max, spec, p.b, "M");
}

} // namespace

double matrix_element_L(const DimensionlessPoint& p, const QuadratureSpec& spec,
                        Smearing smearing) {
  return integrate_L(p, spec, smearing, false).value.real();
}

complex matrix_element_Lab(const DimensionlessPoint& p, const QuadratureSpec& spec,
                           Smearing smearing) {
  return {integrate_L(p, spec, smearing, true).value.real(), 0.0};
}

complex matrix_element_M(const DimensionlessPoint& p, const QuadratureSpec& spec,
                         Smearing smearing) {
  return integrate_M(p, spec, smearing).value;
}

ElementsResult two_level_elements(const DimensionlessPoint& p, const QuadratureSpec& spec,
                                  Smearing smearing) {
  const IntegralResult l = integrate_L(p, spec, smearing, false);
  const IntegralResult lab = integrate_L(p, spec, smearing, true);
  const IntegralResult m = integrate_M(p, spec, smearing);

  ElementsResult out;
  out.elements.L_aa = l.value.real();
  out.elements.L_bb = l.value.real();
  out.elements.L_ab = {lab.value.real(), 0.0};
  out.elements.M = m.value;
  out.quad_error = std::max({l.error_estimate, lab.error_estimate, m.error_estimate});
  out.subdivisions = l.subdivisions_used + lab.subdivisions_used + m.subdivisions_used;
  out.evaluations = l.evaluations + lab.evaluations + m.evaluations;
  return out;
}

} // namespace harvestkit
