#include "harvestkit/errors.hpp"
#include "harvestkit/response.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

// Continuous detector fields. Each detector mode K is excited through the
// amplitude <1_K| E(t) |0> chi(t), with |<1_K|E|0>|^2 = 4 pi a_K^3 and the
// mode oscillating at e^{i a_K t}. The time integrals are done numerically
// here rather than by rescaling the closed forms, so the reduction to the
// two-level elements is something the tests can check.

namespace harvestkit {

double mode_transition_weight(double mode_gap) {
  return 4.0 * std::numbers::pi * mode_gap * mode_gap * mode_gap;
}

namespace {

constexpr double kTimeHalfWidth = 12.0;
constexpr double kSigmaHalfWidth = 24.0;
constexpr double kTauUpper = 13.0;

// Past this gap the cancellation in the sum-time and local integrals
// exceeds the working precision.
constexpr double kMaxModeGap = 7.0;

// Trapezoid rule for int e^{-t^2/(2 width^2)} cos(f t) dt on [-half, half]
// (the sine part vanishes by symmetry). The step keeps the alias frequency
// 2 pi / h at least 40 above f. The sum cancels from O(1) terms down to
// e^{-f^2 width^2/2}, hence the extended working precision. Gaussian and
// cosine factors are advanced by recurrence.
template <class Real>
Real gaussian_cosine_trapezoid(double frequency, double width, double half) {
  using std::cos;
  using std::exp;
  const double h_max = 2.0 * std::numbers::pi / (std::abs(frequency) + 40.0);
  const int n = static_cast<int>(std::ceil(half / std::min(h_max, 0.25)));
  const Real h = Real(half) / n;
  const Real q = exp(-h * h / Real(width * width)); // ratio of successive ratios
  Real g = 1;                                        // e^{-t_j^2 / 2 width^2}
  Real r = exp(-h * h / Real(2 * width * width));    // g_{j+1} / g_j
  const Real c1 = cos(Real(frequency) * h);
  Real c_prev = c1; // cos(f t_{-1})
  Real c = 1;       // cos(f t_0)
  Real sum = Real(0.5);
  for (int j = 1; j <= n; ++j) {
    const Real c_next = 2 * c1 * c - c_prev;
    c_prev = c;
    c = c_next;
    g *= r;
    r *= q;
    sum += (j == n ? Real(0.5) : Real(1)) * g * c;
  }
  return 2 * h * sum;
}

// int_0^upper e^{-t^2/4} e^{-i w t} dt by composite 10-point Gauss-Legendre
// on panels no wider than half an oscillation period.
complex half_line_transform(double w, double upper) {
  using boost::math::quadrature::gauss;
  const auto& x = gauss<double, 10>::abscissa();
  const auto& wt = gauss<double, 10>::weights();
  const double width = std::min(1.0, std::numbers::pi / std::max(w, 1e-300));
  const int panels = static_cast<int>(std::ceil(upper / width));
  const double half = 0.5 * upper / panels;
  double re = 0.0, im = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (2 * p + 1) * half;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double t : {mid - half * x[i], mid + half * x[i]}) {
        if (x[i] == 0.0 && t != mid - half * x[i]) continue;
        const double g = wt[i] * std::exp(-0.25 * t * t);
        re += g * std::cos(w * t);
        im -= g * std::sin(w * t);
      }
    }
  }
  return {re * half, im * half};
}

struct ModeKernels {
  double a;
  double weight; // |<1_K|E|0>|^2
  double sigma;  // int e^{i a s - s^2/4} ds over the sum time s = t + t'

  explicit ModeKernels(double mode_gap)
      : a(mode_gap), weight(mode_transition_weight(mode_gap)) {
    using quad = boost::multiprecision::cpp_bin_float_quad;
    sigma = static_cast<double>(
        gaussian_cosine_trapezoid<quad>(a, std::numbers::sqrt2, kSigmaHalfWidth));
  }

  // |int dt A(t) chi(t) e^{i w t}|^2
  double local(double w) const {
    const long double i1 = gaussian_cosine_trapezoid<long double>(a + w, 1.0, kTimeHalfWidth);
    return weight * static_cast<double>(i1 * i1);
  }

  // 2 int_{t' < t} A(t) A(t') chi(t) chi(t') e^{-i w (t - t')}, factorized in
  // sum and difference times.
  complex exchange(double w) const { return weight * sigma * half_line_transform(w, kTauUpper); }
};

IntegralResult checked(const Integrand& f, double u_max, const QuadratureSpec& spec,
                       double oscillation, const char* what) {
  IntegralResult r = integrate_radial(f, u_max, spec, oscillation);
  if (!r.converged)
    throw ConvergenceError(std::string(what) + ": quadrature did not converge", r.value,
                           r.error_estimate);
  return r;
}

} // namespace

ElementsResult continuous_mode_elements(const DimensionlessPoint& p, double mode_gap,
                                        const QuadratureSpec& spec, Smearing smearing) {
  if (!(mode_gap > 0.0) || !std::isfinite(mode_gap))
    throw DomainError("mode gap must be positive");
  if (mode_gap > kMaxModeGap)
    throw DomainError("mode gap above 7: the numerical time integrals lose precision");
  const double u_max = radial_cutoff(p, spec);
  const ModeKernels k(mode_gap);

  auto local = [&](double u, bool bessel) -> complex {
    const double w = reduced_omega(u, p.delta, p.branch);
    const double ft = smearing_ft(p.s, u, smearing);
    const double j = bessel ? bessel_j0(p.b * u) : 1.0;
    return radial_measure(u, p) * ft * ft * j * k.local(w);
  };
  const IntegralResult l = checked([&](double u) { return local(u, false); }, u_max, spec, 0.0, "L");
  const IntegralResult lab =
      checked([&](double u) { return local(u, true); }, u_max, spec, p.b, "L_ab");
  const IntegralResult m = checked(
      [&](double u) -> complex {
        const double w = reduced_omega(u, p.delta, p.branch);
        const double ft = smearing_ft(p.s, u, smearing);
        return -radial_measure(u, p) * ft * ft * bessel_j0(p.b * u) * k.exchange(w);
      },
      u_max, spec, p.b, "M");

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
