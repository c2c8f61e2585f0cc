#include "harvestkit/specfun.hpp"

#include <cmath>
#include <numbers>

namespace harvestkit {

namespace {

double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * double(k));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

// Periodic trapezoid rule on J0(x) = (1/pi) int_0^pi cos(x cos t) dt.
// Aliasing error is ~J_{2n}(x), negligible once 2n exceeds ~3x.
double j0_periodic(double x) {
  const int n = static_cast<int>(1.5 * x) + 24;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = std::numbers::pi * (j + 0.5) / n;
    sum += std::cos(x * std::cos(t));
  }
  return sum / n;
}

// Hankel expansion, DLMF 10.17.3.
double j0_asymptotic(double x) {
  double p = 0.0;
  double q = 0.0;
  double r = 1.0;
  double last = 1.0;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double m = 2.0 * k - 1.0;
      r *= -(m * m) / (8.0 * k * x);
    }
    if (std::abs(r) > last && k > 1) break;
    last = std::abs(r);
    switch (k % 4) {
    case 0: p += r; break;
    case 1: q += r; break;
    case 2: p -= r; break;
    case 3: q -= r; break;
    }
    if (std::abs(r) < 1e-18) break;
  }
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
  const double sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

} // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 8.0) return j0_series(x);
  if (x < 25.0) return j0_periodic(x);
  return j0_asymptotic(x);
}

double exp_scaled_erfi(double x) {
  if (x < 0.0) return -exp_scaled_erfi(-x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 0.0;
  constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  const double x2 = x * x;
  if (x <= 6.5) {
    // erfi(x) = 2/sqrt(pi) sum x^{2n+1} / (n! (2n+1)); all terms positive.
    double t = x;
    double sum = x;
    for (int n = 1; n < 400; ++n) {
      t *= x2 / n;
      const double contrib = t / (2.0 * n + 1.0);
      sum += contrib;
      if (n > x2 && contrib < 1e-17 * sum) break;
    }
    return 2.0 * inv_sqrt_pi * sum * std::exp(-x2);
  }
  // e^{-x^2} erfi(x) ~ 1/(x sqrt(pi)) sum (2n-1)!! / (2x^2)^n
  double t = 1.0;
  double sum = 1.0;
  const double r = 1.0 / (2.0 * x2);
  for (int n = 1; n < 200; ++n) {
    const double next = t * (2.0 * n - 1.0) * r;
    if (next > t) break;
    t = next;
    sum += t;
    if (t < 1e-17 * sum) break;
  }
  return inv_sqrt_pi * sum / x;
}

complex erfc_imag_scaled(double x) {
  return {std::exp(-x * x), -exp_scaled_erfi(x)};
}

} // namespace harvestkit
