#include "harvestkit/oracles.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace harvestkit::oracle {

namespace {

using quad = boost::multiprecision::cpp_bin_float_quad;

template <class Real>
struct Cplx {
  Real re{0};
  Real im{0};
};

template <class Real>
Cplx<Real> mul(const Cplx<Real>& x, const Cplx<Real>& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

template <class Real>
Cplx<Real> gaussian_phase(const Real& t, const Real& rate) {
  using std::cos;
  using std::exp;
  using std::sin;
  const Real g = exp(-t * t / 2);
  const Real ph = rate * t;
  return {g * cos(ph), g * sin(ph)};
}

template <class Real>
complex double_time_impl(double a, double w, int n, double window) {
  if (n < 4) n = 4;
  const Real lo = -Real(window);
  const Real h = Real(2 * window) / Real(n - 1);
  const Real outer_rate = Real(a) - Real(w);
  const Real inner_rate = Real(a) + Real(w);

  std::vector<Cplx<Real>> g(n);
  std::vector<Cplx<Real>> f(n);
  for (int j = 0; j < n; ++j) {
    const Real t = lo + h * j;
    g[j] = gaussian_phase(t, inner_rate);
    f[j] = gaussian_phase(t, outer_rate);
  }

  // Cumulative integral of g from -window to t_j: Simpson on pairs of
  // intervals, the 3/8 rule for the odd remainder.
  std::vector<Cplx<Real>> cum(n);
  const Real h3 = h / 3;
  const Real h38 = h * 3 / 8;
  cum[1] = {h / 2 * (g[0].re + g[1].re), h / 2 * (g[0].im + g[1].im)};
  for (int j = 2; j < n; j += 2) {
    cum[j].re = cum[j - 2].re + h3 * (g[j - 2].re + 4 * g[j - 1].re + g[j].re);
    cum[j].im = cum[j - 2].im + h3 * (g[j - 2].im + 4 * g[j - 1].im + g[j].im);
  }
  for (int j = 3; j < n; j += 2) {
    cum[j].re = cum[j - 3].re + h38 * (g[j - 3].re + 3 * g[j - 2].re + 3 * g[j - 1].re + g[j].re);
    cum[j].im = cum[j - 3].im + h38 * (g[j - 3].im + 3 * g[j - 2].im + 3 * g[j - 1].im + g[j].im);
  }

  Cplx<Real> sum;
  for (int j = 0; j < n; ++j) {
    const Real wt = (j == 0 || j == n - 1) ? h / 2 : h;
    const auto term = mul(f[j], cum[j]);
    sum.re += wt * term.re;
    sum.im += wt * term.im;
  }
  return {static_cast<double>(2 * sum.re), static_cast<double>(2 * sum.im)};
}

} // namespace

complex double_time_integral(double a, double w, int n) {
  return double_time_impl<quad>(a, w, n, kTimeWindow);
}

complex double_time_integral_fast(double a, double w, int n, double window) {
  return double_time_impl<double>(a, w, n, window);
}

complex switching_fourier(double a, double w, int n) {
  if (n < 2) n = 2;
  const quad lo = -quad(kTimeWindow);
  const quad h = quad(2 * kTimeWindow) / quad(n - 1);
  const quad rate = quad(a) + quad(w);
  quad re = 0;
  quad im = 0;
  for (int j = 0; j < n; ++j) {
    const quad wt = (j == 0 || j == n - 1) ? h / 2 : h;
    const auto v = gaussian_phase(lo + h * j, rate);
    re += wt * v.re;
    im += wt * v.im;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

complex radial_trapezoid(const Integrand& f, double u_max, int n) {
  if (n < 2 || !(u_max > 0.0)) return {};
  const double h = u_max / (n - 1);
  complex sum{};
  for (int j = 0; j < n; ++j) {
    const complex v = f(h * j);
    sum += (j == 0 || j == n - 1) ? 0.5 * v : v;
  }
  return sum * h;
}

double gaussian_spot_transform(double s, double u, int n) {
  const double half = 12.0 * s;
  const double h = 2.0 * half / (n - 1);
  const double norm = 1.0 / (2.0 * std::numbers::pi * s * s);
  // The transform is real and the integrand separates in x and y; the grid
  // sum is still taken over the full 2-D lattice.
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -half + h * i;
    const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = -half + h * j;
      const double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      row += wy * std::exp(-(x * x + y * y) / (2.0 * s * s));
    }
    sum += wx * row * std::cos(u * x);
  }
  return sum * h * h * norm;
}

} // namespace harvestkit::oracle
