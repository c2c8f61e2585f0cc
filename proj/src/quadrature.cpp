#include "harvestkit/errors.hpp"
#include "harvestkit/specfun.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace harvestkit {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (max_subdivisions < 0) throw DomainError("max_subdivisions must be non-negative");
  if (!(cutoff_factor >= 5.0)) throw DomainError("cutoff factor must be >= 5");
  if (!(default_panel > 0.0)) throw DomainError("default panel width must be positive");
}

namespace {

struct Panel {
  double lo;
  double hi;
  complex value;
  double error;
};

// 21-point Kronrod extension of the 10-point Gauss rule. Boost stores the
// non-negative abscissae; odd indices are the Gauss nodes.
constexpr std::size_t kKronrodNodes = 11;

struct KronrodRule {
  std::vector<double> x;
  std::vector<double> wk;
  std::vector<double> wg;

  KronrodRule() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& ax = gauss_kronrod<double, 21>::abscissa();
    const auto& w = gauss_kronrod<double, 21>::weights();
    const auto& gw = gauss<double, 10>::weights();
    if (ax.size() != kKronrodNodes) throw std::logic_error("unexpected Kronrod rule size");
    x.assign(ax.begin(), ax.end());
    wk.assign(w.begin(), w.end());
    wg.assign(x.size(), 0.0);
    // gauss<double,10> abscissae are the Kronrod nodes with odd index.
    const auto& gx = gauss<double, 10>::abscissa();
    for (std::size_t i = 1, j = 0; i < x.size(); i += 2, ++j) {
      if (j >= gx.size() || std::abs(gx[j] - x[i]) > 1e-15)
        throw std::logic_error("Gauss and Kronrod node tables are misaligned");
      wg[i] = gw[j];
    }
  }
};

const KronrodRule& rule() {
  static const KronrodRule r;
  return r;
}

Panel evaluate_panel(const Integrand& f, double lo, double hi, int& evaluations) {
  const auto& r = rule();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<complex, 2 * kKronrodNodes> fv;
  complex resk{};
  complex resg{};
  double resabs = 0.0;
  // x[0] == 0 is the center node.
  const complex fc = f(center);
  ++evaluations;
  resk = r.wk[0] * fc;
  resg = r.wg[0] * fc;
  resabs = r.wk[0] * std::abs(fc);
  for (std::size_t i = 1; i < r.x.size(); ++i) {
    const double dx = half * r.x[i];
    const complex f1 = f(center - dx);
    const complex f2 = f(center + dx);
    evaluations += 2;
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    resk += r.wk[i] * (f1 + f2);
    resg += r.wg[i] * (f1 + f2);
    resabs += r.wk[i] * (std::abs(f1) + std::abs(f2));
  }
  const complex mean = 0.5 * resk;
  double resasc = r.wk[0] * std::abs(fc - mean);
  for (std::size_t i = 1; i < r.x.size(); ++i)
    resasc += r.wk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

  const double ah = std::abs(half);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return Panel{lo, hi, resk * half, err};
}

} // namespace

IntegralResult integrate(const Integrand& f, double lower, double upper,
                         const QuadratureSpec& spec, double oscillation_scale) {
  IntegralResult out;
  if (!(upper > lower)) return out;

  const double width_limit =
      std::min(spec.default_panel, std::numbers::pi / (2.0 * std::max(oscillation_scale, 1.0)));
  const auto n0 = static_cast<std::size_t>(std::ceil((upper - lower) / width_limit));
  const double width = (upper - lower) / static_cast<double>(n0);

  std::vector<Panel> panels;
  panels.reserve(n0 + static_cast<std::size_t>(spec.max_subdivisions) + 1);
  complex total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = lower + width * static_cast<double>(i);
    const double hi = i + 1 == n0 ? upper : lower + width * static_cast<double>(i + 1);
    panels.push_back(evaluate_panel(f, lo, hi, out.evaluations));
    total += panels.back().value;
    total_err += panels.back().error;
  }

  auto by_error = [&panels](std::size_t l, std::size_t r) {
    if (panels[l].error != panels[r].error) return panels[l].error < panels[r].error;
    return l > r;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> heap(by_error);
  for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (total_err > tolerance() && out.subdivisions_used < spec.max_subdivisions) {
    const std::size_t i = heap.top();
    heap.pop();
    const Panel parent = panels[i];
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(mid > parent.lo && mid < parent.hi)) break;
    Panel left = evaluate_panel(f, parent.lo, mid, out.evaluations);
    Panel right = evaluate_panel(f, mid, parent.hi, out.evaluations);
    total += left.value + right.value - parent.value;
    total_err += left.error + right.error - parent.error;
    panels[i] = left;
    panels.push_back(right);
    heap.push(i);
    heap.push(panels.size() - 1);
    ++out.subdivisions_used;
  }

  // Re-sum in positional order so the result does not depend on refinement history.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.lo < r.lo; });
  complex value{};
  double err = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    err += p.error;
  }
  out.value = value;
  out.error_estimate = err;
  out.converged = err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  return out;
}

IntegralResult integrate_radial(const Integrand& f, double u_max, const QuadratureSpec& spec,
                                double oscillation_scale) {
  return integrate(f, 0.0, u_max, spec, oscillation_scale);
}

} // namespace harvestkit
