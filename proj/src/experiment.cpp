#include "harvestkit/experiment.hpp"

#include "harvestkit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace harvestkit {

std::string_view to_string(CausalClass c) {
  return c == CausalClass::spacelike ? "spacelike" : "signaling";
}

double causal_boundary(double s) { return 4.0 + 2.0 * s; }

CausalClass causal_class(double b, double s) {
  return b >= causal_boundary(s) ? CausalClass::spacelike : CausalClass::signaling;
}

std::string_view to_string(PointStatus s) {
  switch (s) {
  case PointStatus::ok: return "ok";
  case PointStatus::convergence_error: return "convergence_error";
  case PointStatus::domain_error: return "domain_error";
  case PointStatus::perturbativity_error: return "perturbativity_error";
  }
  return "ok";
}

HarvestPoint evaluate_point(const DimensionlessPoint& p, const QuadratureSpec& spec,
                            Smearing smearing, double scale) {
  const auto start = std::chrono::steady_clock::now();
  HarvestPoint h;
  h.point = p;
  h.smearing = smearing;
  h.scale = scale;
  h.causal = causal_class(p.b, p.s);
  try {
    const ElementsResult r = two_level_elements(p, spec, smearing);
    h.elements = r.elements;
    h.quad_error = r.quad_error;
    h.subdivisions = r.subdivisions;
    h.evaluations = r.evaluations;
    h.negativity_coefficient = negativity_formula(h.elements);
    h.negativity = scale * h.negativity_coefficient;
    h.concurrence = concurrence_and_log(h.negativity, scale);
    h.inseparability = inseparability_min(h.elements.scaled(scale));
    if (scale * (h.elements.L_aa + h.elements.L_bb) >= kPerturbativeLimit) {
      h.status = PointStatus::perturbativity_error;
      h.message = "L_aa + L_bb >= 0.1 at this coupling";
    }
  } catch (const ConvergenceError& e) {
    h.status = PointStatus::convergence_error;
    h.message = e.what();
    h.quad_error = e.error_estimate();
  } catch (const DomainError& e) {
    h.status = PointStatus::domain_error;
    h.message = e.what();
  }
  h.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return h;
}

std::string_view to_string(Spacing s) { return s == Spacing::log ? "log" : "linear"; }

Spacing parse_spacing(std::string_view name) {
  if (name == "linear") return Spacing::linear;
  if (name == "log") return Spacing::log;
  throw ConfigError("unknown spacing '" + std::string(name) + "'");
}

void Axis::validate(std::string_view name) const {
  const std::string n_ = std::string(name);
  if (n < 1) throw DomainError(n_ + " axis needs at least one point");
  if (!std::isfinite(min) || !std::isfinite(max) || min < 0.0)
    throw DomainError(n_ + " axis range must be finite and non-negative");
  if (n == 1 ? max != min : !(max > min))
    throw DomainError(n_ + " axis range must be ordered (min == max for one point)");
  if (spacing == Spacing::log && !(min > 0.0))
    throw DomainError(n_ + " axis: log spacing needs a positive minimum");
}

double Axis::value(int i) const {
  if (n == 1 || i == 0) return min;
  if (i == n - 1) return max;
  const double t = double(i) / double(n - 1);
  if (spacing == Spacing::log) return min * std::pow(max / min, t);
  return min + (max - min) * t;
}

void GridSpec::validate() const {
  a.validate("a");
  b.validate("b");
  DimensionlessPoint p{a.min, b.min, s, delta, branch};
  p.validate();
  quadrature.validate();
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw DomainError("coupling scale must be >= 0");
}

SweepResult sweep(const GridSpec& grid, int threads) {
  grid.validate();
  SweepResult out;
  out.grid = grid;
  const std::size_t total = std::size_t(grid.a.n) * std::size_t(grid.b.n);
  out.points.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const int ia = int(k / grid.b.n);
      const int ib = int(k % grid.b.n);
      const DimensionlessPoint p{grid.a.value(ia), grid.b.value(ib), grid.s, grid.delta,
                                 grid.branch};
      out.points[k] = evaluate_point(p, grid.quadrature, grid.smearing, grid.scale);
    }
  };
  const int n = std::max(1, std::min<int>(threads, int(total)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  return out;
}

DispersionSensitivity dispersion_sensitivity(const DimensionlessPoint& p,
                                             const QuadratureSpec& spec, Smearing smearing) {
  DispersionSensitivity d;
  DimensionlessPoint lin = p;
  lin.delta = 0.0;
  lin.branch = Branch::linear;
  d.n_linear = negativity_formula(two_level_elements(lin, spec, smearing).elements);
  if (p.branch == Branch::linear || p.delta == 0.0) {
    d.n_dispersive = d.n_linear;
    return d;
  }
  d.n_dispersive = negativity_formula(two_level_elements(p, spec, smearing).elements);
  if (d.n_linear == 0.0 && d.n_dispersive == 0.0) return d;
  d.rel_diff = d.n_linear == 0.0 ? std::numeric_limits<double>::infinity()
                                 : std::abs(d.n_dispersive - d.n_linear) / d.n_linear;
  return d;
}

} // namespace harvestkit
