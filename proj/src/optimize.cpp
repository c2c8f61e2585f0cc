#include "harvestkit/errors.hpp"
#include "harvestkit/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace harvestkit {

std::string_view to_string(Constraint c) { return c == Constraint::spacelike ? "spacelike" : "none"; }

Constraint parse_constraint(std::string_view name) {
  if (name == "none") return Constraint::none;
  if (name == "spacelike") return Constraint::spacelike;
  throw ConfigError("unknown constraint '" + std::string(name) + "'");
}

void OptimizeSpec::validate() const {
  auto range = [](double lo, double hi, const char* what, bool positive) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo || lo < 0.0 || (positive && !(lo > 0.0)))
      throw DomainError(std::string("invalid optimizer bounds for ") + what);
  };
  range(a_min, a_max, "a", false);
  range(b_min, b_max, "b", false);
  range(s_min, s_max, "s", true);
  if (budget < 50) throw DomainError("optimizer budget must be at least 50");
  if (!(delta >= 0.0)) throw DomainError("delta must be >= 0");
  if (!(scale >= 0.0)) throw DomainError("coupling scale must be >= 0");
  quadrature.validate();
}

namespace {

constexpr int kStarts = 3;
constexpr int kPerStartCap = 80;
constexpr double kSimplexTol = 1e-7;

struct Box {
  std::array<double, 3> lo;
  std::array<double, 3> hi;
  std::vector<int> free; // indices of dimensions with lo < hi
};

class Search {
public:
  explicit Search(const OptimizeSpec& spec) : spec_(spec) {
    box_.lo = {spec.a_min, spec.b_min, spec.s_min};
    box_.hi = {spec.a_max, spec.b_max, spec.s_max};
    for (int d = 0; d < 3; ++d)
      if (box_.hi[d] > box_.lo[d]) box_.free.push_back(d);
  }

  int dims() const { return int(box_.free.size()); }
  bool exhausted() const { return evaluations_ >= spec_.budget; }
  int evaluations() const { return evaluations_; }

  // Objective L - |M| (minimized); +inf for infeasible or failed points.
  double operator()(const std::vector<double>& z) {
    std::array<double, 3> x = box_.lo;
    for (std::size_t i = 0; i < box_.free.size(); ++i) {
      const int d = box_.free[i];
      const double t = std::clamp(z[i], 0.0, 1.0);
      x[d] = box_.lo[d] + (box_.hi[d] - box_.lo[d]) * t;
    }
    // Every probe counts against the budget, including ones rejected before
    // evaluation, so the search always terminates.
    if (exhausted()) return inf();
    ++evaluations_;
    if (spec_.constraint == Constraint::spacelike) {
      x[1] = std::max(x[1], causal_boundary(x[2]));
      if (x[1] > box_.hi[1]) return inf();
    }
    const DimensionlessPoint p{x[0], x[1], x[2], spec_.delta, spec_.branch};
    HarvestPoint h = evaluate_point(p, spec_.quadrature, spec_.smearing, spec_.scale);
    if (h.status == PointStatus::convergence_error || h.status == PointStatus::domain_error)
      return inf();
    if (spec_.constraint == Constraint::spacelike && h.causal != CausalClass::spacelike)
      return inf();
    feasible_ = true;
    best_inseparability_ = std::min(best_inseparability_, h.inseparability);
    const double f = h.margin();
    if (!best_ || f < best_->margin()) best_ = std::move(h);
    return f;
  }

  const std::optional<HarvestPoint>& best() const { return best_; }
  bool feasible() const { return feasible_; }
  double best_inseparability() const { return best_inseparability_; }

private:
  static double inf() { return std::numeric_limits<double>::infinity(); }

  OptimizeSpec spec_;
  Box box_;
  int evaluations_ = 0;
  bool feasible_ = false;
  double best_inseparability_ = std::numeric_limits<double>::infinity();
  std::optional<HarvestPoint> best_;
};

// Nelder-Mead on the unit cube; trial points are clamped onto the box.
void nelder_mead(Search& f, std::vector<double> x0, int cap) {
  const int n = int(x0.size());
  const int stop = std::min(f.evaluations() + cap, std::numeric_limits<int>::max());
  auto clamp = [](std::vector<double> v) {
    for (double& c : v) c = std::clamp(c, 0.0, 1.0);
    return v;
  };

  std::vector<std::vector<double>> simplex{x0};
  for (int i = 0; i < n; ++i) {
    auto v = x0;
    v[i] += v[i] + 0.25 <= 1.0 ? 0.25 : -0.25;
    simplex.push_back(clamp(v));
  }
  std::vector<double> fv;
  for (const auto& v : simplex) fv.push_back(f(v));

  auto done = [&] { return f.exhausted() || f.evaluations() >= stop; };
  while (!done()) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return fv[l] < fv[r]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (int i : order) {
      s2.push_back(simplex[i]);
      f2.push_back(fv[i]);
    }
    simplex.swap(s2);
    fv.swap(f2);

    double size = 0.0;
    for (int i = 1; i <= n; ++i)
      for (int d = 0; d < n; ++d) size = std::max(size, std::abs(simplex[i][d] - simplex[0][d]));
    if (size < kSimplexTol) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;
    auto along = [&](double t) {
      std::vector<double> v(n);
      for (int d = 0; d < n; ++d) v[d] = centroid[d] + t * (simplex[n][d] - centroid[d]);
      return clamp(v);
    };

    const auto xr = along(-1.0);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const auto xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
      continue;
    }
    if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
      continue;
    }
    const bool outside = fr < fv[n];
    const auto xc = along(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[n])) {
      simplex[n] = xc;
      fv[n] = fc;
      continue;
    }
    for (int i = 1; i <= n && !done(); ++i) {
      for (int d = 0; d < n; ++d) simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
      fv[i] = f(simplex[i]);
    }
  }
}

} // namespace

OptimizeResult optimize_negativity(const OptimizeSpec& spec) {
  spec.validate();
  Search f(spec);
  const int n = f.dims();

  // Corners of the box first: the result can never be worse than them.
  for (int mask = 0; mask < (1 << n) && !f.exhausted(); ++mask) {
    std::vector<double> z(n);
    for (int d = 0; d < n; ++d) z[d] = (mask >> d) & 1 ? 1.0 : 0.0;
    f(z);
  }
  if (n > 0) {
    std::mt19937_64 rng(spec.seed);
    for (int start = 0; start < kStarts && !f.exhausted(); ++start) {
      std::vector<double> z(n);
      for (double& c : z) c = double(rng() >> 11) * 0x1p-53;
      nelder_mead(f, z, kPerStartCap);
    }
  }

  const auto& best = f.best();
  if (!best || (spec.constraint == Constraint::spacelike && best->negativity_coefficient <= 0.0))
    throw InfeasibleError(f.feasible() ? "no spacelike point with positive negativity"
                                       : "no evaluated point satisfies the constraint",
                          f.best_inseparability());
  return OptimizeResult{*best, f.evaluations()};
}

} // namespace harvestkit
