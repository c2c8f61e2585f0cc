#pragma once

#include "harvestkit/entanglement.hpp"
#include "harvestkit/medium.hpp"
#include "harvestkit/response.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace harvestkit {

inline constexpr std::string_view kCodeVersion = "0.1.0";
inline constexpr std::string_view kSchemaVersion = "harvestkit/1";

enum class CausalClass { signaling, spacelike };

std::string_view to_string(CausalClass c);

/// Spacelike iff b >= 4 + 2s (inclusive).
CausalClass causal_class(double b, double s);

/// Reduced separation where the detectors stop being able to signal.
double causal_boundary(double s);

enum class PointStatus { ok, convergence_error, domain_error, perturbativity_error };

std::string_view to_string(PointStatus s);

struct HarvestPoint {
  DimensionlessPoint point;
  Smearing smearing = Smearing::gaussian;
  double scale = 0.0; ///< x = (lambda T)^2

  MatrixElements elements; ///< coefficients of x
  double negativity_coefficient = 0.0; ///< max(|M| - L, 0)
  double negativity = 0.0;             ///< x * negativity_coefficient
  Concurrence concurrence;             ///< physical C, log10 of C/x
  double inseparability = 1.0;         ///< I_min at scale x
  CausalClass causal = CausalClass::signaling;

  double quad_error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
  double elapsed_seconds = 0.0;
  PointStatus status = PointStatus::ok;
  std::string message;

  /// L - |M|, the unclipped margin; negative exactly when N > 0.
  double margin() const { return elements.L_aa - std::abs(elements.M); }
};

/// Elements, negativity, inseparability and causal class at one point. Never
/// throws on numerical failure: the status records it.
HarvestPoint evaluate_point(const DimensionlessPoint& p, const QuadratureSpec& spec,
                            Smearing smearing, double scale);

enum class Spacing { linear, log };

std::string_view to_string(Spacing s);
Spacing parse_spacing(std::string_view name);

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int n = 1;
  Spacing spacing = Spacing::linear;

  void validate(std::string_view name) const;
  double value(int i) const;
};

struct GridSpec {
  Axis a{0.1, 10.0, 60, Spacing::log};
  Axis b{0.1, 8.0, 60, Spacing::linear};
  double s = 0.125;
  double delta = 0.0;
  Branch branch = Branch::linear;
  Smearing smearing = Smearing::gaussian;
  QuadratureSpec quadrature;
  double scale = 0.01;

  void validate() const;
};

struct SweepResult {
  GridSpec grid;
  std::vector<HarvestPoint> points; ///< row-major: a outer, b inner

  const HarvestPoint& at(int ia, int ib) const { return points[std::size_t(ia) * grid.b.n + ib]; }
};

/// Evaluate every grid point on `threads` workers. The result does not
/// depend on the thread count.
SweepResult sweep(const GridSpec& grid, int threads = 1);

struct DispersionSensitivity {
  double n_dispersive = 0.0;
  double n_linear = 0.0;
  double rel_diff = 0.0;
};

/// Negativity coefficient with the dispersive and the linear branch at the
/// same cutoff. rel_diff is 0 when both vanish or when delta = 0.
DispersionSensitivity dispersion_sensitivity(const DimensionlessPoint& p,
                                             const QuadratureSpec& spec,
                                             Smearing smearing = Smearing::gaussian);

enum class Constraint { none, spacelike };

std::string_view to_string(Constraint c);
Constraint parse_constraint(std::string_view name);

struct OptimizeSpec {
  double a_min = 0.1, a_max = 10.0;
  double b_min = 0.1, b_max = 8.0;
  double s_min = 0.125, s_max = 0.125;
  double delta = 0.0;
  Branch branch = Branch::linear;
  Smearing smearing = Smearing::gaussian;
  Constraint constraint = Constraint::none;
  int budget = 200;
  std::uint64_t seed = 0;
  QuadratureSpec quadrature;
  double scale = 0.01;

  void validate() const;
};

struct OptimizeResult {
  HarvestPoint best;
  int evaluations = 0;
};

/// Raised when no evaluated point satisfying the constraint has N > 0.
class InfeasibleError : public std::runtime_error {
public:
  InfeasibleError(const std::string& what, double best_inseparability)
      : std::runtime_error(what), best_inseparability_(best_inseparability) {}
  /// Smallest I_min among feasible points (infinity if none was feasible).
  double best_inseparability() const { return best_inseparability_; }

private:
  double best_inseparability_;
};

/// Bounded Nelder-Mead from three seeded starts after evaluating the corners
/// of the box. Bounds with min == max are held fixed. The evaluation sequence
/// is fixed by the seed, so a larger budget never gives a worse result.
OptimizeResult optimize_negativity(const OptimizeSpec& spec);

} // namespace harvestkit
