#include "harvestkit/entanglement.hpp"
#include "harvestkit/errors.hpp"
#include "harvestkit/response.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace harvestkit;

namespace {

DimensionlessPoint at(double a, double b, double s = 0.125) { return {a, b, s, 0.0, Branch::linear}; }

double rel(complex x, complex ref) { return std::abs(x - ref) / std::abs(ref); }

// first b index with N = 0, or n
int boundary_index(double a, int n, bool continuous) {
  const QuadratureSpec spec;
  for (int i = 0; i < n; ++i) {
    const DimensionlessPoint p = at(a, 0.5 * i);
    const MatrixElements e = continuous ? continuous_mode_elements(p, a, spec).elements
                                        : two_level_elements(p, spec).elements;
    if (negativity_formula(e) == 0.0) return i;
  }
  return n;
}

} // namespace

TEST_CASE("transition weight") {
  CHECK(mode_transition_weight(1.0) == doctest::Approx(4 * std::numbers::pi));
  CHECK(mode_transition_weight(0.5) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("per-mode elements are a common multiple of the two-level ones") {
  const QuadratureSpec spec;
  for (double a : {0.2, 0.9, 2.0, 5.0})
    for (double b : {0.0, 1.0, 3.0}) {
      const auto two = two_level_elements(at(a, b), spec).elements;
      const auto cont = continuous_mode_elements(at(a, b), a, spec).elements;
      const double f = mode_transition_weight(a);
      CHECK(f > 0.0);
      CHECK(std::abs(cont.L_aa / two.L_aa - f) / f < 1e-8);
      CHECK(std::abs(cont.L_bb / two.L_bb - f) / f < 1e-8);
      CHECK(rel(cont.L_ab, f * two.L_ab) < 1e-8);
      CHECK(rel(cont.M, f * two.M) < 1e-8);
      CHECK(std::abs(negativity_formula(cont) - f * negativity_formula(two)) <=
            1e-8 * f * std::abs(two.M));
    }
}

TEST_CASE("the detector gap argument is ignored") {
  const QuadratureSpec spec;
  const auto x = continuous_mode_elements(at(0.3, 1.0), 1.5, spec).elements;
  const auto y = continuous_mode_elements(at(4.0, 1.0), 1.5, spec).elements;
  CHECK(x.L_aa == y.L_aa);
  CHECK(x.M == y.M);
}

TEST_CASE("zero-negativity boundary is unchanged") {
  for (double a : {0.2, 0.5, 1.0, 2.0}) {
    const int two = boundary_index(a, 16, false);
    CHECK(two < 16);
    CHECK(boundary_index(a, 16, true) == two);
  }
}

TEST_CASE("invalid mode gaps") {
  const QuadratureSpec spec;
  CHECK_THROWS_AS(continuous_mode_elements(at(1, 1), 0.0, spec), DomainError);
  CHECK_THROWS_AS(continuous_mode_elements(at(1, 1), -1.0, spec), DomainError);
  CHECK_THROWS_AS(continuous_mode_elements(at(1, 1), std::numeric_limits<double>::quiet_NaN(), spec),
                  DomainError);
  // beyond the working precision of the time integrals
  CHECK_THROWS_AS(continuous_mode_elements(at(1, 1), 20.0, spec), DomainError);
  CHECK_NOTHROW(continuous_mode_elements(at(1, 1), 7.0, spec));
}
