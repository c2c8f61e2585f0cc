#include "harvestkit/errors.hpp"
#include "harvestkit/experiment.hpp"
#include "harvestkit/fixtures.hpp"
#include "harvestkit/oracles.hpp"
#include "harvestkit/response.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace harvestkit;
using std::numbers::pi;

namespace {

DimensionlessPoint at(double a, double b, double s = 0.125, double delta = 0.0,
                      Branch br = Branch::linear) {
  return {a, b, s, delta, br};
}

double rel(complex x, complex ref) { return std::abs(x - ref) / std::abs(ref); }

const FixtureSet& fixtures() {
  static const FixtureSet f = load_fixtures();
  return f;
}

} // namespace

TEST_CASE("smearing transform") {
  CHECK(smearing_ft(0.3, 0.0, Smearing::gaussian) == 1.0);
  CHECK(smearing_ft(1.0, 1.0, Smearing::gaussian) == doctest::Approx(std::exp(-0.5)));
  CHECK(smearing_ft(1.0, 7.0, Smearing::pointlike) == 1.0);
  for (double u : {0.0, 1.0, 4.0, 12.0}) {
    const double ref = oracle::gaussian_spot_transform(0.125, u, 401);
    CHECK(std::abs(smearing_ft(0.125, u, Smearing::gaussian) - ref) < 1e-10);
  }
  CHECK(parse_smearing("pointlike") == Smearing::pointlike);
  CHECK_THROWS_AS(parse_smearing("disk"), ConfigError);
}

TEST_CASE("g1 and g2 closed forms") {
  CHECK(g1(0, 0) == doctest::Approx(std::sqrt(2 * pi)));
  CHECK(g1(1, 1) == doctest::Approx(std::sqrt(2 * pi) * std::exp(-2.0)));
  CHECK(std::abs(g2(0, 0) - complex(2 * pi)) < 1e-14);

  const complex frozen = fixtures().get(fixture::g2_a1_w1).value;
  CHECK(rel(g2(1, 1), frozen) < 1e-6);

  for (auto [a, w] : {std::pair{0.0, 3.0}, {1.0, 1.0}, {2.5, 0.5}, {0.5, 4.0}}) {
    const int n = 2001 + static_cast<int>(1600 * (a + w));
    const complex o2 = oracle::double_time_integral(a, w, n);
    CHECK(rel(g2(a, w), o2) < 1e-6);
    const complex o1 = oracle::switching_fourier(a, w, n);
    CHECK(std::abs(g1(a, w) - o1.real()) / g1(a, w) < 1e-10);
    CHECK(std::abs(o1.imag()) < 1e-10 * g1(a, w));
  }
  // the erfi term gives g2 an imaginary part even with no gap
  CHECK(std::abs(g2(0, 3).imag()) > 1e-3);
  CHECK(std::isfinite(std::abs(g2(0.0, 1e4))));
}

TEST_CASE("matrix elements against frozen oracles") {
  const QuadratureSpec spec;
  const FixtureSet& fx = fixtures();
  const double L = matrix_element_L(at(1, 0), spec);
  CHECK(rel(L, fx.get(fixture::L_a1).value) < 1e-8);

  const complex lab2 = matrix_element_Lab(at(1, 2), spec);
  CHECK(rel(lab2, fx.get(fixture::Lab_a1_b2).value) < 1e-8);

  const complex m2 = matrix_element_M(at(1, 2), spec);
  CHECK(rel(m2, fx.get(fixture::M_a1_b2).value) < 1e-6);

  const complex lab1000 = matrix_element_Lab(at(1, 1000), spec);
  CHECK(std::abs(lab1000 - fx.get(fixture::Lab_a1_b1000).value) < 1e-8 * L);
  const complex m1000 = matrix_element_M(at(1, 1000), spec);
  CHECK(std::abs(m1000 - fx.get(fixture::M_a1_b1000).value) < 1e-8 * L);
}

TEST_CASE("fixture file integrity") {
  const FixtureSet& fx = fixtures();
  CHECK(fx.hash.size() == 16);
  CHECK(fx.contains(fixture::point_rubidium));
  CHECK_FALSE(fx.contains("no_such_row"));
  CHECK_THROWS_AS(fx.get("no_such_row"), std::out_of_range);
  CHECK(format_fixtures(fx.rows).size() > 0);

  // a tampered value is caught by the row hash
  std::ifstream in(fixture_dir() / kFixtureFile, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto pos = text.find("0.069505912521480931");
  REQUIRE(pos != std::string::npos);
  text[pos + 5] = '6';
  const auto dir = std::filesystem::temp_directory_path() / "harvestkit_tampered";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / kFixtureFile, std::ios::binary) << text;
  CHECK_THROWS_AS(load_fixtures(dir), std::runtime_error);
  CHECK_THROWS_AS(load_fixtures(dir / "missing"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("coincident and distant detectors") {
  const QuadratureSpec spec;
  const auto e0 = two_level_elements(at(1, 0), spec).elements;
  CHECK(std::abs(e0.L_ab - complex(e0.L_aa)) < 1e-12 * e0.L_aa);

  const auto far = two_level_elements(at(1, 1000), spec).elements;
  CHECK(std::abs(far.L_ab) <= 0.05 * far.L_aa);
  CHECK(std::abs(far.M) <= 0.05 * std::abs(e0.M));
}

TEST_CASE("element invariants over a parameter set") {
  const QuadratureSpec spec;
  for (double a : {0.0, 0.3, 1.0, 3.0})
    for (double b : {0.0, 0.7, 2.0, 5.0})
      for (double s : {0.05, 0.125, 0.5})
        for (auto [delta, br] : {std::pair{0.0, Branch::linear}, {0.01, Branch::bogoliubov}}) {
          const auto e = two_level_elements(at(a, b, s, delta, br), spec).elements;
          CHECK(e.L_aa == e.L_bb);
          CHECK(e.L_aa >= 0.0);
          CHECK(std::abs(e.L_ab.imag()) <= 1e-10 * std::abs(e.L_ab));
          CHECK(std::abs(e.L_ab) <= std::sqrt(e.L_aa * e.L_bb) * (1 + 1e-12));
          CHECK(std::isfinite(std::abs(e.M)));
        }
}

TEST_CASE("zero coupling gives zero elements") {
  const auto e = two_level_elements(at(1, 1), QuadratureSpec{}).elements.scaled(0.0);
  CHECK(e.L_aa == 0.0);
  CHECK(e.M == complex(0.0));
}

TEST_CASE("large gap suppression") {
  const QuadratureSpec spec;
  const auto e1 = two_level_elements(at(1, 1), spec).elements;
  const auto e20 = two_level_elements(at(20, 1), spec).elements;
  CHECK(e20.L_aa < 1e-8 * e1.L_aa);
  CHECK(std::abs(e20.M) < 1e-8 * std::abs(e1.M));
  // |M| still wins at a = 20, by a margin far below anything observable
  const double n20 = std::abs(e20.M) - e20.L_aa;
  const double n1 = std::abs(e1.M) - e1.L_aa;
  CHECK(n20 > 0.0);
  CHECK(n20 < 1e-150 * n1);
}

TEST_CASE("pointlike limit") {
  QuadratureSpec spec;
  const double s = 1e-3;
  for (double b : {0.5, 1.0, 2.0}) {
    const auto g = two_level_elements(at(1, b, s), spec, Smearing::gaussian).elements;
    const auto p = two_level_elements(at(1, b, s), spec, Smearing::pointlike).elements;
    CHECK(std::abs(g.L_aa - p.L_aa) / p.L_aa < 1e-3);
    CHECK(rel(g.L_ab, p.L_ab) < 1e-3);
    CHECK(rel(g.M, p.M) < 1e-3);
  }
}

TEST_CASE("large detectors do not see dispersion") {
  const QuadratureSpec spec;
  // s u_c = s/delta >= 50
  for (double s : {0.125, 0.25}) {
    const auto d = dispersion_sensitivity(at(1, 1, s, s / 50, Branch::bogoliubov), spec);
    CHECK(d.rel_diff <= 1e-2);
  }
  const auto rb = dispersion_sensitivity(at(1, 1, 0.125, 1.8591015788696e-3, Branch::bogoliubov), spec);
  CHECK(rb.rel_diff <= 1e-2);
  CHECK(rb.rel_diff == doctest::Approx(fixtures().get(fixture::dispersion_rubidium).value.real())
                           .epsilon(1e-4));
}

TEST_CASE("UV cutoff doubling") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-300;
  const auto e10 = two_level_elements(at(1, 1), spec).elements;
  spec.cutoff_factor = 20.0;
  const auto e20 = two_level_elements(at(1, 1), spec).elements;
  CHECK(std::abs(e20.L_aa - e10.L_aa) / e10.L_aa < 1e-10);
  CHECK(rel(e20.M, e10.M) < 1e-10);
}

TEST_CASE("failure modes") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-15;
  spec.abs_tol = 1e-300;
  spec.max_subdivisions = 0;
  CHECK_THROWS_AS(two_level_elements(at(1, 3), spec), ConvergenceError);
  try {
    matrix_element_M(at(1, 3), spec);
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(std::abs(e.best_estimate())));
    CHECK(e.error_estimate() > 0.0);
  }

  // subsonic crossover u_c = 1/delta = 20 lies below the cutoff 10/0.125 = 80
  CHECK_THROWS_AS(two_level_elements(at(1, 1, 0.125, 0.05, Branch::subsonic), QuadratureSpec{}),
                  DomainError);
  CHECK_NOTHROW(two_level_elements(at(1, 1, 0.125, 0.01, Branch::subsonic), QuadratureSpec{}));
}

TEST_CASE("detector pair validation") {
  DetectorPairConfig d{1.0, 1e-3, 1e-6, 0.0, 0.0, Smearing::gaussian};
  CHECK_NOTHROW(d.validate());
  d.pulse_width = 0.0;
  CHECK_THROWS_AS(d.validate(), DomainError);
  d = {1.0, 1e-3, 1e-6, 0.0, -1.0, Smearing::gaussian};
  CHECK_THROWS_AS(d.validate(), DomainError);
  d = {1.0, 2.0, 1e-6, 0.0, 0.05, Smearing::gaussian};
  CHECK(d.coupling_scale() == doctest::Approx(0.01));
}
