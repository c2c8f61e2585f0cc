// Regenerates fixtures/oracle_fixtures.tsv from the brute-force oracles.
// Slow by design; run once and commit the output.
//
//   generate_fixtures [output_dir]

#include "harvestkit/experiment.hpp"
#include "harvestkit/fixtures.hpp"
#include "harvestkit/oracles.hpp"

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>
#include <iostream>
#include <numbers>

using namespace harvestkit;

namespace {

constexpr double kS = 0.125;
constexpr double kUMax = 80.0; // cutoff_factor / s with the default factor
constexpr int kTrapezoidNodes = 1'000'000;
constexpr double kInv4Pi = 0.25 / std::numbers::pi;

double smear2(double u) { return std::exp(-kS * kS * u * u); }

double j0(double x) { return std::cyl_bessel_j(0.0, x); }

// e^{-x^2} erfi(x) = (2x/sqrt(pi)) 1F1(1; 3/2; -x^2) (Kummer).
double scaled_erfi_ref(double x) {
  return 2.0 * x * std::numbers::inv_sqrtpi *
         boost::math::hypergeometric_1F1(1.0, 1.5, -x * x);
}

// Linear medium, so w = u and the radial measure is 1/(4 pi).
auto l_kernel(double a, double b) {
  return [a, b](double u) -> complex {
    const double x = a + u;
    return kInv4Pi * smear2(u) * j0(b * u) * 2.0 * std::numbers::pi * std::exp(-x * x);
  };
}

auto m_kernel(double a, double b) {
  return [a, b](double u) -> complex {
    const complex g2 = 2.0 * std::numbers::pi * std::exp(-a * a) *
                       complex(std::exp(-u * u), -scaled_erfi_ref(u));
    return -kInv4Pi * smear2(u) * j0(b * u) * g2;
  };
}

// Time-domain G2 inside the radial trapezoid: no closed form for the
// exchange term anywhere in the chain.
complex m_composition(double a, double b) {
  constexpr double kUTrunc = 40.0; // e^{-s^2 u^2} < 1e-10 beyond
  constexpr int kNodes = 50'000;
  auto f = [&](double u) -> complex {
    const int n = 2001 + int(640.0 * (a + u));
    return -kInv4Pi * smear2(u) * j0(b * u) * oracle::double_time_integral_fast(a, u, n, 10.0);
  };
  return oracle::radial_trapezoid(f, kUTrunc, kNodes);
}

} // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : fixture_dir();
  std::vector<FixtureRow> rows;
  auto add = [&](std::string_view name, std::string params, complex v, std::string prov) {
    std::cerr.precision(17);
    std::cerr << name << " = " << v << std::endl;
    rows.push_back({std::string(name), std::move(params), v, std::move(prov)});
  };

  add(fixture::g2_a1_w1, "a=1 w=1 n=2000", oracle::double_time_integral(1.0, 1.0, 2000),
      "double_time_integral, quad precision, window 16");

  const std::string trap = "radial trapezoid 1e6 nodes on [0,80], std::cyl_bessel_j";
  add(fixture::L_a1, "a=1 b=0 s=0.125 delta=0",
      oracle::radial_trapezoid(l_kernel(1.0, 0.0), kUMax, kTrapezoidNodes), trap);
  add(fixture::Lab_a1_b2, "a=1 b=2 s=0.125 delta=0",
      oracle::radial_trapezoid(l_kernel(1.0, 2.0), kUMax, kTrapezoidNodes), trap);
  add(fixture::Lab_a1_b1000, "a=1 b=1000 s=0.125 delta=0",
      oracle::radial_trapezoid(l_kernel(1.0, 1000.0), kUMax, kTrapezoidNodes), trap);
  add(fixture::M_a1_b2, "a=1 b=2 s=0.125 delta=0", m_composition(1.0, 2.0),
      "radial trapezoid 5e4 nodes on [0,40] of double_time_integral_fast, n=2001+640(a+w)");
  add(fixture::M_a1_b1000, "a=1 b=1000 s=0.125 delta=0",
      oracle::radial_trapezoid(m_kernel(1.0, 1000.0), kUMax, kTrapezoidNodes),
      trap + ", boost hypergeometric_1F1 for erfi");

  // Regression values of the implementation itself, frozen on first run.
  const BecPreset rb = rubidium_preset();
  const double cT = rb.sound_speed * rb.pulse_width;
  const DimensionlessPoint pr{1.0, 1.0, rb.spot_size / cT,
                              rb.dispersion_strength() / (rb.sound_speed * cT),
                              Branch::bogoliubov};
  const QuadratureSpec q;
  add(fixture::dispersion_rubidium, "rubidium a=1 b=1", dispersion_sensitivity(pr, q).rel_diff,
      "implementation");
  add(fixture::point_rubidium, "rubidium a=1 b=1 lambda_T=0.1",
      evaluate_point(pr, q, Smearing::gaussian, 0.01).negativity_coefficient, "implementation");

  write_fixtures(rows, dir);
  std::cerr << "wrote " << (dir / kFixtureFile).string() << "\n";
  return 0;
}
