// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or fails only in a way listed
// as a known limitation (printed as "FAIL (known)"); --strict turns any FAIL
// into exit status 1.

#include "harvestkit/entanglement.hpp"
#include "harvestkit/experiment.hpp"
#include "harvestkit/fixtures.hpp"
#include "harvestkit/oracles.hpp"
#include "harvestkit/response.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <sys/wait.h>
#include <vector>

using namespace harvestkit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  bool known = false; // failure is a documented limitation
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1p-53;
}

// Random identical-detector element sets; about a third have |M| < L.
std::vector<MatrixElements> random_sets(int n) {
  std::mt19937_64 rng(20240611);
  std::vector<MatrixElements> out;
  for (int i = 0; i < n; ++i) {
    MatrixElements e;
    e.L_aa = e.L_bb = uniform(rng, 0.01, 1.0);
    e.L_ab = uniform(rng, -1.0, 1.0) * e.L_aa;
    e.M = std::polar(uniform(rng, 0.0, 3.0) * e.L_aa, uniform(rng, -std::numbers::pi, std::numbers::pi));
    out.push_back(e);
  }
  return out;
}

constexpr double kScales[] = {1e-2, 1e-3, 1e-4};

Verdict g_functions() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst1 = 0.0, worst2 = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double a = 1.25 * i, w = 1.25 * j;
      const int n = 2001 + static_cast<int>(1600 * (a + w));
      const double r1 = std::abs(g1(a, w) - oracle::switching_fourier(a, w, n).real()) / g1(a, w);
      const complex o2 = oracle::double_time_integral(a, w, n);
      const double r2 = std::abs(g2(a, w) - o2) / std::abs(o2);
      worst1 = std::max(worst1, r1);
      worst2 = std::max(worst2, r2);
    }
  const double t = seconds_since(t0);
  return {worst1 <= 1e-10 && worst2 <= 1e-6 && t < 60.0, false,
          fmt("max rel g1 %.2e (tol 1e-10), g2 %.2e (tol 1e-6), %.1f s (limit 60 s)", worst1, worst2, t)};
}

Verdict negativity_consistency() {
  const auto sets = random_sets(120);
  std::vector<double> k;
  int zero_formula = 0, zero_agree = 0;
  for (double x : kScales) {
    double k_max = 0.0;
    for (const auto& e : sets) {
      const double formula = x * negativity_formula(e);
      const double pt = negativity_partial_transpose(assemble_state(e, x));
      k_max = std::max(k_max, std::abs(pt - formula) / (x * x));
      if (formula == 0.0) {
        ++zero_formula;
        zero_agree += pt == 0.0;
      }
    }
    k.push_back(k_max);
  }
  const bool k_ok = std::isfinite(k[0]) && k[2] <= 2.0 * k[1] && k[1] <= 2.0 * k[0] + 1e-300;
  const bool zeros_ok = zero_agree == zero_formula;
  std::string detail = fmt("fitted K = %.3f / %.3f / %.3f at x = 1e-2 / 1e-3 / 1e-4 (%s); zero verdicts "
                           "agree in %d of %d cases",
                           k[0], k[1], k[2], k_ok ? "bounded" : "growing", zero_agree, zero_formula);
  if (!zeros_ok)
    detail += "; the exact transpose keeps an eigenvalue -x^2 |L_ab|^2 in the {00,11} block";
  return {k_ok && zeros_ok, k_ok && !zeros_ok, detail};
}

Verdict dgcz_link() {
  const auto sets = random_sets(120);
  double worst = 0.0;
  int violations = 0, positive = 0;
  for (double x : kScales)
    for (const auto& e : sets) {
      const double n = x * negativity_formula(e);
      const double imin = inseparability_min(e.scaled(x));
      if (n > 0.0) {
        ++positive;
        worst = std::max(worst, std::abs(1.0 - imin - 2.0 * n));
      } else if (imin < 1.0) {
        ++violations;
      }
    }
  return {worst <= 1e-12 && violations == 0, false,
          fmt("max |1 - I_min - 2N| = %.2e over %d entangled sets (tol 1e-12); I_min < 1 with N = 0: %d",
              worst, positive, violations)};
}

Verdict gap_localization() {
  const auto t0 = std::chrono::steady_clock::now();
  const Axis axis{0.1, 10.0, 60, Spacing::log};
  double best_a = 0.0, best_n = -1.0;
  for (int i = 0; i < axis.n; ++i) {
    const DimensionlessPoint p{axis.value(i), 1.0, 0.125, 0.0, Branch::linear};
    const double n = evaluate_point(p, QuadratureSpec{}, Smearing::gaussian, 0.01).negativity_coefficient;
    if (n > best_n) best_n = n, best_a = p.a;
  }
  const double t = seconds_since(t0);
  return {best_a >= 0.3 && best_a <= 3.0 && t < 300.0, false,
          fmt("argmax a = %.4f (window [0.3, 3]), N/x = %.6f, %.1f s (limit 300 s)", best_a, best_n, t)};
}

Verdict dispersion() {
  const BecPreset rb = rubidium_preset();
  const double cT = rb.sound_speed * rb.pulse_width;
  const DimensionlessPoint p{1.0, 1.0, rb.spot_size / cT,
                             rb.dispersion_strength() / (rb.sound_speed * cT), Branch::bogoliubov};
  const DispersionSensitivity d = dispersion_sensitivity(p, QuadratureSpec{});
  const double frozen = load_fixtures().get(fixture::dispersion_rubidium).value.real();
  const double drift = std::abs(d.rel_diff - frozen) / frozen;
  return {d.rel_diff <= 1e-2 && drift <= 1e-6, false,
          fmt("rel_diff = %.4e (tol 1e-2), frozen %.4e, drift %.1e", d.rel_diff, frozen, drift)};
}

Verdict causal_boundary_check() {
  int wrong = 0, probes = 0;
  for (double s : {1e-3, 0.05, 0.125, 0.5, 1.0, 3.0}) {
    const double edge = 4.0 + 2.0 * s;
    for (auto [b, want] : {std::pair{edge, CausalClass::spacelike},
                           {edge * (1 + 1e-12), CausalClass::spacelike},
                           {edge * (1 - 1e-12), CausalClass::signaling}}) {
      ++probes;
      wrong += causal_class(b, s) != want;
    }
  }
  // the same boundary in SI for the preset: 4 cT + 2 sigma = 102 um
  const BecPreset rb = rubidium_preset();
  const double cT = rb.sound_speed * rb.pulse_width;
  const double s = rb.spot_size / cT;
  const double dx = 4 * cT + 2 * rb.spot_size;
  const bool si_ok = std::abs(dx - 102e-6) <= 1e-12 * 102e-6 &&
                     std::abs(dx / cT - 4.25) <= 1e-12 * 4.25 &&
                     causal_class(causal_boundary(s) * (1 + 1e-12), s) == CausalClass::spacelike &&
                     causal_class(causal_boundary(s) * (1 - 1e-12), s) == CausalClass::signaling;
  return {wrong == 0 && si_ok, false,
          fmt("%d of %d probes at b = 4 + 2s and +-1e-12 misclassified; rubidium boundary %.6g m (b = %.15g)",
              wrong, probes, dx, dx / cT)};
}

Verdict continuous_reduction() {
  const QuadratureSpec spec;
  double worst = 0.0;
  bool positive = true;
  int boundary_mismatch = 0;
  for (int i = 0; i < 10; ++i) {
    const double a = 0.2 * std::pow(25.0, i / 9.0); // 0.2 .. 5
    const double f = mode_transition_weight(a);
    positive = positive && f > 0.0;
    for (double b : {0.0, 1.0, 3.0}) {
      const DimensionlessPoint p{a, b, 0.125, 0.0, Branch::linear};
      const auto two = two_level_elements(p, spec).elements;
      const auto cont = continuous_mode_elements(p, a, spec).elements;
      worst = std::max({worst, std::abs(cont.L_aa / (f * two.L_aa) - 1.0),
                        std::abs(cont.L_bb / (f * two.L_bb) - 1.0),
                        std::abs(cont.L_ab - f * two.L_ab) / std::abs(f * two.L_ab),
                        std::abs(cont.M - f * two.M) / std::abs(f * two.M)});
    }
    // first zero of N along b in 0.1 .. 8, 24 points
    int first_two = -1, first_cont = -1;
    for (int j = 0; j < 24; ++j) {
      const DimensionlessPoint p{a, 0.1 + j * 7.9 / 23, 0.125, 0.0, Branch::linear};
      if (first_two < 0 && negativity_formula(two_level_elements(p, spec).elements) == 0.0) first_two = j;
      if (first_cont < 0 && negativity_formula(continuous_mode_elements(p, a, spec).elements) == 0.0)
        first_cont = j;
    }
    boundary_mismatch += first_two != first_cont;
  }
  return {positive && worst <= 1e-8 && boundary_mismatch == 0, false,
          fmt("max rel deviation from 4 pi a^3 x two-level = %.2e (tol 1e-8) at 10 gaps in [0.2, 5]; "
              "N = 0 boundary mismatches: %d",
              worst, boundary_mismatch)};
}

int shell(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "harvestkit_acceptance";
  fs::create_directories(dir);
  const std::string cli = HARVESTKIT_CLI_PATH;
  std::vector<std::string> outputs;
  std::vector<double> times;
  bool exits_ok = true;
  int k = 0;
  for (int threads : {1, 8, 8}) {
    // same file name in each run: the sidecar records it
    const fs::path run_dir = dir / std::to_string(k++);
    fs::create_directories(run_dir);
    const fs::path out = run_dir / "map.csv";
    const auto t0 = std::chrono::steady_clock::now();
    exits_ok = exits_ok && shell(cli + " map --threads " + std::to_string(threads) + " --out " +
                                 out.string() + " > /dev/null") == 0;
    times.push_back(seconds_since(t0));
    outputs.push_back(slurp(out) + slurp(out.string() + ".meta.json"));
  }
  fs::remove_all(dir);
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  const bool fast = times[0] < 600.0;
  const auto lines = std::count(outputs[0].begin(), outputs[0].end(), '\n');
  return {exits_ok && same && fast && !outputs[0].empty(), false,
          fmt("default 60x60 map %s across --threads 1 / 8 / 8 (%ld newline-terminated lines incl. meta); "
              "%.1f s / %.1f s / %.1f s (limit 600 s)",
              same ? "byte-identical" : "DIFFERS", static_cast<long>(lines), times[0], times[1], times[2])};
}

Verdict uv_cutoff() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-300;
  const DimensionlessPoint p{1.0, 1.0, 0.125, 0.0, Branch::linear};
  const auto e10 = two_level_elements(p, spec).elements;
  spec.cutoff_factor = 20.0;
  const auto e20 = two_level_elements(p, spec).elements;
  const double dl = std::abs(e20.L_aa - e10.L_aa) / e10.L_aa;
  const double dm = std::abs(e20.M - e10.M) / std::abs(e10.M);
  return {dl < 1e-10 && dm < 1e-10, false,
          fmt("Lambda 10 -> 20: rel change L %.2e, M %.2e (tol 1e-10)", dl, dm)};
}

} // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::string_view(argv[1]) == "--strict";
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"G-function oracle suite", g_functions},
      {"negativity consistency", negativity_consistency},
      {"DGCZ link", dgcz_link},
      {"gap localization", gap_localization},
      {"dispersion negligibility", dispersion},
      {"causal boundary", causal_boundary_check},
      {"continuous-mode reduction", continuous_reduction},
      {"determinism", determinism},
      {"UV-cutoff convergence", uv_cutoff},
  };
  int unexpected = 0, known = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, false, std::string("exception: ") + e.what()};
    }
    const char* tag = v.pass ? "PASS" : v.known ? "FAIL (known)" : "FAIL";
    std::printf("criterion %zu %-26s %s: %s\n", i + 1, criteria[i].first, tag, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) (v.known ? known : unexpected)++;
  }
  std::printf("%d unexpected failure(s), %d known limitation(s)\n", unexpected, known);
  if (unexpected > 0) return 1;
  return strict && known > 0 ? 1 : 0;
}
