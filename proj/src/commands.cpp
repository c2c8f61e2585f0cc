#include "harvestkit/commands.hpp"

#include "harvestkit/errors.hpp"
#include "harvestkit/oracles.hpp"
#include "harvestkit/output.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace harvestkit {

namespace {

using json = nlohmann::ordered_json;

json header(std::string_view command) {
  return {{"schema", kSchemaVersion}, {"code_version", kCodeVersion}, {"command", command}};
}

std::string fixture_hash_or_empty() {
  try {
    return load_fixtures().hash;
  } catch (const std::exception&) {
    return "";
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
  if (!f) throw ConfigError("write failed: " + path);
}

json si_block(const RunConfig& rc, const DimensionlessPoint& p) {
  if (!rc.medium || !rc.pulse_width) return nullptr;
  const DetectorPairSI si = unreduce(p, *rc.medium, *rc.pulse_width);
  return {{"sound_speed", rc.medium->sound_speed},
          {"dispersion_strength", rc.medium->dispersion_strength},
          {"pulse_width", si.pulse_width},
          {"gap", si.gap},
          {"spot_size", si.spot_size},
          {"separation", si.separation}};
}

int status_exit(PointStatus s) {
  switch (s) {
  case PointStatus::ok: return kExitOk;
  case PointStatus::convergence_error: return kExitConvergence;
  case PointStatus::domain_error:
  case PointStatus::perturbativity_error: return kExitConfig;
  }
  return kExitOk;
}

} // namespace

int cmd_point(const RunConfig& rc, const CommandOptions& opt, std::ostream& out) {
  const HarvestPoint h = evaluate_point(rc.point, rc.quadrature, rc.smearing, rc.scale);
  json j = header("point");
  j["preset"] = rc.preset ? json(rc.preset->name) : json(nullptr);
  const json body = point_json(h);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["si"] = si_block(rc, rc.point);
  j["quadrature"] = quadrature_json(rc.quadrature);
  j["fixture_hash"] = fixture_hash_or_empty();
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!opt.out_path.empty()) write_file(opt.out_path, text);
  return status_exit(h.status);
}

int cmd_map(const RunConfig& rc, const CommandOptions& opt, std::ostream& out) {
  try {
    rc.grid.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const SweepResult r = sweep(rc.grid, opt.threads);
  const std::string csv = sweep_csv(r);
  if (opt.out_path.empty()) {
    out << csv;
  } else {
    write_file(opt.out_path, csv);
    // The CSV layout is fixed, so the schema and provenance travel beside it.
    json meta = header("map");
    meta["csv"] = std::filesystem::path(opt.out_path).filename().string();
    meta["columns"] = kMapColumns;
    meta["preset"] = rc.preset ? json(rc.preset->name) : json(nullptr);
    meta["grid"] = grid_json(rc.grid);
    meta["quadrature"] = quadrature_json(rc.grid.quadrature);
    meta["log_base"] = 10;
    meta["fixture_hash"] = fixture_hash_or_empty();
    write_file(opt.out_path + ".meta.json", meta.dump(2) + "\n");
  }
  for (const auto& h : r.points)
    if (h.status == PointStatus::convergence_error) return kExitConvergence;
  return kExitOk;
}

int cmd_optimize(const RunConfig& rc, const CommandOptions& opt, std::ostream& out) {
  try {
    rc.optimize.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const OptimizeSpec& o = rc.optimize;
  json j = header("optimize");
  j["preset"] = rc.preset ? json(rc.preset->name) : json(nullptr);
  j["bounds"] = {{"a", {o.a_min, o.a_max}}, {"b", {o.b_min, o.b_max}}, {"s", {o.s_min, o.s_max}}};
  j["constraint"] = to_string(o.constraint);
  j["budget"] = o.budget;
  j["seed"] = o.seed;
  int code = kExitOk;
  try {
    const OptimizeResult r = optimize_negativity(o);
    j["evaluations"] = r.evaluations;
    j["best"] = point_json(r.best);
    j["si"] = si_block(rc, r.best.point);
  } catch (const InfeasibleError& e) {
    j["status"] = "infeasible";
    j["message"] = e.what();
    j["best_I_min"] = std::isfinite(e.best_inseparability()) ? json(e.best_inseparability())
                                                               : json(nullptr);
    code = kExitInfeasible;
  }
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!opt.out_path.empty()) write_file(opt.out_path, text);
  return code;
}

int cmd_preset(const std::string& name, std::ostream& out) {
  const BecPreset p = find_preset(name);
  const MediumParams m = p.medium();
  const double cT = p.sound_speed * p.pulse_width;
  const double s = p.spot_size / cT;
  json j = header("preset");
  j["preset"] = p.name;
  j["si"] = {{"healing_length", p.healing_length},
             {"sound_speed", p.sound_speed},
             {"spot_size", p.spot_size},
             {"pulse_width", p.pulse_width},
             {"extent", p.extent},
             {"dispersion_strength", p.dispersion_strength()},
             {"crossover_wavenumber", crossover_scale(m)},
             {"branch", to_string(m.branch)}};
  j["reduced"] = {{"cT", cT},
                  {"s", s},
                  {"delta", p.dispersion_strength() / (p.sound_speed * cT)},
                  {"sigma_over_xi", p.spot_size / p.healing_length},
                  {"b_boundary", causal_boundary(s)},
                  {"separation_boundary", causal_boundary(s) * cT}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

std::vector<ValidationCheck> run_validation(const FixtureSet& fx) {
  std::vector<ValidationCheck> checks;
  auto add = [&](std::string name, double value, double reference, double scale, double tol) {
    ValidationCheck c{std::move(name), value, reference, 0.0, tol, false};
    c.residual = std::abs(value - reference) / scale;
    c.pass = c.residual <= tol;
    checks.push_back(std::move(c));
  };
  auto add_rel = [&](std::string name, double value, double reference, double tol) {
    add(std::move(name), value, reference, std::abs(reference), tol);
  };
  // Complex values: the residual is |value - reference| / |reference|.
  auto add_complex = [&](std::string name, complex value, complex reference, double tol) {
    ValidationCheck c{std::move(name), std::abs(value), std::abs(reference), 0.0, tol, false};
    c.residual = std::abs(value - reference) / std::abs(reference);
    c.pass = c.residual <= tol;
    checks.push_back(std::move(c));
  };
  auto fixture_value = [&](std::string_view n) { return fx.get(n).value; };

  // Closed-form switching integrals against the time-domain oracles.
  for (double a : {0.0, 2.5, 5.0})
    for (double w : {0.0, 2.5, 5.0}) {
      std::ostringstream tag;
      tag << "(" << a << "," << w << ")";
      const double n1 = oracle::switching_fourier(a, w, 4001).real();
      add_rel("g1 vs time quadrature " + tag.str(), g1(a, w), n1, 1e-10);
      const int n = 2001 + int(1600.0 * (a + w));
      add_complex("g2 vs double time integral " + tag.str(), g2(a, w),
                  oracle::double_time_integral(a, w, n), 1e-6);
    }
  add_complex("g2(1,1) vs frozen oracle", g2(1, 1), fixture_value(fixture::g2_a1_w1), 1e-6);

  // Radial elements against frozen trapezoid / composition oracles.
  const QuadratureSpec q;
  DimensionlessPoint p{1.0, 0.0, 0.125, 0.0, Branch::linear};
  const double L = matrix_element_L(p, q);
  add_rel("L(a=1) vs trapezoid", L, fixture_value(fixture::L_a1).real(), 1e-8);
  p.b = 2.0;
  add("L_ab(a=1,b=2) vs trapezoid", matrix_element_Lab(p, q).real(),
      fixture_value(fixture::Lab_a1_b2).real(), L, 1e-8);
  add_complex("M(a=1,b=2) vs time-domain composition", matrix_element_M(p, q),
              fixture_value(fixture::M_a1_b2), 1e-6);
  p.b = 1000.0;
  add("L_ab(a=1,b=1000) vs trapezoid", matrix_element_Lab(p, q).real(),
      fixture_value(fixture::Lab_a1_b1000).real(), L, 1e-8);
  add("|M(a=1,b=1000)| vs trapezoid", std::abs(matrix_element_M(p, q)),
      std::abs(fixture_value(fixture::M_a1_b1000)), L, 1e-8);

  // Partial transpose against the leading-order formula.
  {
    std::mt19937_64 rng(7);
    auto unit = [&] { return double(rng() >> 11) * 0x1p-53; };
    double k_max = 0.0;
    for (int i = 0; i < 120; ++i) {
      MatrixElements e;
      e.L_aa = e.L_bb = 0.05 + 0.3 * unit();
      e.L_ab = std::polar(e.L_aa * unit(), 0.0);
      e.M = std::polar(0.6 * unit(), 2.0 * std::numbers::pi * unit());
      for (double x : {1e-2, 1e-3, 1e-4}) {
        const double nf = x * negativity_formula(e);
        const double npt = negativity_partial_transpose(assemble_state(e, x));
        k_max = std::max(k_max, std::abs(npt - nf) / (x * x));
      }
    }
    add("partial transpose residual K = max|N_PT - xN|/x^2", k_max, 0.0, 1.0, 1.0);
  }

  // Dispersion and end-to-end regression values.
  {
    const BecPreset rb = rubidium_preset();
    const double cT = rb.sound_speed * rb.pulse_width;
    const DimensionlessPoint pr{1.0, 1.0, rb.spot_size / cT,
                                rb.dispersion_strength() / (rb.sound_speed * cT),
                                Branch::bogoliubov};
    const DispersionSensitivity d = dispersion_sensitivity(pr, q);
    add("dispersion rel_diff at rubidium point <= 1e-2", d.rel_diff, 0.0, 1.0, 1e-2);
    add_rel("dispersion rel_diff vs frozen value", d.rel_diff,
            fixture_value(fixture::dispersion_rubidium).real(), 1e-6);
    const HarvestPoint h = evaluate_point(pr, q, Smearing::gaussian, 0.01);
    add_rel("rubidium point N vs frozen value", h.negativity_coefficient,
            fixture_value(fixture::point_rubidium).real(), 1e-8);
  }
  return checks;
}

int cmd_validate(std::ostream& out) {
  FixtureSet fx;
  try {
    fx = load_fixtures();
  } catch (const std::exception& e) {
    out << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  }
  const auto checks = run_validation(fx);
  bool ok = true;
  out << "fixtures " << fx.hash << "\n";
  out << std::left << std::setw(52) << "check" << std::setw(14) << "residual" << std::setw(12)
      << "tolerance" << "result\n";
  for (const auto& c : checks) {
    std::ostringstream res, tol;
    res << std::scientific << std::setprecision(3) << c.residual;
    tol << std::scientific << std::setprecision(1) << c.tolerance;
    out << std::left << std::setw(52) << c.name << std::setw(14) << res.str() << std::setw(12)
        << tol.str() << (c.pass ? "PASS" : "FAIL") << "\n";
    ok = ok && c.pass;
  }
  if (!ok) {
    out << "failing comparisons:\n";
    for (const auto& c : checks)
      if (!c.pass) out << "  " << c.name << "\n";
  }
  return ok ? kExitOk : kExitValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement harvesting from a dispersive (2+1)-D phonon field"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  CommandOptions opt;
  long long seed = -1;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--set", overrides, "override a config key: section.key=value");
  app.add_option("--out", opt.out_path, "output file");
  app.add_option("--threads", opt.threads, "worker threads for map")->check(CLI::Range(1, 1024));
  app.add_option("--seed", seed, "optimizer seed")->check(CLI::NonNegativeNumber);

  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  auto* map = app.add_subcommand("map", "negativity map over (a, b)");
  auto* optimize = app.add_subcommand("optimize", "maximize the harvested negativity");
  auto* preset = app.add_subcommand("preset", "print a physical preset");
  std::string preset_name = "rubidium";
  preset->add_option("name", preset_name, "preset name");
  auto* validate = app.add_subcommand("validate", "run the oracle suite");
  for (auto* sub : {point, map, optimize, preset, validate}) sub->fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*preset) return cmd_preset(preset_name, out);
    if (*validate) return cmd_validate(out);

    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects section.key=value");
      cfg.set(o.substr(0, eq), o.substr(eq + 1));
    }
    if (seed >= 0) cfg.set("optimize.seed", std::to_string(seed));
    const RunConfig rc = resolve(cfg);
    if (*point) return cmd_point(rc, opt, out);
    if (*map) return cmd_map(rc, opt, out);
    if (*optimize) return cmd_optimize(rc, opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  }
  return kExitConfig;
}

} // namespace harvestkit
