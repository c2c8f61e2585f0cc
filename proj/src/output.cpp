#include "harvestkit/output.hpp"

#include "harvestkit/errors.hpp"

#include <array>
#include <limits>
#include <charconv>
#include <cmath>

namespace harvestkit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

namespace {

bool has_values(const HarvestPoint& h) {
  return h.status == PointStatus::ok || h.status == PointStatus::perturbativity_error;
}

nlohmann::ordered_json complex_json(complex z) { return {z.real(), z.imag()}; }

} // namespace

std::string csv_row(const HarvestPoint& h) {
  std::string row = format_double(h.point.a) + ',' + format_double(h.point.b) + ',';
  if (has_values(h)) {
    row += format_double(h.negativity_coefficient) + ',';
    row += format_double(h.concurrence.value) + ',';
    if (h.concurrence.log10) row += format_double(*h.concurrence.log10);
    row += ',';
    row += format_double(h.inseparability) + ',';
  } else {
    row += ",,,,";
  }
  row += std::string(to_string(h.causal)) + ',';
  row += format_double(h.quad_error) + ',';
  row += to_string(h.status);
  return row;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out(kMapColumns);
  out += '\n';
  for (const auto& h : r.points) {
    out += csv_row(h);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json quadrature_json(const QuadratureSpec& q) {
  return {{"rel_tol", q.rel_tol},
          {"abs_tol", q.abs_tol},
          {"max_subdivisions", q.max_subdivisions},
          {"cutoff_factor", q.cutoff_factor},
          {"default_panel", q.default_panel}};
}

nlohmann::ordered_json grid_json(const GridSpec& g) {
  auto axis = [](const Axis& x) {
    return nlohmann::ordered_json{
        {"min", x.min}, {"max", x.max}, {"n", x.n}, {"spacing", to_string(x.spacing)}};
  };
  return {{"a", axis(g.a)},
          {"b", axis(g.b)},
          {"s", g.s},
          {"delta", g.delta},
          {"branch", to_string(g.branch)},
          {"smearing", to_string(g.smearing)},
          {"lambda2T2", g.scale}};
}

nlohmann::ordered_json point_json(const HarvestPoint& h) {
  nlohmann::ordered_json j;
  j["input"] = {{"a", h.point.a},
                {"b", h.point.b},
                {"s", h.point.s},
                {"delta", h.point.delta},
                {"branch", to_string(h.point.branch)},
                {"smearing", to_string(h.smearing)},
                {"lambda2T2", h.scale}};
  j["status"] = to_string(h.status);
  if (!h.message.empty()) j["message"] = h.message;
  if (has_values(h)) {
    j["elements_over_lambda2T2"] = {{"L_aa", h.elements.L_aa},
                                    {"L_bb", h.elements.L_bb},
                                    {"L_ab", complex_json(h.elements.L_ab)},
                                    {"M", complex_json(h.elements.M)}};
    j["N_over_lambda2T2"] = h.negativity_coefficient;
    j["negativity"] = h.negativity;
    j["concurrence"] = h.concurrence.value;
    j["concurrence_flag"] = h.concurrence.log10 ? "positive" : "zero";
    if (h.concurrence.log10)
      j["log10_concurrence"] = *h.concurrence.log10;
    else
      j["log10_concurrence"] = nullptr;
    j["I_min"] = h.inseparability;
  }
  j["causal_class"] = to_string(h.causal);
  j["diagnostics"] = {{"quad_error", h.quad_error},
                      {"subdivisions", h.subdivisions},
                      {"evaluations", h.evaluations}};
  return j;
}

} // namespace harvestkit
