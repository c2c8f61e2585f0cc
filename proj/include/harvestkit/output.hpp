#pragma once

#include "harvestkit/experiment.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace harvestkit {

/// 17 significant digits, locale independent ("%.17g" semantics).
std::string format_double(double v);

/// Locale-independent parse of a full decimal string; throws ConfigError.
double parse_double(std::string_view text);

inline constexpr std::string_view kMapColumns =
    "a,b,N_over_lambda2T2,concurrence,log10_concurrence,I_min,causal_class,quad_error,status";

/// One CSV row for a grid point (no trailing newline).
std::string csv_row(const HarvestPoint& h);

/// Header plus one row per point, LF line endings.
std::string sweep_csv(const SweepResult& r);

nlohmann::ordered_json point_json(const HarvestPoint& h);
nlohmann::ordered_json quadrature_json(const QuadratureSpec& q);
nlohmann::ordered_json grid_json(const GridSpec& g);

} // namespace harvestkit
