#pragma once

// Flat key = value configuration with [section] headers.
//
//   [medium]
//   preset = rubidium
//   [detector]
//   a = 1
//   b = 1
//
// Keys are addressed as "section.key". Comments start with '#' or ';'.

#include "harvestkit/experiment.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace harvestkit {

class Config {
public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  /// Canonical text: sections and keys sorted, comments dropped.
  /// serialize(parse(serialize(c))) == serialize(c).
  std::string serialize() const;

  /// `dotted` is "section.key". Throws ConfigError for a key without a section.
  void set(std::string_view dotted, std::string value);
  bool has(std::string_view dotted) const;
  std::optional<std::string> get(std::string_view dotted) const;

  /// Every key not in `allowed` (dotted form) raises ConfigError.
  void require_known(const std::vector<std::string_view>& allowed) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Fully resolved inputs for a command.
struct RunConfig {
  std::optional<BecPreset> preset;
  std::optional<MediumParams> medium; ///< SI medium when c is known
  std::optional<double> pulse_width;  ///< T [s] when known

  DimensionlessPoint point;
  Smearing smearing = Smearing::gaussian;
  double scale = 0.01; ///< (lambda T)^2
  QuadratureSpec quadrature;

  GridSpec grid;         ///< from [map]; s, delta, branch copied from `point`
  OptimizeSpec optimize; ///< from [optimize]
};

/// Validates and resolves a config. Each physical quantity may be given in SI
/// or in reduced form but not both; preset values act as defaults.
RunConfig resolve(const Config& c);

} // namespace harvestkit
