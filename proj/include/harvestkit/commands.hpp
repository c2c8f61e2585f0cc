#pragma once

#include "harvestkit/config.hpp"
#include "harvestkit/fixtures.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace harvestkit {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitConvergence = 3,
  kExitValidation = 4,
  kExitInfeasible = 5,
};

struct CommandOptions {
  std::string out_path; ///< empty: stdout only
  int threads = 1;
};

int cmd_point(const RunConfig& rc, const CommandOptions& opt, std::ostream& out);
int cmd_map(const RunConfig& rc, const CommandOptions& opt, std::ostream& out);
int cmd_optimize(const RunConfig& rc, const CommandOptions& opt, std::ostream& out);
int cmd_preset(const std::string& name, std::ostream& out);
int cmd_validate(std::ostream& out);

struct ValidationCheck {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double residual = 0.0;  ///< |value - reference| / scale
  double tolerance = 0.0;
  bool pass = false;
};

/// The oracle suite behind `harvestkit validate`. Read-only.
std::vector<ValidationCheck> run_validation(const FixtureSet& fixtures);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace harvestkit
