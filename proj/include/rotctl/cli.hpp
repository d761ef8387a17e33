#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace rotctl::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kInfeasible = 3,
  kTruncation = 4,
  kIo = 5,
};

/// Environment variable that overrides the output directory of every command.
inline constexpr const char* kOutputDirEnv = "ROTCTL_OUTPUT_DIR";

/// Settings shared by the design/propagate/sweep pipeline. Times are in
/// units of T_rot. Layering: builtin defaults < config file < environment <
/// command-line flags.
struct RunConfig {
  std::string molecule = "LiH";
  int j_max = 1;
  double t_sub_trot = 3.0;
  double spacing_factor = 5.0;
  std::optional<double> phi_1;
  double delta_phi = 0.0;
  double samples_per_cycle = 50.0;
  double sample_step_trot = 0.01;
  double post_revivals = 5.0;
  int j_buffer = 8;
  std::string output_dir = ".";
  std::string method = "tdse";
};

/// Overlays the keys present in `j` onto `config`.
void apply_config(RunConfig& config, const nlohmann::json& j);

/// Throws rotctl::DomainError when a field is out of range.
void validate(const RunConfig& config);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotctl::cli
