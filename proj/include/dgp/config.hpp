#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgp/control.hpp"
#include "dgp/dataset.hpp"
#include "dgp/network.hpp"
#include "dgp/target.hpp"
#include "dgp/vision.hpp"

namespace dgp {

// Exit-code contract shared by the CLI and the C API.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitGenerationError = 3;
inline constexpr int kExitRunDiagnostic = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { kNoGp, kLocalGp, kDistributedGp };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

struct ScenarioConfig {
  DroneGraph graph;
  Gains gains;
  CameraModel camera;
  FeatureSet features = FeatureSet::default_square();
  TargetMotion target;
  ExpertRegions regions;

  // GP settings
  double dataset_noise_var = 0.01;  // sigma^2 of the generated observations
  int opt_budget = 500;
  double bound_delta = 0.1;  // probability delta of the error radius
  std::string beta_formula = "srinivas";
  RegionGrid eval_grid;

  // run settings
  Mode mode = Mode::kDistributedGp;
  double duration = 100.0;
  double dt = 0.002;
  std::uint64_t seed = 0;
  double dataset_duration = 100.0;
  double dataset_dt = 0.01;
  double theta_limit = M_PI / 2.0;
  double grace_period = 1.0;  // seconds all-invisible before target-lost
  bool oracle_feedforward = false;  // replace mu by the true target velocity

  std::vector<Pose> desired_poses;       // g_di, one per drone
  std::vector<ErrorState> initial_errors;  // one per drone

  // pipeline wiring (overridable from the CLI)
  std::string data_dir;
  std::string hyperparams_dir;

  void validate() const;  // throws ConfigError
};

// Parses and validates a scenario config JSON document. Unknown keys are
// rejected at the top level. Throws ConfigError on any violation.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& json_text);

// JSON round-trip helpers used by the file formats.
std::string pose_to_json(const Pose& g);

}  // namespace dgp
