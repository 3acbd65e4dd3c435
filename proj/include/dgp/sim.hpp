#pragma once

#include <string>
#include <vector>

#include "dgp/config.hpp"
#include "dgp/fusion.hpp"
#include "dgp/gp.hpp"

// Closed-loop simulation engine: synchronous-step pursuit of the target by
// n drones with per-mode velocity prediction.

namespace dgp {

enum class RunStatus { kOk, kThetaViolation, kTargetLost };

std::string to_string(RunStatus s);

struct StepRecord {
  double t = 0.0;
  int drone = 0;  // 1-based
  Vec4 e_ci = Vec4::Zero();
  Vec4 e_ei = Vec4::Zero();
  double norm_e_sq = 0.0;  // squared norm of the full network error
  double storage_total = 0.0;
  Vec4 u_ci = Vec4::Zero();
  Vec4 u_ei = Vec4::Zero();
  Vec4 mu_poe = Vec4::Zero();
  Vec4 var_poe = Vec4::Zero();
  int visible = 0;
  Pose target;
  Vec4 v_true = Vec4::Zero();  // true target body velocity (diagnostics)
};

struct RunTrace {
  std::vector<StepRecord> rows;
  RunStatus status = RunStatus::kOk;
  std::string diagnostic;
};

struct RunMetrics {
  double squared_mean_e = 0.0;  // (mean_t ||e(t)||)^2
  double mean_sq_e = 0.0;       // mean_t ||e(t)||^2
  std::vector<double> peak_error;  // per drone, max_t ||e_i(t)||
  int visibility_loss_events = 0;  // per-drone transitions visible->invisible
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
  RunStatus status = RunStatus::kOk;
};

struct RunResult {
  RunTrace trace;
  RunMetrics metrics;
};

// Runs the closed loop. `experts` must hold one trained expert per drone
// unless mode is no_gp (or oracle_feedforward is set), in which case it may
// be empty. Diagnostic terminations (theta assertion, target lost) are
// reported in the status, with the partial trace retained.
RunResult run_simulation(const ScenarioConfig& config,
                         const std::vector<GpExpert>& experts);

// Thread cap for per-drone parallel sections, from DGP_PURSUIT_THREADS
// (defaults to 1; values < 1 are clamped).
int thread_cap();

}  // namespace dgp
