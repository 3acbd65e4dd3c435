#include "dgp/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <variant>

namespace dgp {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kOk: return "ok";
    case RunStatus::kThetaViolation: return "theta_violation";
    case RunStatus::kTargetLost: return "target_lost";
  }
  return "?";
}

int thread_cap() {
  const char* env = std::getenv("DGP_PURSUIT_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

RunResult run_simulation(const ScenarioConfig& config,
                         const std::vector<GpExpert>& experts) {
  config.validate();
  const int n = config.graph.n;
  const bool needs_gp =
      !config.oracle_feedforward && config.mode != Mode::kNoGp;
  if (needs_gp && static_cast<int>(experts.size()) != n) {
    throw std::invalid_argument("run_simulation: need one expert per drone");
  }

  std::vector<std::vector<int>> neigh(n);
  for (int i = 0; i < n; ++i) neigh[i] = neighbors(config.graph, i + 1);

  RunResult out;
  std::vector<ErrorState> errs = config.initial_errors;
  Pose g_w0 = config.target.initial;
  const int steps = static_cast<int>(std::llround(config.duration / config.dt));
  out.trace.rows.reserve(static_cast<size_t>(steps) * n);

  double sum_norm_e = 0.0;
  double sum_norm_e_sq = 0.0;
  int counted_steps = 0;
  out.metrics.peak_error.assign(n, 0.0);
  std::vector<int> prev_visible(n, 1);
  double invisible_time = 0.0;
  double predict_seconds = 0.0;

  for (int k = 0; k < steps; ++k) {
    const double t = k * config.dt;
    const BodyVelocity v_true = config.target.velocity(g_w0, t);

    std::vector<ReconstructedPoses> recon(n);
    std::vector<int> visible(n, 0);
    for (int i = 0; i < n; ++i) {
      recon[i] = reconstruct_poses(g_w0, config.desired_poses[i], errs[i]);
      visible[i] = std::holds_alternative<Eigen::VectorXd>(
                       feature_vector(recon[i].g_i0, config.features,
                                      config.camera))
                       ? 1
                       : 0;
      if (prev_visible[i] && !visible[i]) {
        ++out.metrics.visibility_loss_events;
      }
    }

    // per-drone predictions at each drone's own pose estimate
    std::vector<Prediction> preds(n);
    if (needs_gp) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i < n; ++i) {
        preds[i] = experts[i].predict(recon[i].g_bar_wi.flatten());
      }
      predict_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }

    double norm_e_sq = 0.0;
    for (int i = 0; i < n; ++i) norm_e_sq += errs[i].e().squaredNorm();
    const double storage_now = total_storage(errs);
    sum_norm_e += std::sqrt(norm_e_sq);
    sum_norm_e_sq += norm_e_sq;
    ++counted_steps;

    std::vector<ControlInput> inputs(n);
    for (int i = 0; i < n; ++i) {
      std::vector<Pose> neighbor_ests;
      neighbor_ests.reserve(neigh[i].size());
      for (int j : neigh[i]) neighbor_ests.push_back(recon[j - 1].g_bar_wi);
      const Vec4 consensus =
          consensus_term(recon[i].g_bar_wi, neighbor_ests, config.gains.k_s);

      std::optional<Vec4> mu;
      Vec4 mu_log = Vec4::Zero(), var_log = Vec4::Zero();
      if (config.oracle_feedforward) {
        mu = v_true.as_vec4();
        mu_log = *mu;
      } else if (config.mode == Mode::kLocalGp) {
        mu = preds[i].mu;
        mu_log = preds[i].mu;
        var_log = preds[i].var;
      } else if (config.mode == Mode::kDistributedGp) {
        std::vector<FusionMember> members;
        members.push_back({preds[i], recon[i].g_bar_wi.flatten()});
        for (int j : neigh[i]) {
          members.push_back({preds[j - 1], recon[j - 1].g_bar_wi.flatten()});
        }
        const FusedPrediction fused = fuse(members);
        mu = fused.mu_poe;
        mu_log = fused.mu_poe;
        var_log = fused.var_poe;
      }

      inputs[i] =
          control_law(errs[i], config.gains, visible[i], consensus, mu);

      StepRecord row;
      row.t = t;
      row.drone = i + 1;
      row.e_ci = errs[i].e_ci();
      row.e_ei = errs[i].e_ei();
      row.norm_e_sq = norm_e_sq;
      row.storage_total = storage_now;
      row.u_ci = inputs[i].u_ci;
      row.u_ei = inputs[i].u_ei;
      row.mu_poe = mu_log;
      row.var_poe = var_log;
      row.visible = visible[i];
      row.target = g_w0;
      row.v_true = v_true.as_vec4();
      out.trace.rows.push_back(row);
    }

    for (int i = 0; i < n; ++i) {
      errs[i] = rk4_step(errs[i], inputs[i], v_true, config.dt);
      out.metrics.peak_error[i] =
          std::max(out.metrics.peak_error[i], errs[i].e().norm());
    }
    g_w0 = integrate(g_w0, v_true, config.dt);

    bool theta_ok = true;
    for (int i = 0; i < n; ++i) {
      if (std::abs(errs[i].g_ci.theta()) >= config.theta_limit ||
          std::abs(errs[i].g_ei.theta()) >= config.theta_limit) {
        theta_ok = false;
      }
    }
    if (!theta_ok) {
      out.trace.status = RunStatus::kThetaViolation;
      out.trace.diagnostic =
          "error angle exceeded theta_limit at t=" + std::to_string(t);
      break;
    }

    bool any_visible = false;
    for (int i = 0; i < n; ++i) any_visible |= (visible[i] != 0);
    invisible_time = any_visible ? 0.0 : invisible_time + config.dt;
    if (invisible_time > config.grace_period) {
      out.trace.status = RunStatus::kTargetLost;
      out.trace.diagnostic =
          "all drones lost the target at t=" + std::to_string(t);
      break;
    }

    prev_visible = visible;
  }

  if (counted_steps > 0) {
    const double mean = sum_norm_e / counted_steps;
    out.metrics.squared_mean_e = mean * mean;
    out.metrics.mean_sq_e = sum_norm_e_sq / counted_steps;
  }
  out.metrics.predict_seconds = predict_seconds;
  out.metrics.status = out.trace.status;
  return out;
}

}  // namespace dgp
