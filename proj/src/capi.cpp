#include "dgp_pursuit.h"

#include <exception>
#include <string>

#include "dgp/config.hpp"
#include "dgp/pipeline.hpp"
#include "dgp/sim.hpp"

struct dgp_context {
  dgp::ScenarioConfig config;
  std::string last_error;
};

namespace {

std::string g_create_error;

template <typename Fn>
int guarded(dgp_context* ctx, Fn&& fn) {
  if (!ctx) return DGP_ERR_CONFIG;
  ctx->last_error.clear();
  try {
    return fn();
  } catch (const dgp::ConfigError& e) {
    ctx->last_error = e.what();
    return DGP_ERR_CONFIG;
  } catch (const dgp::GenerationError& e) {
    ctx->last_error = e.what();
    return DGP_ERR_GENERATION;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return DGP_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

dgp_context* dgp_context_create(const char* config_path) {
  try {
    auto* ctx = new dgp_context;
    ctx->config = dgp::load_config(config_path ? config_path : "");
    return ctx;
  } catch (const std::exception& e) {
    g_create_error = e.what();
    return nullptr;
  }
}

void dgp_context_destroy(dgp_context* ctx) { delete ctx; }

const char* dgp_last_error(const dgp_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

const char* dgp_global_last_error(void) { return g_create_error.c_str(); }

int dgp_set_seed(dgp_context* ctx, unsigned long long seed) {
  return guarded(ctx, [&] {
    ctx->config.seed = seed;
    return DGP_OK;
  });
}

int dgp_set_mode(dgp_context* ctx, const char* mode) {
  return guarded(ctx, [&] {
    ctx->config.mode = dgp::mode_from_string(mode ? mode : "");
    return DGP_OK;
  });
}

int dgp_set_dt(dgp_context* ctx, double dt) {
  return guarded(ctx, [&] {
    if (!(dt > 0.0)) throw dgp::ConfigError("dt must be > 0");
    ctx->config.dt = dt;
    return DGP_OK;
  });
}

int dgp_set_duration(dgp_context* ctx, double duration) {
  return guarded(ctx, [&] {
    if (!(duration > 0.0)) throw dgp::ConfigError("duration must be > 0");
    ctx->config.duration = duration;
    return DGP_OK;
  });
}

int dgp_set_data_dir(dgp_context* ctx, const char* dir) {
  return guarded(ctx, [&] {
    ctx->config.data_dir = dir ? dir : "";
    return DGP_OK;
  });
}

int dgp_set_hyperparams_dir(dgp_context* ctx, const char* dir) {
  return guarded(ctx, [&] {
    ctx->config.hyperparams_dir = dir ? dir : "";
    return DGP_OK;
  });
}

int dgp_gen_data(dgp_context* ctx, const char* out_dir) {
  return guarded(ctx, [&] {
    dgp::pipeline::gen_data(ctx->config, out_dir ? out_dir : ".");
    return DGP_OK;
  });
}

int dgp_train(dgp_context* ctx, const char* out_dir) {
  return guarded(ctx, [&] {
    dgp::pipeline::train(ctx->config, ctx->config.data_dir,
                         out_dir ? out_dir : ".");
    return DGP_OK;
  });
}

int dgp_simulate(dgp_context* ctx, const char* out_dir,
                 double* squared_mean_e_out) {
  return guarded(ctx, [&] {
    const dgp::RunResult r = dgp::pipeline::simulate(
        ctx->config, ctx->config.data_dir, ctx->config.hyperparams_dir,
        out_dir ? out_dir : ".");
    if (squared_mean_e_out) *squared_mean_e_out = r.metrics.squared_mean_e;
    if (r.metrics.status != dgp::RunStatus::kOk) {
      ctx->last_error = r.trace.diagnostic;
      return DGP_RUN_DIAGNOSTIC;
    }
    return DGP_OK;
  });
}

int dgp_compare(dgp_context* ctx, const char* out_dir,
                double squared_means_out[3]) {
  return guarded(ctx, [&] {
    const dgp::pipeline::ComparisonResult cmp = dgp::pipeline::compare(
        ctx->config, ctx->config.data_dir, ctx->config.hyperparams_dir,
        out_dir ? out_dir : ".");
    if (squared_means_out) {
      squared_means_out[0] = cmp.squared_mean_no_gp;
      squared_means_out[1] = cmp.squared_mean_local;
      squared_means_out[2] = cmp.squared_mean_distributed;
    }
    if (cmp.worst_status != dgp::RunStatus::kOk) {
      ctx->last_error = "a comparison run ended with status " +
                        dgp::to_string(cmp.worst_status);
      return DGP_RUN_DIAGNOSTIC;
    }
    return DGP_OK;
  });
}

int dgp_bounds(dgp_context* ctx, const char* out_dir, double* l_mu_out,
               double* delta_bar_out) {
  return guarded(ctx, [&] {
    const dgp::pipeline::GainConditionReport rep = dgp::pipeline::bounds(
        ctx->config, ctx->config.data_dir, ctx->config.hyperparams_dir,
        out_dir ? out_dir : ".");
    if (l_mu_out) *l_mu_out = rep.l_mu;
    if (delta_bar_out) *delta_bar_out = rep.delta_bar;
    return DGP_OK;
  });
}

}  // extern "C"
