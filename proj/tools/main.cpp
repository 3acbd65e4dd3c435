// Command-line front end. Links only the C API of the shared library.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "dgp_pursuit.h"

namespace {

struct CommonOpts {
  std::string config;
  std::string out = ".";
  std::string data_dir;
  std::string hp_dir;
  long long seed = -1;
  std::string mode;
  double dt = 0.0;
  double duration = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts* o, bool needs_data) {
  cmd->add_option("--config", o->config, "Scenario config JSON")->required();
  cmd->add_option("--out", o->out, "Output directory");
  cmd->add_option("--seed", o->seed, "Seed override");
  cmd->add_option("--mode", o->mode,
                  "Mode override: no_gp, local_gp, distributed_gp");
  cmd->add_option("--dt", o->dt, "Integration step override [s]");
  cmd->add_option("--duration", o->duration, "Run duration override [s]");
  if (needs_data) {
    cmd->add_option("--data", o->data_dir,
                    "Dataset directory (default: data_dir from config)");
    cmd->add_option("--hp", o->hp_dir,
                    "Hyperparameter directory (default: from config)");
  }
}

// Builds a context with overrides applied; returns nullptr after printing
// the error.
dgp_context* make_context(const CommonOpts& o) {
  dgp_context* ctx = dgp_context_create(o.config.c_str());
  if (!ctx) {
    std::fprintf(stderr, "error: %s\n", dgp_global_last_error());
    return nullptr;
  }
  int rc = DGP_OK;
  if (o.seed >= 0) {
    rc = dgp_set_seed(ctx, static_cast<unsigned long long>(o.seed));
  }
  if (rc == DGP_OK && !o.mode.empty()) rc = dgp_set_mode(ctx, o.mode.c_str());
  if (rc == DGP_OK && o.dt > 0.0) rc = dgp_set_dt(ctx, o.dt);
  if (rc == DGP_OK && o.duration > 0.0) rc = dgp_set_duration(ctx, o.duration);
  if (rc == DGP_OK && !o.data_dir.empty()) {
    rc = dgp_set_data_dir(ctx, o.data_dir.c_str());
  }
  if (rc == DGP_OK && !o.hp_dir.empty()) {
    rc = dgp_set_hyperparams_dir(ctx, o.hp_dir.c_str());
  }
  if (rc != DGP_OK) {
    std::fprintf(stderr, "error: %s\n", dgp_last_error(ctx));
    dgp_context_destroy(ctx);
    return nullptr;
  }
  return ctx;
}

int finish(dgp_context* ctx, int rc) {
  if (rc != DGP_OK) {
    std::fprintf(stderr, "error (%d): %s\n", rc, dgp_last_error(ctx));
  }
  dgp_context_destroy(ctx);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed-GP cooperative visual pursuit simulator"};
  app.require_subcommand(1);

  CommonOpts gen_o, train_o, sim_o, cmp_o, bounds_o;
  CLI::App* gen = app.add_subcommand("gen-data", "Generate per-drone datasets");
  add_common(gen, &gen_o, false);
  CLI::App* train = app.add_subcommand("train", "Fit GP hyperparameters");
  add_common(train, &train_o, true);
  CLI::App* sim = app.add_subcommand("simulate", "Run the closed-loop pursuit");
  add_common(sim, &sim_o, true);
  CLI::App* cmp = app.add_subcommand("compare", "Run all three modes");
  add_common(cmp, &cmp_o, true);
  CLI::App* bnd = app.add_subcommand("bounds", "Report prediction-error bounds");
  add_common(bnd, &bounds_o, true);

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    dgp_context* ctx = make_context(gen_o);
    if (!ctx) return DGP_ERR_CONFIG;
    return finish(ctx, dgp_gen_data(ctx, gen_o.out.c_str()));
  }
  if (train->parsed()) {
    dgp_context* ctx = make_context(train_o);
    if (!ctx) return DGP_ERR_CONFIG;
    return finish(ctx, dgp_train(ctx, train_o.out.c_str()));
  }
  if (sim->parsed()) {
    dgp_context* ctx = make_context(sim_o);
    if (!ctx) return DGP_ERR_CONFIG;
    double sq = 0.0;
    const int rc = dgp_simulate(ctx, sim_o.out.c_str(), &sq);
    if (rc == DGP_OK || rc == DGP_RUN_DIAGNOSTIC) {
      std::printf("squared_mean_e %.17g\n", sq);
    }
    return finish(ctx, rc);
  }
  if (cmp->parsed()) {
    dgp_context* ctx = make_context(cmp_o);
    if (!ctx) return DGP_ERR_CONFIG;
    double sq[3] = {0.0, 0.0, 0.0};
    const int rc = dgp_compare(ctx, cmp_o.out.c_str(), sq);
    if (rc == DGP_OK || rc == DGP_RUN_DIAGNOSTIC) {
      std::printf("squared_mean_e no_gp %.17g\n", sq[0]);
      std::printf("squared_mean_e local_gp %.17g\n", sq[1]);
      std::printf("squared_mean_e distributed_gp %.17g\n", sq[2]);
      std::printf("ordering distributed<local<no_gp %s\n",
                  (sq[2] < sq[1] && sq[1] < sq[0]) ? "true" : "false");
    }
    return finish(ctx, rc);
  }
  if (bnd->parsed()) {
    dgp_context* ctx = make_context(bounds_o);
    if (!ctx) return DGP_ERR_CONFIG;
    double l_mu = 0.0, delta_bar = 0.0;
    const int rc = dgp_bounds(ctx, bounds_o.out.c_str(), &l_mu, &delta_bar);
    if (rc == DGP_OK) {
      std::printf("L_mu %.17g\nDelta_bar %.17g\n", l_mu, delta_bar);
    }
    return finish(ctx, rc);
  }
  return DGP_ERR_CONFIG;
}
