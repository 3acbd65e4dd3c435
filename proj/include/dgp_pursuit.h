/* C API of the distributed-GP pursuit simulator.
 *
 * All entry points operate on an opaque context created from a scenario
 * config JSON file and return the shared status-code contract:
 *   0  success
 *   2  config / input error
 *   3  generation error (e.g. an expert region without coverage)
 *   4  run ended with a diagnostic (theta assertion, target lost);
 *      partial outputs are still written
 *   1  unexpected internal error
 * On any nonzero return, dgp_last_error() describes the failure.
 */
#ifndef DGP_PURSUIT_H
#define DGP_PURSUIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define DGP_OK 0
#define DGP_ERR_INTERNAL 1
#define DGP_ERR_CONFIG 2
#define DGP_ERR_GENERATION 3
#define DGP_RUN_DIAGNOSTIC 4

typedef struct dgp_context dgp_context;

/* Creates a context from a scenario config JSON file. Returns NULL when the
 * file does not exist or fails validation; dgp_global_last_error() then
 * holds the message. */
dgp_context* dgp_context_create(const char* config_path);
void dgp_context_destroy(dgp_context* ctx);

/* Message of the most recent failure on this context. */
const char* dgp_last_error(const dgp_context* ctx);
/* Message of the most recent dgp_context_create failure. */
const char* dgp_global_last_error(void);

/* Optional overrides applied on top of the loaded config. `mode` is one of
 * "no_gp", "local_gp", "distributed_gp". Return DGP_ERR_CONFIG on a bad
 * value. */
int dgp_set_seed(dgp_context* ctx, unsigned long long seed);
int dgp_set_mode(dgp_context* ctx, const char* mode);
int dgp_set_dt(dgp_context* ctx, double dt);
int dgp_set_duration(dgp_context* ctx, double duration);
/* Directories where simulate/compare/bounds look for datasets and trained
 * hyperparameters (default: the values from the config file). */
int dgp_set_data_dir(dgp_context* ctx, const char* dir);
int dgp_set_hyperparams_dir(dgp_context* ctx, const char* dir);

/* Dataset CSVs per drone plus manifest.json. */
int dgp_gen_data(dgp_context* ctx, const char* out_dir);
/* Hyperparameter JSON per drone. */
int dgp_train(dgp_context* ctx, const char* out_dir);
/* trace.csv + metrics.json; `squared_mean_e_out` may be NULL. */
int dgp_simulate(dgp_context* ctx, const char* out_dir,
                 double* squared_mean_e_out);
/* All three modes with identical seed/datasets; comparison.json +
 * combined.csv. `squared_means_out`, when non-NULL, receives the three
 * values in order no_gp, local_gp, distributed_gp. */
int dgp_compare(dgp_context* ctx, const char* out_dir,
                double squared_means_out[3]);
/* bounds.json; `l_mu_out` / `delta_bar_out` may be NULL. */
int dgp_bounds(dgp_context* ctx, const char* out_dir, double* l_mu_out,
               double* delta_bar_out);

#ifdef __cplusplus
}
#endif

#endif /* DGP_PURSUIT_H */
