/* C interface to the cyclic-representation certification library.
 *
 * All objects are opaque handles; every function that can fail returns a
 * cpq_status and leaves a human-readable message in cpq_last_error().
 * Strings returned through char** are heap-allocated and must be released
 * with cpq_string_free().
 */
#ifndef CPQ_H
#define CPQ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cpq_config cpq_config;
typedef struct cpq_report cpq_report;

typedef enum {
    CPQ_OK = 0,
    CPQ_ERR_INVALID_ARGUMENT = 1,
    CPQ_ERR_CONFIG = 2,
    CPQ_ERR_DEGENERATE = 3,
    CPQ_ERR_SINGULAR = 4,
    CPQ_ERR_BUDGET = 5,
    CPQ_ERR_INTERNAL = 6
} cpq_status;

const char* cpq_version(void);
const char* cpq_status_name(cpq_status status);

/* Message describing the most recent failure on this thread. */
const char* cpq_last_error(void);

/* ----- configuration ----- */

cpq_config* cpq_config_new(void);
void cpq_config_free(cpq_config* cfg);

/* Keys: n, root_exponent, sites, alpha, seed, kappa0, kappa1, modulus_k,
 * flip_c0, flip_zs, tol_rel, tol_abs, suites, json_out, csv_out.
 * Complex values are "re" or "re,im"; suites is a comma-separated list. */
cpq_status cpq_config_set(cpq_config* cfg, const char* key, const char* value);

/* Merge settings from a JSON object (same keys; complex as [re, im]). */
cpq_status cpq_config_load_json(cpq_config* cfg, const char* json_text);

/* Apply CPQ_<KEY> environment overrides. */
cpq_status cpq_config_apply_env(cpq_config* cfg);

/* Validate without running anything. */
cpq_status cpq_config_validate(const cpq_config* cfg);

cpq_status cpq_config_json(const cpq_config* cfg, char** out);

/* ----- verification runs ----- */

cpq_status cpq_run(const cpq_config* cfg, cpq_report** out);

int cpq_report_check_count(const cpq_report* rep);
int cpq_report_pass_count(const cpq_report* rep);
int cpq_report_fail_count(const cpq_report* rep);
int cpq_report_all_passed(const cpq_report* rep);
cpq_status cpq_report_json(const cpq_report* rep, char** out);
cpq_status cpq_report_text(const cpq_report* rep, char** out);
void cpq_report_free(cpq_report* rep);

/* ----- weight-table export ----- */

cpq_status cpq_weights_json(const cpq_config* cfg, char** out);
cpq_status cpq_weights_csv(const cpq_config* cfg, char** out);

void cpq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CPQ_H */
