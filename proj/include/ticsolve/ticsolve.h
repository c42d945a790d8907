#ifndef TICSOLVE_H
#define TICSOLVE_H

/* C interface to the two-country import-certificate solver.
 *
 * Every call returns a tic_status. On failure, tic_last_error() holds a message for the
 * calling thread until its next failing call. Handles are opaque and owned by the caller.
 * Index 0 of every two-element array is country A, index 1 is country B. */

#include <stddef.h>

#if defined(_WIN32)
#define TIC_API __declspec(dllexport)
#else
#define TIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tic_status {
    TIC_OK = 0,
    TIC_ERR_VALIDATION = 1,
    TIC_ERR_SOLVER = 2,
    TIC_ERR_IO = 3,
    TIC_ERR_ASSUMPTION = 4,
    TIC_ERR_NONCONVERGENCE = 5,
    TIC_ERR_AUTARKY_ONLY = 6,
    TIC_ERR_INVALID_ARGUMENT = 7
} tic_status;

typedef enum tic_regime {
    TIC_REGIME_NONE = 0, /* country runs no certificate scheme */
    TIC_REGIME_BINDING = 1,
    TIC_REGIME_NONBINDING = 2,
    TIC_REGIME_AUTARKY = 3
} tic_regime;

typedef enum tic_agreement_kind { TIC_AGREEMENT_TIC = 0, TIC_AGREEMENT_NO_TIC = 1 } tic_agreement_kind;

typedef struct tic_scenario tic_scenario;
typedef struct tic_sweep tic_sweep;

TIC_API const char* tic_last_error(void);
TIC_API const char* tic_status_name(tic_status status);
TIC_API const char* tic_regime_name(tic_regime regime);

/* Scenarios. Parsing checks syntax and key names; model validation runs in each solve. */
TIC_API tic_status tic_scenario_load(const char* path, tic_scenario** out);
TIC_API tic_status tic_scenario_parse(const char* text, tic_scenario** out);
TIC_API void tic_scenario_free(tic_scenario* scenario);

typedef struct tic_scenario_info {
    double alpha[2];
    double delta;
    double v;
    double tau[2], e[2], s[2], beta[2];
    int tic_enabled[2];
    double eta[2], phi[2];
    int has_prefs;
    double target_a;
    int hard_target;
    double lambda_a;
    double gamma_b;
    double sweep_min, sweep_max, sweep_step;
    size_t oracle_size; /* 0 when the file asks for no oracle */
    size_t firm_count;  /* entries of oligopoly.N */
} tic_scenario_info;

TIC_API tic_status tic_scenario_get_info(const tic_scenario* scenario, tic_scenario_info* out);
TIC_API tic_status tic_scenario_firms(const tic_scenario* scenario, int* out, size_t capacity);
/* Validation warnings for the scenario's model, one per call; NULL past the end. */
TIC_API size_t tic_scenario_warning_count(const tic_scenario* scenario);
TIC_API const char* tic_scenario_warning(const tic_scenario* scenario, size_t index);

typedef struct tic_equilibrium {
    double q_dom[2];
    double q_exp[2];
    double x[2];
    double pi[2];
    tic_regime regime[2];
    double tau_eff[2];
    double e_eff[2];
    int interior;
    int consistent_count; /* distinct consistent regime hypotheses */
    double free_trade_cost;
    double direct[2];
    double excess[2];
    double excess_total;
    double conditional_excess;
    double max_consumer_price;
    int demand_covered; /* max_consumer_price <= v */
} tic_equilibrium;

TIC_API tic_status tic_solve(const tic_scenario* scenario, tic_equilibrium* out);

typedef struct tic_oracle_report {
    size_t size;
    double q_dom[2], q_exp[2], pi[2], direct[2];
    /* oracle minus closed form */
    double dev_q_dom[2], dev_q_exp[2], dev_pi[2], dev_direct[2];
    double max_quantity_dev, max_cost_dev, max_price_dev;
    size_t ties;
} tic_oracle_report;

/* Discretized-market check of tic_solve with `size` midpoint markets per country. */
TIC_API tic_status tic_oracle_compare(const tic_scenario* scenario, size_t size,
                                      tic_oracle_report* out);

typedef struct tic_nash {
    double tau[2], e[2];
    double x[2];
    double direct[2];
    double utility[2];
    double conditional_excess;
    int corner;
} tic_nash;

/* Needs prefs.X_bar_A and prefs.gamma_B. */
TIC_API tic_status tic_nash_no_tic(const tic_scenario* scenario, tic_nash* out);

typedef struct tic_agreement_report {
    tic_agreement_kind kind;
    double target_a, eta_a, phi_a, rate;
    double tau[2], e[2];
    tic_equilibrium eq;
    int has_welfare; /* utilities filled when prefs are present and the Nash benchmark exists */
    double utility[2];
    double nash_utility[2];
    int pareto_improving;
} tic_agreement_report;

/* Target from prefs.X_bar_A, else from tic.A.eta. */
TIC_API tic_status tic_agreement(const tic_scenario* scenario, tic_agreement_kind kind,
                                 tic_agreement_report* out);

typedef struct tic_thresholds {
    double eta_a;
    double gamma_tic; /* +inf at eta_A = 1 */
    double gamma_no_tic;
    double ratio;
    double ntb_no_tic;
    int has_slopes;
    double ntb_slope_tic[2]; /* du_i/dbeta_i at beta = 0 under the TIC agreement */
} tic_thresholds;

/* eta_A from tic.A.eta when enabled, else from prefs.X_bar_A. */
TIC_API tic_status tic_compute_thresholds(const tic_scenario* scenario, tic_thresholds* out);

typedef struct tic_oligopoly_row {
    int firms;
    double q_exp, q_dom, pi, per_firm;
    double conditional_excess;
    double gap;
    double iterated_q_exp;
    int iterations;
} tic_oligopoly_row;

TIC_API tic_status tic_oligopoly(const tic_scenario* scenario, int firms, double tol,
                                 tic_oligopoly_row* out);

typedef struct tic_sweep_row {
    double e_b;
    double q_dom[2], q_exp[2], x[2];
    double pi_a;
    tic_regime regime_a;
    double direct[2];
    double min_x_a; /* running minimum over rows 0..i */
    double floor;   /* 1/eta_A */
} tic_sweep_row;

typedef struct tic_sweep_summary {
    size_t rows;
    double floor;
    double min_x_a;
    int floor_holds;
    int cost_monotone;
} tic_sweep_summary;

/* Varies B's export subsidy over the scenario's sweep range, rest of the scenario fixed.
 * Needs tic.A.enabled. */
TIC_API tic_status tic_sweep_run(const tic_scenario* scenario, tic_sweep** out);
TIC_API tic_status tic_sweep_get_summary(const tic_sweep* sweep, tic_sweep_summary* out);
TIC_API tic_status tic_sweep_get_row(const tic_sweep* sweep, size_t index, tic_sweep_row* out);
TIC_API void tic_sweep_free(tic_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif
