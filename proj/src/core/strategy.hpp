#pragma once

// The policy game between the two countries: utilities, the Nash equilibrium without
// certificates, the two agreement designs, deviation thresholds and numerical verifiers.

#include <optional>
#include <vector>

#include "equilibrium.hpp"
#include "model.hpp"

namespace tic {

/// u_A = -lambda_A * shortfall - D_A (hard target: -D_A or -inf); u_B = gamma_B * X_B - D_B.
PerCountry<double> utilities(const EquilibriumOutcome& outcome, const CostReport& costs,
                             const Preferences& prefs);

/// A solved policy profile.
struct PolicyOutcome {
    PolicyVector policy;
    TicScheme tic;
    EquilibriumOutcome outcome;
    CostReport costs;
};

PolicyOutcome evaluate_policy(const ModelParams& params, const PolicyVector& policy,
                              const TicScheme& tic);

struct NashResult {
    PolicyOutcome solved;
    PerCountry<double> utility;
    /// A's interior instruments were negative and got moved onto the boundary.
    bool corner = false;
};

/// Tariff/subsidy Nash equilibrium without certificates. Throws AssumptionViolated when the
/// closed form cannot be repaired into a non-negative profile that reaches the target.
NashResult nash_no_tic(const ModelParams& params, const Preferences& prefs);

enum class AgreementKind { Tic, NoTic };

const char* name(AgreementKind k) noexcept;

struct Agreement {
    AgreementKind kind = AgreementKind::Tic;
    double target_a = 0.0;  // X̄_A implemented at the competitive outcome
    double eta_a = 1.0;     // (2 - X̄_A) / X̄_A
    double phi_a = 1.0;     // 1 / eta_a
    double rate = 0.0;      // alpha_A * chi̅_A: certificate price, or the common tariff/subsidy
    PolicyVector policy;
    TicScheme tic;
};

struct AgreementResult {
    Agreement agreement;
    PolicyOutcome solved;
};

/// Certificate design with eta_A = (2 - X̄_A)/X̄_A and phi_A * eta_A = 1, no direct instruments.
AgreementResult tic_agreement(const ModelParams& params, double target_a);

/// Same certificate design for an explicitly chosen export credit factor (phi_A = 1/eta_A).
AgreementResult tic_agreement_for_eta(const ModelParams& params, double eta_a);

/// e_A = tau_A = alpha_A * chi̅_A, everything else zero. Checked against the TIC outcome.
AgreementResult no_tic_agreement(const ModelParams& params, double target_a);

struct WelfareComparison {
    PerCountry<double> agreement;
    PerCountry<double> nash;
    bool pareto_improving = false;
};

WelfareComparison compare_with_nash(const ModelParams& params, const Preferences& prefs,
                                    const AgreementResult& agreement);

/// gamma_B above which B raises its export subsidy under the TIC agreement (+inf at eta_A = 1).
double deviation_threshold_tic(const ModelParams& params, double eta_a);

struct NoTicThreshold {
    double gamma = 0.0;
    double ratio = 0.0;  // TIC threshold over this one
};

NoTicThreshold deviation_threshold_no_tic(const ModelParams& params, double eta_a);

/// gamma_B above which B erects a non-tariff barrier under the No-TIC agreement.
double ntb_threshold_no_tic(const ModelParams& params, double eta_a);

enum class Instrument { Tariff, ExportSubsidy, ProductionSubsidy, Barrier };

/// One-sided forward difference of country c's utility in one of its own instruments.
double utility_slope(const ModelParams& params, const PolicyVector& policy, const TicScheme& tic,
                     const Preferences& prefs, Country c, Instrument instrument, double step);

struct NtbReport {
    AgreementKind kind = AgreementKind::Tic;
    PerCountry<double> slope;  // du_i/dbeta_i at beta = 0
    double threshold = 0.0;    // +inf under the TIC agreement
    bool deviation_incentive = false;
};

NtbReport ntb_analysis(const ModelParams& params, const AgreementResult& agreement,
                       const Preferences& prefs);

enum class ResponseSpace {
    TariffsAndSubsidies,  // any tau, e >= 0
    SubsidiesOnly,        // tariff stays at its current level; e, s >= 0 (s folded in)
};

struct SearchConfig {
    double upper = 2.0;          // grid spans [0, upper * delta]
    double step = 1.0 / 200.0;   // coarse step, in units of delta
    int refine_rounds = 2;
    double refine_factor = 10.0;
    ResponseSpace space = ResponseSpace::TariffsAndSubsidies;
};

struct BestResponse {
    CountryPolicy instruments;  // production subsidy folded into tau and e
    double utility = 0.0;
    double final_step = 0.0;    // grid spacing of the last refinement round
    long evaluations = 0;
};

/// Grid search for country c's utility-maximising (tau, e), opponent fixed.
BestResponse best_response(Country c, const PolicyVector& current, const ModelParams& params,
                           const TicScheme& tic, const Preferences& prefs,
                           const SearchConfig& config = {});

struct SweepPoint {
    double e_b = 0.0;
    PolicyOutcome solved;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double production_floor = 0.0;  // 1/eta_A
    double min_production = 0.0;
    bool floor_holds = true;
    bool cost_monotone = true;      // D_A non-increasing in e_B
};

/// Solves the agreement with B's export subsidy set to e_min, e_min + step, ..., e_max.
SweepResult adversarial_sweep(const ModelParams& params, const AgreementResult& agreement,
                              double e_min, double e_max, double step, double s_b = 0.0);

}  // namespace tic
