#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace tic {

const char* name(Country c) noexcept { return c == Country::A ? "A" : "B"; }

ModelParams ModelParams::make(double alpha_a, double alpha_b, double v) {
    return ModelParams{alpha_a, alpha_b, alpha_a + alpha_b, v};
}

double PolicyVector::magnitude() const noexcept {
    double sum = 0.0;
    for (Country k : kCountries) {
        const auto& p = c[k];
        sum += std::abs(p.tau) + std::abs(p.e) + std::abs(p.s) + std::abs(p.beta);
    }
    return sum;
}

bool ValidationReport::ok() const noexcept {
    for (const auto& i : issues)
        if (i.severity == Severity::Violation) return false;
    return true;
}

namespace {

std::vector<std::string> collect(const std::vector<Issue>& issues, Severity sev) {
    std::vector<std::string> out;
    for (const auto& i : issues)
        if (i.severity == sev) out.push_back(i.field + ": " + i.message);
    return out;
}

struct Reporter {
    std::vector<Issue>& out;

    void violation(std::string field, std::string msg) {
        out.push_back({Severity::Violation, std::move(field), std::move(msg)});
    }
    void warning(std::string field, std::string msg) {
        out.push_back({Severity::Warning, std::move(field), std::move(msg)});
    }
    void non_negative(Country k, const char* key, const char* label, double x) {
        if (std::isfinite(x) && x >= 0.0) return;
        std::string field = std::string("policy.") + name(k) + "." + key;
        if (!std::isfinite(x))
            violation(std::move(field), "must be a finite number");
        else
            violation(std::move(field), std::string(label) + " must be non-negative");
    }
};

}  // namespace

std::vector<std::string> ValidationReport::violations() const {
    return collect(issues, Severity::Violation);
}

std::vector<std::string> ValidationReport::warnings() const {
    return collect(issues, Severity::Warning);
}

ValidationReport validate_params(const ModelParams& params, const PolicyVector& policy,
                                 const TicScheme& tic) {
    ValidationReport report;
    Reporter r{report.issues};

    if (!(params.alpha_a > 0.0) || !std::isfinite(params.alpha_a))
        r.violation("params.alpha_A", "alpha_A must be positive");
    if (!(params.alpha_b > 0.0) || !std::isfinite(params.alpha_b))
        r.violation("params.alpha_B", "alpha_B must be positive");
    const double sum = params.alpha_a + params.alpha_b;
    if (!(std::abs(params.delta - sum) <= 1e-12 * std::max(1.0, std::abs(sum))))
        r.violation("params.delta", "delta must equal alpha_A + alpha_B");

    for (Country k : kCountries) {
        const auto& p = policy[k];
        r.non_negative(k, "tau", "tariff", p.tau);
        r.non_negative(k, "e", "export subsidy", p.e);
        r.non_negative(k, "s", "production subsidy", p.s);
        r.non_negative(k, "beta", "non-tariff barrier", p.beta);

        const auto& t = tic[k];
        if (t.enabled) {
            auto field = [k](const char* key) { return std::string("tic.") + name(k) + "." + key; };
            if (!(t.eta > 0.0) || !std::isfinite(t.eta))
                r.violation(field("eta"), "eta must be positive");
            if (!(t.phi >= 0.0 && t.phi <= 1.0))
                r.violation(field("phi"), "phi must lie in [0,1]");
        }
    }

    if (std::isnan(params.v)) {
        r.violation("params.v", "v must be a number");
    } else if (report.ok() && std::isfinite(params.v)) {
        // Highest technological cost is c0 + alpha_B (A's cost at m=1); instruments can raise
        // consumer prices by at most their total magnitude.
        const double ceiling = kBaselineCost + std::max(params.alpha_a, params.alpha_b) + policy.magnitude();
        if (params.v <= ceiling)
            r.warning("params.v", "v may be below the highest consumer price");
    }
    return report;
}

ValidationReport validate_preferences(const ModelParams& params, const Preferences& prefs) {
    ValidationReport report;
    Reporter r{report.issues};

    const double x0 = params.free_trade_production(Country::A);
    if (!(prefs.target_a > x0 && prefs.target_a < 1.0))
        r.violation("prefs.X_bar_A", "target must lie strictly between X°_A and 1");
    if (prefs.lambda_a && !(*prefs.lambda_a >= 0.0 && std::isfinite(*prefs.lambda_a)))
        r.violation("prefs.lambda_A", "lambda_A must be finite and non-negative, or hard");
    if (!(prefs.gamma_b > 0.0) || !std::isfinite(prefs.gamma_b))
        r.violation("prefs.gamma_B", "gamma_B must be positive");
    else if (prefs.gamma_b >= params.delta / 4.0)
        r.warning("prefs.gamma_B", "gamma_B >= delta/4; closed-form strategic results may not apply");
    if (params.alpha_a > params.alpha_b)
        r.warning("params.alpha_A", "alpha_A > alpha_B: A is not a free-trade net importer");
    return report;
}

void require_valid(const ValidationReport& report) {
    if (!report.ok()) throw ValidationError(report.violations());
}

EffectiveRates effective_rates(const PolicyVector& policy, const TicScheme& tic,
                               PerCountry<double> pi) {
    EffectiveRates rates;
    for (Country k : kCountries) {
        if (!(pi[k] >= 0.0)) throw InvalidArgument("certificate price must be non-negative");
        const auto& t = tic[k];
        const double p = t.enabled ? pi[k] : 0.0;
        rates.tau[k] = policy[k].tau + p + policy[k].beta;
        rates.e[k] = policy[k].e + (t.enabled ? t.phi * t.eta * p : 0.0);
    }
    return rates;
}

NormalizedInstruments normalize_subsidies(const PolicyVector& policy, const EffectiveRates& rates) {
    NormalizedInstruments out;
    for (Country k : kCountries) {
        out.rates.tau[k] = rates.tau[k] + policy[k].s;
        out.rates.e[k] = rates.e[k] + policy[k].s;
        out.s[k] = 0.0;
    }
    return out;
}

}  // namespace tic
