#include "oligopoly.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace tic {

namespace {

// Denominator of a firm's first-order condition, in units of delta.
double foc_scale(double eta, double n) { return (eta + n) + eta * (1.0 - eta / n); }

}  // namespace

ValidationReport validate_oligopoly(const OligopolyConfig& config) {
    ValidationReport r = validate_params(config.params, PolicyVector{}, TicScheme{});
    const auto& t = config.tic_a;
    if (config.firms < 1) r.issues.push_back({Severity::Violation, "oligopoly.N", "need at least one firm"});
    if (!t.enabled)
        r.issues.push_back({Severity::Violation, "tic.A.enabled", "oligopoly needs A's certificates"});
    if (!(t.eta > 0.0)) r.issues.push_back({Severity::Violation, "tic.A.eta", "eta must be positive"});
    else if (std::abs(t.phi * t.eta - 1.0) > 1e-12)
        r.issues.push_back({Severity::Violation, "tic.A.phi", "oligopoly needs phi_A * eta_A = 1"});
    return r;
}

OligopolyEquilibrium oligopoly_equilibrium(const OligopolyConfig& config) {
    require_valid(validate_oligopoly(config));
    const double eta = config.tic_a.eta;
    const double n = config.firms;
    const double delta = config.params.delta;

    OligopolyEquilibrium out;
    if (n > eta) out.q_exp = (n - eta) / (n * (eta + 1.0) - eta * (eta - 1.0));
    out.q_dom = 1.0 - eta * out.q_exp;
    out.pi = delta * out.q_dom - config.params.alpha_a;
    out.per_firm = out.q_exp / n;
    return out;
}

OligopolyIteration oligopoly_best_response_iter(const OligopolyConfig& config,
                                                std::vector<double> init, int max_iter,
                                                double tol, double damping) {
    require_valid(validate_oligopoly(config));
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("damping must lie in (0,1]");
    const std::size_t firms = static_cast<std::size_t>(config.firms);
    if (init.size() == 1 && firms > 1) init.assign(firms, init.front());
    if (init.size() != firms) throw InvalidArgument("init needs one quantity per firm");

    const double eta = config.tic_a.eta;
    const double n = config.firms;
    const double share = 1.0 - eta / n;
    const double scale = foc_scale(eta, n);

    OligopolyIteration out;
    out.curvature = -config.params.delta * scale;
    if (!(out.curvature < 0.0)) throw AssumptionViolated("firm payoff is not concave");

    std::vector<double> q = std::move(init);
    std::vector<double> next(firms);
    for (int it = 1; it <= max_iter; ++it) {
        double total = 0.0;
        for (double v : q) total += v;
        double change = 0.0;
        for (std::size_t k = 0; k < firms; ++k) {
            const double rest = total - q[k];
            const double br = std::max(0.0, share * (1.0 - eta * rest) / scale);
            next[k] = (1.0 - damping) * q[k] + damping * br;
            change = std::max(change, std::abs(next[k] - q[k]));
        }
        q.swap(next);
        if (change < tol) {
            out.iterations = it;
            out.q = q;
            for (double v : q) out.q_exp += v;
            return out;
        }
    }
    throw NonConvergence("best-response iteration did not converge", q);
}

DistortionReport oligopoly_distortion_report(const OligopolyConfig& config) {
    const OligopolyEquilibrium eq = oligopoly_equilibrium(config);
    DistortionReport r;
    const double gap = eq.q_dom - eq.q_exp;
    r.conditional_excess = 0.25 * config.params.delta * gap * gap;
    r.competitive_exports = 1.0 / (1.0 + config.tic_a.eta);
    r.gap = (r.competitive_exports - eq.q_exp) / r.competitive_exports;
    return r;
}

}  // namespace tic
