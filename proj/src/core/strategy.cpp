#include "strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace tic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_target(const ModelParams& params, double target_a) {
    const double x0 = params.free_trade_production(Country::A);
    if (!(target_a > x0 && target_a < 1.0))
        throw ValidationError({"prefs.X_bar_A: target must lie strictly between X°_A and 1"});
}

void check(bool ok, const char* what) {
    if (!ok) throw IdentityViolated(what);
}

AgreementResult build_tic_agreement(const ModelParams& params, double target_a, double eta_a) {
    AgreementResult r;
    auto& a = r.agreement;
    a.kind = AgreementKind::Tic;
    a.target_a = target_a;
    a.eta_a = eta_a;
    a.phi_a = 1.0 / eta_a;
    const double x0 = params.free_trade_production(Country::A);
    a.rate = params.alpha_a * (target_a - x0) / x0;
    a.tic[Country::A] = {true, a.eta_a, a.phi_a};
    r.solved = evaluate_policy(params, a.policy, a.tic);

    const auto& o = r.solved.outcome;
    check(o.regime[Country::A] == Regime::Binding, "agreement certificate market does not bind");
    check(std::abs(o.x[Country::A] - target_a) <= kEps, "agreement misses the production target");
    check(std::abs(o.pi[Country::A] - a.rate) <= kEps, "agreement certificate price is off");
    check(std::abs(o.rates.tau[Country::A] - o.rates.e[Country::A]) <= kEps,
          "effective tariff and subsidy differ under the agreement");
    check(r.solved.costs.conditional_excess <= kEps, "agreement is not conditionally efficient");
    return r;
}

}  // namespace

const char* name(AgreementKind k) noexcept { return k == AgreementKind::Tic ? "tic" : "no-tic"; }

PerCountry<double> utilities(const EquilibriumOutcome& outcome, const CostReport& costs,
                             const Preferences& prefs) {
    PerCountry<double> u;
    const double shortfall = prefs.target_a - outcome.x[Country::A];
    if (prefs.hard_target())
        u[Country::A] = shortfall <= kEps ? -costs.direct[Country::A] : -kInf;
    else
        u[Country::A] = -*prefs.lambda_a * std::max(shortfall, 0.0) - costs.direct[Country::A];
    u[Country::B] = prefs.gamma_b * outcome.x[Country::B] - costs.direct[Country::B];
    return u;
}

PolicyOutcome evaluate_policy(const ModelParams& params, const PolicyVector& policy,
                              const TicScheme& tic) {
    PolicyOutcome r{policy, tic, solve_equilibrium(params, policy, tic), {}};
    r.costs = direct_costs(params, r.outcome, policy, tic);
    return r;
}

NashResult nash_no_tic(const ModelParams& params, const Preferences& prefs) {
    require_valid(validate_preferences(params, prefs));

    const double gamma = prefs.gamma_b;
    const double target = prefs.target_a;

    // B: tau_B = gamma_B, e_B = 0. A: cheapest split of tau_A + e_A = K_A.
    PolicyVector p;
    p[Country::B].tau = gamma;
    p[Country::B].e = 0.0;
    const double k_a = gamma + params.delta * target - 2.0 * params.alpha_a;
    if (k_a < 0.0) throw AssumptionViolated("target needs a negative instrument sum");
    double e_a = (k_a + gamma - params.alpha_a) / 3.0;
    double tau_a = k_a - e_a;

    NashResult r;
    if (e_a < 0.0) {
        e_a = 0.0;
        tau_a = k_a;
        r.corner = true;
    } else if (tau_a < 0.0) {
        tau_a = 0.0;
        e_a = k_a;
        r.corner = true;
    }
    p[Country::A].tau = tau_a;
    p[Country::A].e = e_a;

    if (tau_a + gamma - params.alpha_b > 0.0)
        throw AssumptionViolated("B would add an export subsidy; gamma_B too large");

    r.solved = evaluate_policy(params, p, TicScheme{});
    const auto& o = r.solved.outcome;
    if (!o.interior || std::abs(o.x[Country::A] - target) > kEps)
        throw AssumptionViolated("Nash profile is not interior");
    check(r.solved.costs.conditional_excess > 0.0, "Nash outcome is conditionally efficient");
    r.utility = utilities(o, r.solved.costs, prefs);
    return r;
}

AgreementResult tic_agreement(const ModelParams& params, double target_a) {
    require_target(params, target_a);
    return build_tic_agreement(params, target_a, (2.0 - target_a) / target_a);
}

AgreementResult tic_agreement_for_eta(const ModelParams& params, double eta_a) {
    if (!(eta_a > 0.0)) throw InvalidArgument("eta_A must be positive");
    const double target = 2.0 / (1.0 + eta_a);
    require_target(params, target);
    return build_tic_agreement(params, target, eta_a);
}

AgreementResult no_tic_agreement(const ModelParams& params, double target_a) {
    const AgreementResult reference = tic_agreement(params, target_a);

    AgreementResult r;
    auto& a = r.agreement;
    a = reference.agreement;
    a.kind = AgreementKind::NoTic;
    a.tic = TicScheme{};
    a.policy = PolicyVector{};
    a.policy[Country::A].tau = a.rate;
    a.policy[Country::A].e = a.rate;
    r.solved = evaluate_policy(params, a.policy, a.tic);

    const auto& o = r.solved.outcome;
    const auto& t = reference.solved.outcome;
    for (Country k : kCountries) {
        check(std::abs(o.q_dom[k] - t.q_dom[k]) <= kEps, "No-TIC quantities differ from TIC");
        check(std::abs(o.q_exp[k] - t.q_exp[k]) <= kEps, "No-TIC quantities differ from TIC");
        check(std::abs(r.solved.costs.excess[k] - reference.solved.costs.excess[k]) <= kEps,
              "No-TIC costs differ from TIC");
    }
    return r;
}

WelfareComparison compare_with_nash(const ModelParams& params, const Preferences& prefs,
                                    const AgreementResult& agreement) {
    const NashResult nash = nash_no_tic(params, prefs);
    WelfareComparison w;
    w.agreement = utilities(agreement.solved.outcome, agreement.solved.costs, prefs);
    w.nash = nash.utility;
    w.pareto_improving = w.agreement[Country::A] > w.nash[Country::A] &&
                         w.agreement[Country::B] > w.nash[Country::B];
    return w;
}

double deviation_threshold_tic(const ModelParams& params, double eta_a) {
    if (!(eta_a >= 1.0)) throw InvalidArgument("TIC threshold needs eta_A >= 1");
    if (eta_a == 1.0) return kInf;
    return params.delta * (eta_a * eta_a + eta_a - 1.0) / (eta_a * eta_a - 1.0);
}

NoTicThreshold deviation_threshold_no_tic(const ModelParams& params, double eta_a) {
    if (!(eta_a >= 1.0)) throw InvalidArgument("No-TIC threshold needs eta_A >= 1");
    NoTicThreshold t;
    t.gamma = 0.5 * params.delta * eta_a / (1.0 + eta_a);
    t.ratio = eta_a == 1.0 ? kInf : 2.0 * (eta_a * eta_a + eta_a - 1.0) / (eta_a * (eta_a - 1.0));
    check(t.ratio > 2.0, "threshold ratio must exceed 2");
    return t;
}

double ntb_threshold_no_tic(const ModelParams& params, double eta_a) {
    if (!(eta_a > 0.0)) throw InvalidArgument("eta_A must be positive");
    return params.delta / (1.0 + eta_a);
}

double utility_slope(const ModelParams& params, const PolicyVector& policy, const TicScheme& tic,
                     const Preferences& prefs, Country c, Instrument instrument, double step) {
    auto u = [&](const PolicyVector& p) {
        const PolicyOutcome s = evaluate_policy(params, p, tic);
        return utilities(s.outcome, s.costs, prefs)[c];
    };
    PolicyVector moved = policy;
    auto& own = moved[c];
    switch (instrument) {
        case Instrument::Tariff: own.tau += step; break;
        case Instrument::ExportSubsidy: own.e += step; break;
        case Instrument::ProductionSubsidy: own.s += step; break;
        case Instrument::Barrier: own.beta += step; break;
    }
    return (u(moved) - u(policy)) / step;
}

NtbReport ntb_analysis(const ModelParams& params, const AgreementResult& agreement,
                       const Preferences& prefs) {
    const auto& a = agreement.agreement;
    NtbReport r;
    r.kind = a.kind;
    const double step = params.delta * 1e-4;
    for (Country k : kCountries)
        r.slope[k] = utility_slope(params, a.policy, a.tic, prefs, k, Instrument::Barrier, step);
    if (a.kind == AgreementKind::Tic) {
        r.threshold = kInf;
        r.deviation_incentive = r.slope[Country::A] > 0.0 || r.slope[Country::B] > 0.0;
    } else {
        r.threshold = ntb_threshold_no_tic(params, a.eta_a);
        r.deviation_incentive = prefs.gamma_b > r.threshold;
    }
    return r;
}

BestResponse best_response(Country c, const PolicyVector& current, const ModelParams& params,
                           const TicScheme& tic, const Preferences& prefs,
                           const SearchConfig& config) {
    const bool subsidies_only = config.space == ResponseSpace::SubsidiesOnly;
    const double tau_floor = subsidies_only ? current[c].tau : 0.0;
    const double span = config.upper * params.delta;

    BestResponse best;
    best.utility = -kInf;
    bool have = false;

    auto admissible = [&](double tau, double e) {
        if (tau < tau_floor - 1e-15 || e < -1e-15) return false;
        if (tau > tau_floor + span + 1e-12 || e > span + 1e-12) return false;
        // A production subsidy raises tau and e together, so e never falls below tau - tau_floor.
        return !subsidies_only || e >= tau - tau_floor - 1e-15;
    };
    auto consider = [&](double tau, double e) {
        if (!admissible(tau, e)) return;
        PolicyVector p = current;
        p[c].tau = tau;
        p[c].e = e;
        p[c].s = 0.0;
        const PolicyOutcome s = evaluate_policy(params, p, tic);
        const double u = utilities(s.outcome, s.costs, prefs)[c];
        ++best.evaluations;
        if (!have || u > best.utility) {
            have = true;
            best.utility = u;
            best.instruments = p[c];
        }
    };

    double step = config.step * params.delta;
    const long n = static_cast<long>(std::floor(span / step + 1e-9));
    for (long a = 0; a <= n; ++a)
        for (long b = 0; b <= n; ++b) consider(tau_floor + a * step, b * step);

    for (int round = 0; round < config.refine_rounds; ++round) {
        const double centre_tau = best.instruments.tau;
        const double centre_e = best.instruments.e;
        const long half = static_cast<long>(std::llround(config.refine_factor));
        const double fine = step / config.refine_factor;
        for (long a = -half; a <= half; ++a)
            for (long b = -half; b <= half; ++b)
                consider(std::max(tau_floor, centre_tau + a * fine), std::max(0.0, centre_e + b * fine));
        step = fine;
    }
    best.final_step = step;
    return best;
}

SweepResult adversarial_sweep(const ModelParams& params, const AgreementResult& agreement,
                              double e_min, double e_max, double step, double s_b) {
    if (!(step > 0.0) || !(e_max >= e_min) || e_min < 0.0)
        throw InvalidArgument("sweep needs 0 <= e_min <= e_max and step > 0");
    const auto& a = agreement.agreement;
    SweepResult r;
    r.production_floor = tic_production_bounds(a.eta_a).global;
    r.min_production = kInf;

    const long n = static_cast<long>(std::floor((e_max - e_min) / step + 1e-9));
    r.points.reserve(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) {
        PolicyVector p = a.policy;
        p[Country::B].e = e_min + static_cast<double>(k) * step;
        p[Country::B].s = s_b;
        SweepPoint pt{p[Country::B].e, evaluate_policy(params, p, a.tic)};
        const double x_a = pt.solved.outcome.x[Country::A];
        r.min_production = std::min(r.min_production, x_a);
        if (x_a < r.production_floor - kEps) r.floor_holds = false;
        if (!r.points.empty() &&
            pt.solved.costs.direct[Country::A] > r.points.back().solved.costs.direct[Country::A] + kEps)
            r.cost_monotone = false;
        r.points.push_back(std::move(pt));
    }
    return r;
}

}  // namespace tic
