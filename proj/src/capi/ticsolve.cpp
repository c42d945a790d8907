#include "ticsolve/ticsolve.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "equilibrium.hpp"
#include "errors.hpp"
#include "oligopoly.hpp"
#include "oracle.hpp"
#include "scenario.hpp"
#include "strategy.hpp"

struct tic_scenario {
    tic::Scenario scenario;
    std::vector<std::string> warnings;
};

struct tic_sweep {
    tic::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

constexpr double kInf = std::numeric_limits<double>::infinity();

tic_status fail(tic_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs f, translating core exceptions into status codes.
template <class F>
tic_status guarded(F&& f) {
    try {
        f();
        return TIC_OK;
    } catch (const tic::ValidationError& e) {
        return fail(TIC_ERR_VALIDATION, e.what());
    } catch (const tic::AssumptionViolated& e) {
        return fail(TIC_ERR_ASSUMPTION, e.what());
    } catch (const tic::NonConvergence& e) {
        return fail(TIC_ERR_NONCONVERGENCE, e.what());
    } catch (const tic::AutarkyOnly& e) {
        return fail(TIC_ERR_AUTARKY_ONLY, e.what());
    } catch (const tic::InvalidArgument& e) {
        return fail(TIC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const tic::Error& e) {
        return fail(TIC_ERR_SOLVER, e.what());
    } catch (const std::exception& e) {
        return fail(TIC_ERR_SOLVER, e.what());
    } catch (...) {
        return fail(TIC_ERR_SOLVER, "unknown error");
    }
}

tic_regime to_c(tic::Regime r) {
    switch (r) {
        case tic::Regime::NoTic: return TIC_REGIME_NONE;
        case tic::Regime::Binding: return TIC_REGIME_BINDING;
        case tic::Regime::NonBinding: return TIC_REGIME_NONBINDING;
        case tic::Regime::Autarky: return TIC_REGIME_AUTARKY;
    }
    return TIC_REGIME_NONE;
}

constexpr tic::Country A = tic::Country::A;
constexpr tic::Country B = tic::Country::B;

void fill(const tic::ModelParams& params, const tic::PolicyOutcome& s, tic_equilibrium* out) {
    const auto& o = s.outcome;
    for (tic::Country c : tic::kCountries) {
        const auto k = tic::idx(c);
        out->q_dom[k] = o.q_dom[c];
        out->q_exp[k] = o.q_exp[c];
        out->x[k] = o.x[c];
        out->pi[k] = o.pi[c];
        out->regime[k] = to_c(o.regime[c]);
        out->tau_eff[k] = o.rates.tau[c];
        out->e_eff[k] = o.rates.e[c];
        out->direct[k] = s.costs.direct[c];
        out->excess[k] = s.costs.excess[c];
    }
    out->interior = o.interior ? 1 : 0;
    out->consistent_count = o.consistent_count;
    out->free_trade_cost = tic::free_trade_direct_cost(params);
    out->excess_total = s.costs.excess_total;
    out->conditional_excess = s.costs.conditional_excess;
    out->max_consumer_price = tic::max_consumer_price(params, o, s.policy);
    out->demand_covered = out->max_consumer_price <= params.v ? 1 : 0;
}

const tic::Preferences& need_prefs(const tic::Scenario& sc) {
    if (!sc.prefs) throw tic::ValidationError({"prefs: scenario needs prefs.X_bar_A and prefs.gamma_B"});
    return *sc.prefs;
}

tic::AgreementResult build_agreement(const tic::Scenario& sc, tic_agreement_kind kind) {
    double target;
    if (sc.prefs)
        target = sc.prefs->target_a;
    else if (sc.tic[A].enabled)
        target = 2.0 / (1.0 + sc.tic[A].eta);
    else
        throw tic::ValidationError({"prefs.X_bar_A: agreement needs a target or tic.A.eta"});
    tic::require_valid(tic::validate_params(sc.params, tic::PolicyVector{}, tic::TicScheme{}));
    if (kind == TIC_AGREEMENT_NO_TIC) return tic::no_tic_agreement(sc.params, target);
    if (!sc.prefs) return tic::tic_agreement_for_eta(sc.params, sc.tic[A].eta);
    return tic::tic_agreement(sc.params, target);
}

bool null_out(const void* a, const void* b) {
    if (a && b) return false;
    g_last_error = "null argument";
    return true;
}

}  // namespace

extern "C" {

const char* tic_last_error(void) { return g_last_error.c_str(); }

const char* tic_status_name(tic_status status) {
    switch (status) {
        case TIC_OK: return "ok";
        case TIC_ERR_VALIDATION: return "validation";
        case TIC_ERR_SOLVER: return "solver";
        case TIC_ERR_IO: return "io";
        case TIC_ERR_ASSUMPTION: return "assumption";
        case TIC_ERR_NONCONVERGENCE: return "nonconvergence";
        case TIC_ERR_AUTARKY_ONLY: return "autarky-only";
        case TIC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    }
    return "unknown";
}

const char* tic_regime_name(tic_regime regime) {
    switch (regime) {
        case TIC_REGIME_NONE: return "none";
        case TIC_REGIME_BINDING: return "binding";
        case TIC_REGIME_NONBINDING: return "nonbinding";
        case TIC_REGIME_AUTARKY: return "autarky";
    }
    return "?";
}

static tic_status make_scenario(tic::Scenario sc, tic_scenario** out) {
    auto* h = new tic_scenario{std::move(sc), {}};
    const auto report = tic::validate_params(h->scenario.params, h->scenario.policy, h->scenario.tic);
    h->warnings = report.warnings();
    if (h->scenario.prefs && report.ok()) {
        const auto pr = tic::validate_preferences(h->scenario.params, *h->scenario.prefs);
        const auto w = pr.warnings();
        h->warnings.insert(h->warnings.end(), w.begin(), w.end());
    }
    *out = h;
    return TIC_OK;
}

tic_status tic_scenario_load(const char* path, tic_scenario** out) {
    if (null_out(path, out)) return TIC_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    tic::Scenario sc;
    try {
        sc = tic::load_scenario(path);
    } catch (const tic::InvalidArgument& e) {
        return fail(TIC_ERR_IO, e.what());
    } catch (const tic::ValidationError& e) {
        return fail(TIC_ERR_VALIDATION, e.what());
    }
    return guarded([&] { make_scenario(std::move(sc), out); });
}

tic_status tic_scenario_parse(const char* text, tic_scenario** out) {
    if (null_out(text, out)) return TIC_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] { make_scenario(tic::parse_scenario_text(text), out); });
}

void tic_scenario_free(tic_scenario* scenario) { delete scenario; }

tic_status tic_scenario_get_info(const tic_scenario* scenario, tic_scenario_info* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    const auto& sc = scenario->scenario;
    *out = tic_scenario_info{};
    for (tic::Country c : tic::kCountries) {
        const auto k = tic::idx(c);
        out->alpha[k] = sc.params.alpha(c);
        out->tau[k] = sc.policy[c].tau;
        out->e[k] = sc.policy[c].e;
        out->s[k] = sc.policy[c].s;
        out->beta[k] = sc.policy[c].beta;
        out->tic_enabled[k] = sc.tic[c].enabled ? 1 : 0;
        out->eta[k] = sc.tic[c].eta;
        out->phi[k] = sc.tic[c].phi;
    }
    out->delta = sc.params.delta;
    out->v = sc.params.v;
    out->has_prefs = sc.prefs ? 1 : 0;
    if (sc.prefs) {
        out->target_a = sc.prefs->target_a;
        out->hard_target = sc.prefs->hard_target() ? 1 : 0;
        out->lambda_a = sc.prefs->lambda_a.value_or(kInf);
        out->gamma_b = sc.prefs->gamma_b;
    }
    out->sweep_min = sc.sweep.min;
    out->sweep_max = sc.sweep.max;
    out->sweep_step = sc.sweep.step;
    out->oracle_size = sc.oracle_size;
    out->firm_count = sc.oligopoly_firms.size();
    return TIC_OK;
}

tic_status tic_scenario_firms(const tic_scenario* scenario, int* out, size_t capacity) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    const auto& firms = scenario->scenario.oligopoly_firms;
    if (capacity < firms.size()) return fail(TIC_ERR_INVALID_ARGUMENT, "buffer too small");
    std::copy(firms.begin(), firms.end(), out);
    return TIC_OK;
}

size_t tic_scenario_warning_count(const tic_scenario* scenario) {
    return scenario ? scenario->warnings.size() : 0;
}

const char* tic_scenario_warning(const tic_scenario* scenario, size_t index) {
    if (!scenario || index >= scenario->warnings.size()) return nullptr;
    return scenario->warnings[index].c_str();
}

tic_status tic_solve(const tic_scenario* scenario, tic_equilibrium* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        *out = tic_equilibrium{};
        fill(sc.params, tic::evaluate_policy(sc.params, sc.policy, sc.tic), out);
    });
}

tic_status tic_oracle_compare(const tic_scenario* scenario, size_t size, tic_oracle_report* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        *out = tic_oracle_report{};
        const auto solved = tic::evaluate_policy(sc.params, sc.policy, sc.tic);
        const tic::DiscretizedMarket market(sc.params, size);
        const auto clearing = tic::oracle_clear_certificates(market, sc.policy, sc.tic);
        const auto d = tic::oracle_costs(market, clearing.allocation, sc.policy, sc.tic, clearing.pi);
        out->size = size;
        out->ties = clearing.allocation.ties;
        for (tic::Country c : tic::kCountries) {
            const auto k = tic::idx(c);
            out->q_dom[k] = clearing.allocation.q_dom[c];
            out->q_exp[k] = clearing.allocation.q_exp[c];
            out->pi[k] = clearing.pi[c];
            out->direct[k] = d[c];
            out->dev_q_dom[k] = out->q_dom[k] - solved.outcome.q_dom[c];
            out->dev_q_exp[k] = out->q_exp[k] - solved.outcome.q_exp[c];
            out->dev_pi[k] = out->pi[k] - solved.outcome.pi[c];
            out->dev_direct[k] = out->direct[k] - solved.costs.direct[c];
            out->max_quantity_dev = std::max(
                {out->max_quantity_dev, std::abs(out->dev_q_dom[k]), std::abs(out->dev_q_exp[k])});
            out->max_cost_dev = std::max(out->max_cost_dev, std::abs(out->dev_direct[k]));
            out->max_price_dev = std::max(out->max_price_dev, std::abs(out->dev_pi[k]));
        }
    });
}

tic_status tic_nash_no_tic(const tic_scenario* scenario, tic_nash* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        const auto n = tic::nash_no_tic(sc.params, need_prefs(sc));
        *out = tic_nash{};
        for (tic::Country c : tic::kCountries) {
            const auto k = tic::idx(c);
            out->tau[k] = n.solved.policy[c].tau;
            out->e[k] = n.solved.policy[c].e;
            out->x[k] = n.solved.outcome.x[c];
            out->direct[k] = n.solved.costs.direct[c];
            out->utility[k] = n.utility[c];
        }
        out->conditional_excess = n.solved.costs.conditional_excess;
        out->corner = n.corner ? 1 : 0;
    });
}

tic_status tic_agreement(const tic_scenario* scenario, tic_agreement_kind kind,
                         tic_agreement_report* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        const auto r = build_agreement(sc, kind);
        const auto& a = r.agreement;
        *out = tic_agreement_report{};
        out->kind = kind;
        out->target_a = a.target_a;
        out->eta_a = a.eta_a;
        out->phi_a = a.phi_a;
        out->rate = a.rate;
        for (tic::Country c : tic::kCountries) {
            out->tau[tic::idx(c)] = a.policy[c].tau;
            out->e[tic::idx(c)] = a.policy[c].e;
        }
        fill(sc.params, r.solved, &out->eq);
        if (sc.prefs) {
            try {
                const auto w = tic::compare_with_nash(sc.params, *sc.prefs, r);
                out->has_welfare = 1;
                for (tic::Country c : tic::kCountries) {
                    out->utility[tic::idx(c)] = w.agreement[c];
                    out->nash_utility[tic::idx(c)] = w.nash[c];
                }
                out->pareto_improving = w.pareto_improving ? 1 : 0;
            } catch (const tic::AssumptionViolated&) {
                out->has_welfare = 0;
            }
        }
    });
}

tic_status tic_compute_thresholds(const tic_scenario* scenario, tic_thresholds* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        tic::require_valid(tic::validate_params(sc.params, tic::PolicyVector{}, tic::TicScheme{}));
        double eta;
        if (sc.tic[A].enabled)
            eta = sc.tic[A].eta;
        else if (sc.prefs)
            eta = (2.0 - sc.prefs->target_a) / sc.prefs->target_a;
        else
            throw tic::ValidationError({"tic.A.eta: thresholds need tic.A.eta or prefs.X_bar_A"});
        *out = tic_thresholds{};
        out->eta_a = eta;
        out->gamma_tic = tic::deviation_threshold_tic(sc.params, eta);
        const auto nt = tic::deviation_threshold_no_tic(sc.params, eta);
        out->gamma_no_tic = nt.gamma;
        out->ratio = nt.ratio;
        out->ntb_no_tic = tic::ntb_threshold_no_tic(sc.params, eta);
        if (sc.prefs && eta > 1.0) {
            try {
                const auto agreement = tic::tic_agreement_for_eta(sc.params, eta);
                const auto ntb = tic::ntb_analysis(sc.params, agreement, *sc.prefs);
                out->has_slopes = 1;
                out->ntb_slope_tic[0] = ntb.slope[A];
                out->ntb_slope_tic[1] = ntb.slope[B];
            } catch (const tic::ValidationError&) {
                out->has_slopes = 0;
            }
        }
    });
}

tic_status tic_oligopoly(const tic_scenario* scenario, int firms, double tol, tic_oligopoly_row* out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        tic::OligopolyConfig cfg{firms, sc.params, sc.tic[A]};
        const auto eq = tic::oligopoly_equilibrium(cfg);
        const auto dist = tic::oligopoly_distortion_report(cfg);
        const auto it = tic::oligopoly_best_response_iter(cfg, {0.0}, 100000, tol);
        *out = tic_oligopoly_row{};
        out->firms = firms;
        out->q_exp = eq.q_exp;
        out->q_dom = eq.q_dom;
        out->pi = eq.pi;
        out->per_firm = eq.per_firm;
        out->conditional_excess = dist.conditional_excess;
        out->gap = dist.gap;
        out->iterated_q_exp = it.q_exp;
        out->iterations = it.iterations;
    });
}

tic_status tic_sweep_run(const tic_scenario* scenario, tic_sweep** out) {
    if (null_out(scenario, out)) return TIC_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        const auto& sc = scenario->scenario;
        if (!sc.tic[A].enabled)
            throw tic::ValidationError({"tic.A.enabled: sweep needs A's certificate scheme"});
        tic::AgreementResult base;
        base.agreement.eta_a = sc.tic[A].eta;
        base.agreement.phi_a = sc.tic[A].phi;
        base.agreement.policy = sc.policy;
        base.agreement.tic = sc.tic;
        auto result = tic::adversarial_sweep(sc.params, base, sc.sweep.min, sc.sweep.max,
                                             sc.sweep.step, sc.policy[B].s);
        *out = new tic_sweep{std::move(result)};
    });
}

tic_status tic_sweep_get_summary(const tic_sweep* sweep, tic_sweep_summary* out) {
    if (null_out(sweep, out)) return TIC_ERR_INVALID_ARGUMENT;
    const auto& r = sweep->result;
    out->rows = r.points.size();
    out->floor = r.production_floor;
    out->min_x_a = r.min_production;
    out->floor_holds = r.floor_holds ? 1 : 0;
    out->cost_monotone = r.cost_monotone ? 1 : 0;
    return TIC_OK;
}

tic_status tic_sweep_get_row(const tic_sweep* sweep, size_t index, tic_sweep_row* out) {
    if (null_out(sweep, out)) return TIC_ERR_INVALID_ARGUMENT;
    const auto& r = sweep->result;
    if (index >= r.points.size()) return fail(TIC_ERR_INVALID_ARGUMENT, "sweep row out of range");
    double running = kInf;
    for (size_t i = 0; i <= index; ++i)
        running = std::min(running, r.points[i].solved.outcome.x[A]);
    const auto& p = r.points[index];
    const auto& o = p.solved.outcome;
    *out = tic_sweep_row{};
    out->e_b = p.e_b;
    for (tic::Country c : tic::kCountries) {
        const auto k = tic::idx(c);
        out->q_dom[k] = o.q_dom[c];
        out->q_exp[k] = o.q_exp[c];
        out->x[k] = o.x[c];
        out->direct[k] = p.solved.costs.direct[c];
    }
    out->pi_a = o.pi[A];
    out->regime_a = to_c(o.regime[A]);
    out->min_x_a = running;
    out->floor = r.production_floor;
    return TIC_OK;
}

void tic_sweep_free(tic_sweep* sweep) { delete sweep; }

}  // extern "C"
