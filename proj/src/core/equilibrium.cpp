#include "equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace tic {

const char* name(Regime r) noexcept {
    switch (r) {
        case Regime::NoTic: return "NoTic";
        case Regime::Binding: return "Binding";
        case Regime::NonBinding: return "NonBinding";
        case Regime::Autarky: return "Autarky";
    }
    return "?";
}

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

PerCountry<double> subsidies(const PolicyVector& policy) {
    PerCountry<double> s;
    for (Country k : kCountries) s[k] = policy[k].s;
    return s;
}

PerCountry<double> barriers(const PolicyVector& policy) {
    PerCountry<double> b;
    for (Country k : kCountries) b[k] = policy[k].beta;
    return b;
}

// Certificate excess supply eta_i * Q_exp_i - Q_imp_i.
double certificate_residual(const Quantities& q, const TicScheme& tic, Country i) {
    return tic[i].eta * q.exp[i] - q.exp[other(i)];
}

struct Candidate {
    PerCountry<double> pi;
    Quantities q;
    EffectiveRates rates;
    PerCountry<Regime> regime;
    int rank = 0;  // 0 all slack, 1 some binding, 2 autarky

    double trade() const { return q.exp[Country::A] + q.exp[Country::B]; }
};

Quantities evaluate(const ModelParams& params, const PolicyVector& policy, const TicScheme& tic,
                    PerCountry<double> pi, EffectiveRates* rates_out = nullptr) {
    const EffectiveRates rates = effective_rates(policy, tic, pi);
    if (rates_out) *rates_out = rates;
    return cutoff_quantities(params, rates, subsidies(policy));
}

// Checks the certificate-market conditions at the given prices and labels each country.
std::optional<Candidate> verify(const ModelParams& params, const PolicyVector& policy,
                                const TicScheme& tic, PerCountry<double> pi) {
    Candidate c;
    c.pi = pi;
    c.q = evaluate(params, policy, tic, pi, &c.rates);
    for (Country k : kCountries) {
        if (!tic[k].enabled) {
            c.regime[k] = Regime::NoTic;
            continue;
        }
        const double r = certificate_residual(c.q, tic, k);
        const double imports = c.q.exp[other(k)];
        if (pi[k] > 0.0) {
            if (std::abs(r) > kEps || imports <= kEps) return std::nullopt;
            c.regime[k] = Regime::Binding;
            c.rank = 1;
        } else {
            if (r < -kEps || c.q.exp[k] <= kEps) return std::nullopt;
            c.regime[k] = Regime::NonBinding;
        }
    }
    return c;
}

Candidate autarky(const PolicyVector& policy, const TicScheme& tic) {
    Candidate c;
    c.pi = {};
    c.rates = effective_rates(policy, tic, {});
    c.q.dom = {{1.0, 1.0}};
    c.q.exp = {{0.0, 0.0}};
    c.q.interior = false;
    for (Country k : kCountries) c.regime[k] = tic[k].enabled ? Regime::Autarky : Regime::NoTic;
    c.rank = 2;
    return c;
}

// Price for country i's binding TIC with the partner's price at zero. Tries the interior
// closed form first, then bisects the truncated residual, which is non-decreasing in pi_i.
std::optional<double> solve_binding_price(const ModelParams& params, const PolicyVector& policy,
                                          const TicScheme& tic, Country i) {
    auto residual = [&](double p) {
        PerCountry<double> pi{};
        pi[i] = p;
        return certificate_residual(evaluate(params, policy, tic, pi), tic, i);
    };
    if (residual(0.0) >= 0.0) return std::nullopt;

    try {
        const double closed = binding_certificate_price(params, policy, tic, i);
        PerCountry<double> pi{};
        pi[i] = closed;
        const Quantities q = evaluate(params, policy, tic, pi);
        if (q.interior && std::abs(certificate_residual(q, tic, i)) <= 1e-10) return closed;
    } catch (const RegimeInconsistent&) {
        // truncated case, fall through
    }

    double lo = 0.0;
    double hi = params.delta + policy.magnitude() + 1.0;
    if (residual(hi) < 0.0) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    if (std::abs(residual(hi)) > 1e-10) return std::nullopt;
    return hi;
}

bool same_point(const Candidate& a, const Candidate& b) {
    for (Country k : kCountries) {
        if (std::abs(a.q.dom[k] - b.q.dom[k]) > kEps) return false;
        if (std::abs(a.q.exp[k] - b.q.exp[k]) > kEps) return false;
    }
    return true;
}

}  // namespace

Quantities cutoff_quantities(const ModelParams& params, const EffectiveRates& rates,
                             PerCountry<double> s) {
    Quantities q;
    q.interior = true;
    for (Country i : kCountries) {
        const Country j = other(i);
        const double base = params.free_trade_share(i);
        const double dom = base + ((s[i] - s[j]) + (rates.tau[i] - rates.e[j])) / params.delta;
        const double exp = base + ((s[i] - s[j]) + (rates.e[i] - rates.tau[j])) / params.delta;
        q.dom[i] = clamp01(dom);
        q.exp[i] = clamp01(exp);
        if (q.dom[i] != dom || q.exp[i] != exp) q.interior = false;
    }
    return q;
}

double binding_certificate_price(const ModelParams& params, const PolicyVector& policy,
                                 const TicScheme& tic, Country i) {
    const Country j = other(i);
    const auto& pi_ = policy[i];
    const auto& pj = policy[j];
    const double eta = tic[i].eta;
    const double phi = tic[i].phi;
    const double tau_i = pi_.tau + pi_.beta;
    const double tau_j = pj.tau + pj.beta;
    const double num = params.alpha(j) - eta * params.alpha(i) + (1.0 + eta) * (pj.s - pi_.s) +
                       (pj.e - eta * pi_.e) + (eta * tau_j - tau_i);
    const double price = num / (1.0 + phi * eta * eta);
    if (price < 0.0) throw RegimeInconsistent("binding certificate price is negative");
    return price;
}

EquilibriumOutcome solve_equilibrium(const ModelParams& params, const PolicyVector& policy,
                                     const TicScheme& tic) {
    require_valid(validate_params(params, policy, tic));

    std::vector<Candidate> found;
    auto add = [&](const Candidate& c) {
        for (const auto& f : found)
            if (same_point(f, c)) return;
        found.push_back(c);
    };

    const bool both = tic[Country::A].enabled && tic[Country::B].enabled;
    const bool autarky_only = both && tic[Country::A].eta * tic[Country::B].eta < 1.0;

    if (!autarky_only) {
        if (auto c = verify(params, policy, tic, {})) add(*c);
        for (Country i : kCountries) {
            if (!tic[i].enabled) continue;
            if (auto p = solve_binding_price(params, policy, tic, i)) {
                PerCountry<double> pi{};
                pi[i] = *p;
                if (auto c = verify(params, policy, tic, pi)) add(*c);
            }
        }
    }
    if (tic.any_enabled()) add(autarky(policy, tic));

    if (found.empty()) throw NoEquilibriumFound("no regime hypothesis verified");

    const Candidate* best = &found.front();
    for (const auto& c : found) {
        const double dt = c.trade() - best->trade();
        if (dt > kEps || (dt >= -kEps && c.rank < best->rank)) best = &c;
    }

    EquilibriumOutcome out;
    out.q_dom = best->q.dom;
    out.q_exp = best->q.exp;
    for (Country k : kCountries) out.x[k] = out.q_dom[k] + out.q_exp[k];
    out.pi = best->pi;
    out.regime = best->regime;
    out.rates = best->rates;
    out.interior = best->q.interior;
    out.consistent_count = static_cast<int>(found.size());
    return out;
}

double free_trade_direct_cost(const ModelParams& params) {
    return kBaselineCost - params.alpha_a * params.alpha_a / (2.0 * params.delta);
}

PerCountry<double> excess_costs(const ModelParams& params, const Quantities& q,
                                const EffectiveRates& rates, PerCountry<double> s,
                                PerCountry<double> beta) {
    PerCountry<double> out;
    for (Country i : kCountries) {
        const Country j = other(i);
        const double gap = q.dom[i] - params.free_trade_share(i);
        const double imports = q.exp[j];
        out[i] = 0.5 * params.delta * gap * gap + (s[i] + rates.e[i]) * q.exp[i] -
                 (s[j] + rates.e[j]) * imports + beta[i] * imports;
    }
    return out;
}

CostReport direct_costs(const ModelParams& params, const EquilibriumOutcome& outcome,
                        const PolicyVector& policy, const TicScheme& /*tic*/) {
    Quantities q{outcome.q_dom, outcome.q_exp, outcome.interior};
    CostReport r;
    r.excess = excess_costs(params, q, outcome.rates, subsidies(policy), barriers(policy));
    const double base = free_trade_direct_cost(params);
    for (Country k : kCountries) r.direct[k] = base + r.excess[k];
    r.excess_total = r.excess[Country::A] + r.excess[Country::B];
    r.conditional_excess = conditional_excess(params, outcome);
    return r;
}

double conditional_excess(const ModelParams& params, const EquilibriumOutcome& outcome) {
    const double da = outcome.q_dom[Country::A] - outcome.q_exp[Country::A];
    const double db = outcome.q_dom[Country::B] - outcome.q_exp[Country::B];
    if (std::abs(da - db) > kEps)
        throw NoEquilibriumFound("domestic/export gap differs across countries");
    const double value = 0.25 * params.delta * da * da;
    if (outcome.interior) {
        const auto& r = outcome.rates;
        const double wedge =
            (r.tau[Country::A] + r.tau[Country::B]) - (r.e[Country::A] + r.e[Country::B]);
        const double from_policy = wedge * wedge / (4.0 * params.delta);
        if (std::abs(from_policy - value) > kEps * std::max(1.0, value))
            throw NoEquilibriumFound("conditional excess disagrees with its policy form");
    }
    return value;
}

ProductionBounds tic_production_bounds(double eta) {
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    return {eta <= 1.0 ? 1.0 : 1.0 / eta, 2.0 / (1.0 + eta)};
}

double max_consumer_price(const ModelParams& params, const EquilibriumOutcome& outcome,
                          const PolicyVector& policy) {
    auto w = [&](Country c, double m) {
        return c == Country::A ? kBaselineCost - params.alpha_a + params.delta * m : kBaselineCost;
    };
    double best = -std::numeric_limits<double>::infinity();
    for (Country i : kCountries) {
        const Country j = other(i);
        auto price = [&](double m) {
            const double dom = w(i, m) - policy[i].s;
            const double imp = w(j, m) - policy[j].s - outcome.rates.e[j] + outcome.rates.tau[i];
            return std::min(dom, imp);
        };
        // Both cost lines are linear in m, so the minimum peaks at an end or at their crossing.
        const double wedge = (policy[i].s - policy[j].s) + outcome.rates.tau[i] - outcome.rates.e[j];
        const double crossing =
            i == Country::A ? (params.alpha_a + wedge) / params.delta
                            : (params.alpha_a - wedge) / params.delta;
        for (double m : {0.0, 1.0, clamp01(crossing)}) best = std::max(best, price(m));
    }
    return best;
}

}  // namespace tic
