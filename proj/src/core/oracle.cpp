#include "oracle.hpp"

#include <algorithm>
#include <optional>

#include "errors.hpp"

namespace tic {

DiscretizedMarket::DiscretizedMarket(const ModelParams& params, std::size_t size, double baseline)
    : params_(params), size_(size), baseline_(baseline) {
    if (size == 0) throw InvalidArgument("oracle grid needs at least one market");
}

double DiscretizedMarket::cost(Country c, std::size_t k) const noexcept {
    // w_B = c0, w_A = c0 + Δw_A(m) with Δw_A(m) = -alpha_A + delta*m.
    if (c == Country::B) return baseline_;
    return baseline_ - params_.alpha_a + params_.delta * midpoint(k);
}

OracleAllocation oracle_allocate(const DiscretizedMarket& market, const EffectiveRates& rates,
                                 PerCountry<double> s) {
    const std::size_t m = market.size();
    OracleAllocation out;
    for (Country i : kCountries) {
        const Country j = other(i);
        auto& served = out.served_domestic[i];
        served.assign(m, 0);
        std::size_t count = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const double dom = market.cost(i, k) - s[i];
            const double imp = market.cost(j, k) - s[j] - rates.e[j] + rates.tau[i];
            if (dom == imp) ++out.ties;
            if (dom <= imp) {
                served[k] = 1;
                ++count;
            }
        }
        out.q_dom[i] = static_cast<double>(count) / static_cast<double>(m);
    }
    for (Country i : kCountries) out.q_exp[i] = 1.0 - out.q_dom[other(i)];
    return out;
}

namespace {

PerCountry<double> subsidies(const PolicyVector& policy) {
    PerCountry<double> s;
    for (Country k : kCountries) s[k] = policy[k].s;
    return s;
}

struct Trial {
    PerCountry<double> pi;
    EffectiveRates rates;
    OracleAllocation allocation;
};

Trial allocate_at(const DiscretizedMarket& market, const PolicyVector& policy,
                  const TicScheme& tic, PerCountry<double> pi) {
    Trial t{pi, effective_rates(policy, tic, pi), {}};
    t.allocation = oracle_allocate(market, t.rates, subsidies(policy));
    return t;
}

double residual(const OracleAllocation& a, const TicScheme& tic, Country i) {
    return tic[i].eta * a.q_exp[i] - a.q_exp[other(i)];
}

bool slack_ok(const OracleAllocation& a, const TicScheme& tic, Country i) {
    return !tic[i].enabled || (residual(a, tic, i) >= 0.0 && a.q_exp[i] > 0.0);
}

}  // namespace

OracleClearing oracle_clear_certificates(const DiscretizedMarket& market,
                                         const PolicyVector& policy, const TicScheme& tic) {
    const bool both = tic[Country::A].enabled && tic[Country::B].enabled;
    if (both && tic[Country::A].eta * tic[Country::B].eta < 1.0)
        throw AutarkyOnly("eta_A * eta_B < 1 leaves only the autarky equilibrium");

    Trial base = allocate_at(market, policy, tic, {});
    if (slack_ok(base.allocation, tic, Country::A) && slack_ok(base.allocation, tic, Country::B))
        return {base.pi, base.rates, std::move(base.allocation)};

    std::optional<Trial> best;
    const double bracket = market.params().delta + policy.magnitude() + 1.0;
    for (Country i : kCountries) {
        if (!tic[i].enabled || residual(base.allocation, tic, i) >= 0.0) continue;
        double lo = 0.0;
        double hi = bracket;
        auto at = [&](double p) {
            PerCountry<double> pi{};
            pi[i] = p;
            return allocate_at(market, policy, tic, pi);
        };
        if (residual(at(hi).allocation, tic, i) < 0.0) continue;
        while (hi - lo > 1e-13 * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            if (residual(at(mid).allocation, tic, i) >= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        Trial t = at(hi);
        const auto& a = t.allocation;
        if (a.q_exp[other(i)] <= 0.0) continue;
        if (residual(a, tic, i) > (1.0 + tic[i].eta) / static_cast<double>(market.size())) continue;
        if (!slack_ok(a, tic, other(i))) continue;
        const double trade = a.q_exp[Country::A] + a.q_exp[Country::B];
        if (!best || trade > best->allocation.q_exp[Country::A] + best->allocation.q_exp[Country::B])
            best = std::move(t);
    }
    if (!best) throw AutarkyOnly("no certificate clearing with positive trade");
    return {best->pi, best->rates, std::move(best->allocation)};
}

PerCountry<double> oracle_costs(const DiscretizedMarket& market, const OracleAllocation& allocation,
                                const PolicyVector& policy, const TicScheme& tic,
                                PerCountry<double> pi) {
    const EffectiveRates rates = effective_rates(policy, tic, pi);
    const std::size_t m = market.size();
    PerCountry<double> out;
    for (Country i : kCountries) {
        const Country j = other(i);
        const auto& own = allocation.served_domestic[i];
        const auto& partner = allocation.served_domestic[j];
        const double import_offset = -policy[j].s - rates.e[j];
        const double export_cost = rates.e[i] + policy[i].s;
        double sum = 0.0;
        std::size_t imported = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (own[k])
                sum += market.cost(i, k);
            else {
                sum += market.cost(j, k) + import_offset;
                ++imported;
            }
            if (!partner[k]) sum += export_cost;
        }
        const double n = static_cast<double>(m);
        out[i] = sum / n + policy[i].beta * static_cast<double>(imported) / n;
    }
    return out;
}

}  // namespace tic
