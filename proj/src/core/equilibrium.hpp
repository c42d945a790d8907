#pragma once

// Closed-form market equilibrium: cutoff quantities, certificate clearing across
// regime hypotheses, and the cost decomposition.

#include "model.hpp"

namespace tic {

enum class Regime { NoTic, Binding, NonBinding, Autarky };

const char* name(Regime r) noexcept;

/// Served market masses. `interior` is false when any cutoff was truncated to [0,1].
struct Quantities {
    PerCountry<double> dom;
    PerCountry<double> exp;
    bool interior = true;
};

Quantities cutoff_quantities(const ModelParams& params, const EffectiveRates& rates,
                             PerCountry<double> s);

/// Interior certificate price of country `i` when its TIC binds and the partner's price is zero.
/// NTBs enter through the tariff slots. Throws RegimeInconsistent when the price is negative.
double binding_certificate_price(const ModelParams& params, const PolicyVector& policy,
                                 const TicScheme& tic, Country i);

struct EquilibriumOutcome {
    PerCountry<double> q_dom;
    PerCountry<double> q_exp;
    PerCountry<double> x;
    PerCountry<double> pi;
    PerCountry<Regime> regime;
    EffectiveRates rates;
    bool interior = true;
    /// Number of distinct self-consistent equilibria; the selected one has maximal trade.
    int consistent_count = 1;

    double imports(Country c) const noexcept { return q_exp[other(c)]; }
    double trade_volume() const noexcept { return q_exp[Country::A] + q_exp[Country::B]; }
};

/// Solves every admissible regime hypothesis, keeps the consistent ones, and returns the
/// one with maximal trade (ties: NonBinding, then Binding, then Autarky).
/// Throws ValidationError on invalid inputs.
EquilibriumOutcome solve_equilibrium(const ModelParams& params, const PolicyVector& policy,
                                     const TicScheme& tic);

struct CostReport {
    PerCountry<double> direct;  // D_i
    PerCountry<double> excess;  // E_i = D_i - D°_i
    double excess_total = 0.0;
    double conditional_excess = 0.0;
};

/// D°_i, the free-trade direct cost (identical for both countries at baseline cost c0).
double free_trade_direct_cost(const ModelParams& params);

/// Excess cost per country from quantities and instruments; NTBs add beta_i * imports_i.
PerCountry<double> excess_costs(const ModelParams& params, const Quantities& q,
                                const EffectiveRates& rates, PerCountry<double> s,
                                PerCountry<double> beta);

CostReport direct_costs(const ModelParams& params, const EquilibriumOutcome& outcome,
                        const PolicyVector& policy, const TicScheme& tic);

/// Excess over the cheapest allocation with the same production totals.
double conditional_excess(const ModelParams& params, const EquilibriumOutcome& outcome);

struct ProductionBounds {
    double global = 0.0;    // 1 if eta <= 1, else 1/eta
    double balanced = 0.0;  // 2/(1+eta), valid when exports do not exceed domestic sales
};

ProductionBounds tic_production_bounds(double eta);

/// Highest consumer price over both countries' markets at c0 = kBaselineCost.
double max_consumer_price(const ModelParams& params, const EquilibriumOutcome& outcome,
                          const PolicyVector& policy);

}  // namespace tic
