#include <gtest/gtest.h>

#include <cmath>

#include "equilibrium.hpp"
#include "errors.hpp"
#include "support.hpp"

using namespace tic;
using tic::testing::baseline;
using tic::testing::Draws;

namespace {

constexpr Country A = Country::A;
constexpr Country B = Country::B;

EffectiveRates tariff_a(double t) {
    EffectiveRates r;
    r.tau[A] = t;
    return r;
}

EquilibriumOutcome solve_tariff_a(double t) {
    PolicyVector p;
    p[A].tau = t;
    return solve_equilibrium(baseline(), p, TicScheme{});
}

}  // namespace

TEST(CutoffQuantities, FreeTrade) {
    const auto q = cutoff_quantities(baseline(), {}, {});
    EXPECT_NEAR(q.dom[A], 0.3, 1e-15);
    EXPECT_NEAR(q.exp[A], 0.3, 1e-15);
    EXPECT_NEAR(q.dom[B], 0.7, 1e-15);
    EXPECT_NEAR(q.exp[B], 0.7, 1e-15);
    EXPECT_TRUE(q.interior);
}

TEST(CutoffQuantities, TariffInA) {
    const auto q = cutoff_quantities(baseline(), tariff_a(0.1), {});
    EXPECT_NEAR(q.dom[A], 0.4, 1e-12);
    EXPECT_NEAR(q.exp[A], 0.3, 1e-12);
    EXPECT_NEAR(q.dom[B], 0.7, 1e-12);
    EXPECT_NEAR(q.exp[B], 0.6, 1e-12);
}

TEST(CutoffQuantities, ProhibitiveTariffClamps) {
    const auto q = cutoff_quantities(baseline(), tariff_a(2.0), {});
    EXPECT_EQ(q.dom[A], 1.0);
    EXPECT_FALSE(q.interior);
}

TEST(BindingPrice, EtaOne) {
    EXPECT_NEAR(binding_certificate_price(baseline(), PolicyVector{}, tic::testing::tic_a(1, 1), A),
                0.2, 1e-15);
}

TEST(BindingPrice, AgreementDesign) {
    EXPECT_NEAR(
        binding_certificate_price(baseline(), PolicyVector{}, tic::testing::agreement_tic(), A), 0.1,
        1e-15);
}

TEST(BindingPrice, SymmetricCountries) {
    EXPECT_NEAR(binding_certificate_price(ModelParams::make(0.5, 0.5), PolicyVector{},
                                          tic::testing::tic_a(1, 1), A),
                0.0, 1e-15);
}

TEST(BindingPrice, NegativePriceIsInconsistent) {
    EXPECT_THROW(binding_certificate_price(ModelParams::make(0.7, 0.3), PolicyVector{},
                                           tic::testing::tic_a(1, 1), A),
                 RegimeInconsistent);
}

TEST(Solve, AgreementScenario) {
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, tic::testing::agreement_tic());
    EXPECT_EQ(o.regime[A], Regime::Binding);
    EXPECT_EQ(o.regime[B], Regime::NoTic);
    EXPECT_NEAR(o.pi[A], 0.1, 1e-12);
    EXPECT_NEAR(o.q_dom[A], 0.4, 1e-12);
    EXPECT_NEAR(o.q_exp[A], 0.4, 1e-12);
    EXPECT_NEAR(o.x[A], 0.8, 1e-12);
    EXPECT_TRUE(o.interior);
    // autarky also clears the certificate market
    EXPECT_EQ(o.consistent_count, 2);
}

TEST(Solve, BothTicBelowOneIsAutarky) {
    TicScheme t;
    t[A] = {true, 0.8, 0.5};
    t[B] = {true, 0.8, 0.5};
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, t);
    EXPECT_EQ(o.regime[A], Regime::Autarky);
    EXPECT_EQ(o.regime[B], Regime::Autarky);
    EXPECT_EQ(o.trade_volume(), 0.0);
    EXPECT_EQ(o.q_dom[A], 1.0);
}

TEST(Solve, FreeTrade) {
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, TicScheme{});
    EXPECT_EQ(o.regime[A], Regime::NoTic);
    EXPECT_EQ(o.pi[A], 0.0);
    EXPECT_NEAR(o.q_dom[A], 0.3, 1e-15);
    EXPECT_NEAR(o.q_exp[B], 0.7, 1e-15);
    EXPECT_EQ(o.consistent_count, 1);
}

TEST(Solve, SlackCertificatesAreNonBinding) {
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, tic::testing::tic_a(100, 0.5));
    EXPECT_EQ(o.regime[A], Regime::NonBinding);
    EXPECT_EQ(o.pi[A], 0.0);
    EXPECT_NEAR(o.q_dom[A], 0.3, 1e-15);
}

TEST(Solve, TruncatedBindingUsesBisection) {
    // B's large export subsidy pushes A's cutoffs to the boundary
    PolicyVector p;
    p[B].e = 5.0;
    const auto o = solve_equilibrium(baseline(), p, tic::testing::agreement_tic());
    EXPECT_EQ(o.regime[A], Regime::Binding);
    EXPECT_FALSE(o.interior);
    EXPECT_NEAR(1.5 * o.q_exp[A], o.q_exp[B], 1e-9);
    EXPECT_GE(o.x[A], 2.0 / 3.0 - 1e-9);
}

TEST(Costs, FreeTradeHasNoExcess) {
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, TicScheme{});
    const auto c = direct_costs(baseline(), o, PolicyVector{}, TicScheme{});
    EXPECT_EQ(c.excess[A], 0.0);
    EXPECT_EQ(c.excess[B], 0.0);
    EXPECT_NEAR(c.direct[A], free_trade_direct_cost(baseline()), 1e-15);
    EXPECT_NEAR(free_trade_direct_cost(baseline()), 0.955, 1e-15);
}

TEST(Costs, AgreementScenario) {
    const auto t = tic::testing::agreement_tic();
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, t);
    const auto c = direct_costs(baseline(), o, PolicyVector{}, t);
    EXPECT_NEAR(c.excess_total, 0.01, 1e-12);
    EXPECT_NEAR(c.excess[A], 0.045, 1e-12);
    EXPECT_NEAR(c.excess[B], -0.035, 1e-12);
    EXPECT_NEAR(c.conditional_excess, 0.0, 1e-15);
}

TEST(Costs, TariffOnly) {
    const auto o = solve_tariff_a(0.1);
    PolicyVector p;
    p[A].tau = 0.1;
    const auto c = direct_costs(baseline(), o, p, TicScheme{});
    EXPECT_NEAR(c.excess[A], 0.005, 1e-12);
    EXPECT_NEAR(c.conditional_excess, 0.0025, 1e-12);
}

TEST(Costs, EqualGapsMeanNoConditionalExcess) {
    PolicyVector p;
    p[A].tau = 0.07;
    p[A].e = 0.07;
    const auto o = solve_equilibrium(baseline(), p, TicScheme{});
    EXPECT_NEAR(conditional_excess(baseline(), o), 0.0, 1e-15);
}

TEST(ProductionBounds, Examples) {
    EXPECT_NEAR(tic_production_bounds(1.5).global, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(tic_production_bounds(1.5).balanced, 0.8, 1e-15);
    EXPECT_NEAR(tic_production_bounds(1.25).global, 0.8, 1e-15);
    EXPECT_EQ(tic_production_bounds(1.0).global, 1.0);
    EXPECT_THROW(tic_production_bounds(0.0), InvalidArgument);
}

TEST(ConsumerPrice, FreeTradePeaksAtBaseline) {
    const auto o = solve_equilibrium(baseline(), PolicyVector{}, TicScheme{});
    EXPECT_NEAR(max_consumer_price(baseline(), o, PolicyVector{}), 1.0, 1e-12);
}

// Identities every returned equilibrium must satisfy, over random policies and schemes.
TEST(SolveProperties, MarketIdentitiesAndCertificateFeasibility) {
    Draws d(101);
    for (int n = 0; n < 2000; ++n) {
        const ModelParams params = d.params();
        const PolicyVector p = d.policy(d.coin(0.2) ? 1.5 : 0.2);
        TicScheme t;
        if (d.coin(0.7)) t[A] = d.tic(0.5, 3.0);
        if (d.coin(0.3)) t[B] = d.tic(0.5, 3.0);
        const auto o = solve_equilibrium(params, p, t);
        EXPECT_NEAR(o.q_dom[A] + o.q_exp[B], 1.0, 1e-9);
        EXPECT_NEAR(o.q_dom[B] + o.q_exp[A], 1.0, 1e-9);
        EXPECT_NEAR(o.q_dom[A] - o.q_exp[A], o.q_dom[B] - o.q_exp[B], 1e-9);
        for (Country c : kCountries) {
            if (!t[c].enabled) continue;
            EXPECT_GE(t[c].eta * o.q_exp[c], o.q_exp[other(c)] - 1e-9);
            EXPECT_GE(o.pi[c], 0.0);
            if (o.regime[c] == Regime::NonBinding) EXPECT_EQ(o.pi[c], 0.0);
            if (o.regime[c] == Regime::Binding)
                EXPECT_NEAR(t[c].eta * o.q_exp[c], o.q_exp[other(c)], 1e-9);
        }
        const auto costs = direct_costs(params, o, p, t);
        EXPECT_EQ(costs.conditional_excess <= 1e-18,
                  std::abs(o.q_dom[A] - o.q_exp[A]) <= 1e-9) << n;
    }
}

// Without barriers the summed excess cost is a pure deadweight loss.
TEST(SolveProperties, TotalExcessNonNegative) {
    Draws d(102);
    for (int n = 0; n < 2000; ++n) {
        const ModelParams params = d.params();
        const PolicyVector p = d.policy(0.4, true, false);
        TicScheme t;
        if (d.coin()) t[A] = d.tic(0.8, 3.0);
        const auto o = solve_equilibrium(params, p, t);
        const auto c = direct_costs(params, o, p, t);
        EXPECT_GE(c.excess_total, -1e-12);
        const double d0 = std::abs(o.q_dom[A] - params.free_trade_share(A)) +
                          std::abs(o.q_dom[B] - params.free_trade_share(B));
        if (d0 > 1e-6) EXPECT_GT(c.excess_total, 0.0);
    }
}

TEST(SolveProperties, NeverTwoBindingWhenEtaProductAboveOne) {
    Draws d(103);
    for (int n = 0; n < 1000; ++n) {
        const ModelParams params = d.params();
        TicScheme t;
        t[A] = d.tic(0.5, 3.0);
        t[B] = d.tic(0.5, 3.0);
        if (t[A].eta * t[B].eta <= 1.0) t[B].eta = 1.01 / t[A].eta + d.uniform(0, 1);
        const auto o = solve_equilibrium(params, d.policy(0.3), t);
        EXPECT_FALSE(o.regime[A] == Regime::Binding && o.regime[B] == Regime::Binding);
        // without prohibitive instruments some trading regime always clears
        EXPECT_GT(solve_equilibrium(params, PolicyVector{}, t).trade_volume(), 0.0);
    }
}

TEST(SolveProperties, ProductionGuaranteeAgainstAnyOpponent) {
    Draws d(104);
    for (int n = 0; n < 1000; ++n) {
        const ModelParams params = d.params();
        TicScheme t;
        t[A] = d.tic(1.0, 3.0);
        PolicyVector p;
        p[B].e = d.uniform(0.0, 10.0 * params.delta);
        p[B].s = d.uniform(0.0, 2.0 * params.delta);
        p[B].tau = d.uniform(0.0, 2.0 * params.delta);
        const auto o = solve_equilibrium(params, p, t);
        EXPECT_GE(o.x[A], 1.0 / t[A].eta - 1e-9);
    }
}
