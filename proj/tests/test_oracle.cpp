#include <gtest/gtest.h>

#include <cmath>

#include "equilibrium.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace tic;
using tic::testing::baseline;
using tic::testing::Draws;

namespace {

constexpr Country A = Country::A;
constexpr Country B = Country::B;
constexpr std::size_t kM = 100000;

EffectiveRates tariff_a(double t) {
    EffectiveRates r;
    r.tau[A] = t;
    return r;
}

}  // namespace

TEST(DiscretizedMarket, CostGapLimits) {
    const DiscretizedMarket m(baseline(), kM);
    const double first = m.cost(A, 0) - m.cost(B, 0);
    const double last = m.cost(A, kM - 1) - m.cost(B, kM - 1);
    EXPECT_NEAR(first, -0.3, 1e-5);
    EXPECT_NEAR(last, 0.7, 1e-5);
    EXPECT_THROW(DiscretizedMarket(baseline(), 0), InvalidArgument);
}

TEST(OracleAllocate, FreeTrade) {
    const auto a = oracle_allocate(DiscretizedMarket(baseline(), kM), {}, {});
    EXPECT_NEAR(a.q_dom[A], 0.3, 1.0 / kM);
    EXPECT_NEAR(a.q_exp[B], 0.7, 1.0 / kM);
}

TEST(OracleAllocate, ProhibitiveTariff) {
    const auto a = oracle_allocate(DiscretizedMarket(baseline(), kM), tariff_a(2.0), {});
    EXPECT_EQ(a.q_dom[A], 1.0);
}

TEST(OracleAllocate, BaselineCostShiftLeavesAllocationUnchanged) {
    const auto r = tariff_a(0.1);
    const auto a0 = oracle_allocate(DiscretizedMarket(baseline(), 1000, 1.0), r, {});
    const auto a5 = oracle_allocate(DiscretizedMarket(baseline(), 1000, 6.0), r, {});
    EXPECT_EQ(a0.served_domestic[A], a5.served_domestic[A]);
    EXPECT_EQ(a0.served_domestic[B], a5.served_domestic[B]);
}

TEST(OracleClearing, AgreementScenario) {
    const DiscretizedMarket m(baseline(), kM);
    const auto c = oracle_clear_certificates(m, PolicyVector{}, tic::testing::agreement_tic());
    EXPECT_NEAR(c.pi[A], 0.1, 2.0 / kM);
    EXPECT_NEAR(c.allocation.q_dom[A], 0.4, 2.0 / kM);
    EXPECT_NEAR(c.allocation.q_exp[A], 0.4, 2.0 / kM);
}

TEST(OracleClearing, BothTicBelowOne) {
    TicScheme t;
    t[A] = {true, 0.8, 0.5};
    t[B] = {true, 0.8, 0.5};
    EXPECT_THROW(oracle_clear_certificates(DiscretizedMarket(baseline(), 1000), PolicyVector{}, t),
                 AutarkyOnly);
}

TEST(OracleClearing, HugeEtaIsSlack) {
    const auto c = oracle_clear_certificates(DiscretizedMarket(baseline(), 1000), PolicyVector{},
                                             tic::testing::tic_a(100, 0.5));
    EXPECT_EQ(c.pi[A], 0.0);
    EXPECT_GE(100 * c.allocation.q_exp[A], c.allocation.q_exp[B]);
}

TEST(OracleCosts, FreeTradeMatchesClosedFormLevel) {
    const DiscretizedMarket m(baseline(), kM);
    const auto a = oracle_allocate(m, {}, {});
    const auto d = oracle_costs(m, a, PolicyVector{}, TicScheme{}, {});
    // the closed-form level is the continuum integral, so the two differ by O(1/M^2)
    EXPECT_NEAR(d[A], free_trade_direct_cost(baseline()), 1e-8);
    EXPECT_NEAR(d[B], free_trade_direct_cost(baseline()), 1e-8);
}

TEST(OracleCosts, TariffOnly) {
    const DiscretizedMarket m(baseline(), kM);
    PolicyVector p;
    p[A].tau = 0.1;
    const auto a = oracle_allocate(m, tariff_a(0.1), {});
    const auto d = oracle_costs(m, a, p, TicScheme{}, {});
    EXPECT_NEAR(d[A] - free_trade_direct_cost(baseline()), 0.005, 4.0 / kM);
}

TEST(OracleCosts, AgreementScenario) {
    const DiscretizedMarket m(baseline(), kM);
    const auto t = tic::testing::agreement_tic();
    const auto c = oracle_clear_certificates(m, PolicyVector{}, t);
    const auto d = oracle_costs(m, c.allocation, PolicyVector{}, t, c.pi);
    const double base = free_trade_direct_cost(baseline());
    EXPECT_NEAR(d[A] + d[B] - 2 * base, 0.01, 4.0 / kM);
}

// Smaller grid than the acceptance run; same bounds scaled to the grid.
TEST(OracleProperties, ClosedFormsMatchOracle) {
    constexpr std::size_t m = 20000;
    Draws d(201);
    int checked = 0;
    while (checked < 40) {
        const ModelParams params = d.params();
        const PolicyVector p = d.policy(0.05);
        TicScheme t;
        if (d.coin(0.7)) t[A] = d.tic(1.0, 2.5);
        const auto o = solve_equilibrium(params, p, t);
        if (!o.interior) continue;
        ++checked;
        const DiscretizedMarket market(params, m);
        const auto c = oracle_clear_certificates(market, p, t);
        const auto closed = direct_costs(params, o, p, t);
        const auto od = oracle_costs(market, c.allocation, p, t, c.pi);
        for (Country k : kCountries) {
            EXPECT_NEAR(c.allocation.q_dom[k], o.q_dom[k], 2.0 / m);
            EXPECT_NEAR(c.allocation.q_exp[k], o.q_exp[k], 2.0 / m);
            EXPECT_NEAR(od[k], closed.direct[k], 4.0 / m);
            EXPECT_NEAR(c.pi[k], o.pi[k], 4.0 / m);
        }
    }
}
