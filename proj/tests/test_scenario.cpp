#include <gtest/gtest.h>

#include <cmath>

#include "errors.hpp"
#include "scenario.hpp"

using namespace tic;

TEST(Scenario, ParsesAllSections) {
    const auto sc = parse_scenario_text(R"(
# baseline
params.alpha_A = 0.3
params.alpha_B = 0.7   # trailing comment
policy.B.e = 0.25
policy.A.beta = 0.01
tic.A.enabled = true
tic.A.eta = 1.5
tic.A.phi = 0.5
prefs.X_bar_A = 0.8
prefs.gamma_B = 0.06
prefs.lambda_A = 12
sweep.e_B.max = 2
sweep.e_B.step = 0.5
oracle.M = 5000
oligopoly.N = 2, 4,8
)");
    EXPECT_DOUBLE_EQ(sc.params.delta, 1.0);
    EXPECT_EQ(sc.policy[Country::B].e, 0.25);
    EXPECT_EQ(sc.policy[Country::A].beta, 0.01);
    EXPECT_TRUE(sc.tic[Country::A].enabled);
    EXPECT_FALSE(sc.tic[Country::B].enabled);
    EXPECT_EQ(sc.tic[Country::A].phi, 0.5);
    ASSERT_TRUE(sc.prefs.has_value());
    EXPECT_EQ(*sc.prefs->lambda_a, 12.0);
    EXPECT_EQ(sc.sweep.max, 2.0);
    EXPECT_EQ(sc.sweep.step, 0.5);
    EXPECT_EQ(sc.oracle_size, 5000u);
    EXPECT_EQ(sc.oligopoly_firms, (std::vector<int>{2, 4, 8}));
}

TEST(Scenario, Defaults) {
    const auto sc = parse_scenario_text("params.alpha_A = 0.2\nparams.alpha_B = 0.5\n");
    EXPECT_DOUBLE_EQ(sc.params.delta, 0.7);
    EXPECT_TRUE(std::isinf(sc.params.v));
    EXPECT_FALSE(sc.prefs.has_value());
    EXPECT_EQ(sc.oracle_size, 0u);
}

TEST(Scenario, HardTargetKeyword) {
    const auto sc = parse_scenario_text("prefs.lambda_A = hard\nprefs.X_bar_A = 0.8\n");
    EXPECT_TRUE(sc.prefs->hard_target());
}

TEST(Scenario, UnknownKeyIsNamed) {
    try {
        parse_scenario_text("params.alpha_A = 0.3\ntic.C.eta = 2\n");
        FAIL();
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_NE(e.issues()[0].find("tic.C.eta"), std::string::npos);
        EXPECT_NE(e.issues()[0].find("line 2"), std::string::npos);
    }
}

TEST(Scenario, CollectsEveryBadLine) {
    try {
        parse_scenario_text("params.alpha_A = abc\nnonsense\ntic.A.enabled = maybe\noligopoly.N = 2.5\n"
                            "params.alpha_A = 0.1\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.issues().size(), 5u);
    }
}

TEST(Scenario, BadSweepRange) {
    EXPECT_THROW(parse_scenario_text("sweep.e_B.step = 0\n"), ValidationError);
}

TEST(Scenario, MissingFile) {
    EXPECT_THROW(load_scenario("/nonexistent/file.tic"), InvalidArgument);
}
