#pragma once

// N large exporters in country A under the TIC agreement (phi_A * eta_A = 1). Each firm
// serves an even share of A's export markets and internalises its effect on the certificate price.

#include <vector>

#include "model.hpp"

namespace tic {

struct OligopolyConfig {
    int firms = 1;
    ModelParams params;
    CountryTic tic_a{true, 1.0, 1.0};
};

ValidationReport validate_oligopoly(const OligopolyConfig& config);

struct OligopolyEquilibrium {
    double q_exp = 0.0;
    double q_dom = 0.0;
    double pi = 0.0;
    double per_firm = 0.0;
};

/// Symmetric closed form. Exports are zero when N <= eta_A.
OligopolyEquilibrium oligopoly_equilibrium(const OligopolyConfig& config);

struct OligopolyIteration {
    std::vector<double> q;
    double q_exp = 0.0;
    int iterations = 0;
    double curvature = 0.0;  // second derivative of a firm's payoff in its own q
};

/// Damped Jacobi iteration on the firms' best responses. Throws NonConvergence.
OligopolyIteration oligopoly_best_response_iter(const OligopolyConfig& config,
                                                std::vector<double> init, int max_iter = 10000,
                                                double tol = 1e-13, double damping = 0.5);

struct DistortionReport {
    double conditional_excess = 0.0;
    double competitive_exports = 0.0;  // 1 / (1 + eta_A)
    double gap = 0.0;                  // relative shortfall of exports below the competitive level
};

DistortionReport oligopoly_distortion_report(const OligopolyConfig& config);

}  // namespace tic
