#pragma once

#include <random>

#include "equilibrium.hpp"
#include "model.hpp"

namespace tic::testing {

inline ModelParams baseline() { return ModelParams::make(0.3, 0.7); }

inline TicScheme tic_a(double eta, double phi) {
    TicScheme t;
    t[Country::A] = {true, eta, phi};
    return t;
}

inline TicScheme agreement_tic() { return tic_a(1.5, 2.0 / 3.0); }

inline Preferences hard_prefs(double target = 0.8, double gamma = 0.06) {
    Preferences p;
    p.target_a = target;
    p.gamma_b = gamma;
    return p;
}

// Deterministic draws for the property tests.
class Draws {
public:
    explicit Draws(unsigned long long seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    ModelParams params() {
        const double a = uniform(0.1, 0.5);
        return ModelParams::make(a, uniform(a, 1.0));
    }

    PolicyVector policy(double scale, bool subsidies = true, bool barriers = true) {
        PolicyVector p;
        for (Country c : kCountries) {
            p[c].tau = uniform(0.0, scale);
            p[c].e = uniform(0.0, scale);
            p[c].s = subsidies ? uniform(0.0, scale) : 0.0;
            p[c].beta = barriers ? uniform(0.0, scale) : 0.0;
        }
        return p;
    }

    CountryTic tic(double eta_lo, double eta_hi) {
        return {true, uniform(eta_lo, eta_hi), uniform(0.2, 1.0)};
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace tic::testing
