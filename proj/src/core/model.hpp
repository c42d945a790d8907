#pragma once

// Domain types of the two-country certificate trade model and the
// instrument algebra shared by the closed-form solver and the oracle.

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tic {

enum class Country : int { A = 0, B = 1 };

constexpr std::size_t idx(Country c) noexcept { return static_cast<std::size_t>(c); }
constexpr Country other(Country c) noexcept { return c == Country::A ? Country::B : Country::A; }
constexpr std::array<Country, 2> kCountries{Country::A, Country::B};
const char* name(Country c) noexcept;

/// Value per country, indexed by `Country`.
template <class T>
struct PerCountry {
    std::array<T, 2> v{};

    constexpr T& operator[](Country c) noexcept { return v[idx(c)]; }
    constexpr const T& operator[](Country c) const noexcept { return v[idx(c)]; }
    friend constexpr bool operator==(const PerCountry&, const PerCountry&) = default;
};

/// Identity-check tolerance used throughout.
inline constexpr double kEps = 1e-9;

/// Absolute technological cost level c0 = w_B(m). Allocations never depend on it.
inline constexpr double kBaselineCost = 1.0;

/// Technology: A's cost edge alpha_A at m=0, B's edge alpha_B at m=1.
struct ModelParams {
    double alpha_a = 0.0;
    double alpha_b = 0.0;
    double delta = 0.0;  // alpha_a + alpha_b, kept explicitly
    double v = std::numeric_limits<double>::infinity();

    /// Builds params with delta = alpha_a + alpha_b.
    static ModelParams make(double alpha_a, double alpha_b,
                            double v = std::numeric_limits<double>::infinity());

    double alpha(Country c) const noexcept { return c == Country::A ? alpha_a : alpha_b; }
    /// Free-trade domestic (= export) share Q°_i = alpha_i / delta.
    double free_trade_share(Country c) const noexcept { return alpha(c) / delta; }
    /// Free-trade production X°_i = 2 alpha_i / delta.
    double free_trade_production(Country c) const noexcept { return 2.0 * free_trade_share(c); }
};

struct CountryPolicy {
    double tau = 0.0;   // tariff
    double e = 0.0;     // export subsidy
    double s = 0.0;     // production subsidy
    double beta = 0.0;  // non-tariff barrier (no revenue)
};

struct PolicyVector {
    PerCountry<CountryPolicy> c;

    CountryPolicy& operator[](Country k) noexcept { return c[k]; }
    const CountryPolicy& operator[](Country k) const noexcept { return c[k]; }
    /// Sum of absolute instrument magnitudes across both countries.
    double magnitude() const noexcept;
};

struct CountryTic {
    bool enabled = false;
    double eta = 1.0;  // export credit factor
    double phi = 1.0;  // exporter revenue share
};

struct TicScheme {
    PerCountry<CountryTic> c;

    CountryTic& operator[](Country k) noexcept { return c[k]; }
    const CountryTic& operator[](Country k) const noexcept { return c[k]; }
    bool any_enabled() const noexcept { return c[Country::A].enabled || c[Country::B].enabled; }
};

/// Effective tariff tau~ = tau + pi + beta and effective export subsidy e~ = e + phi*eta*pi.
struct EffectiveRates {
    PerCountry<double> tau;
    PerCountry<double> e;
};

/// Country A's production target and the two countries' strategic weights.
struct Preferences {
    double target_a = 0.0;               // X̄_A
    std::optional<double> lambda_a;      // empty: the target is a hard constraint
    double gamma_b = 0.0;

    bool hard_target() const noexcept { return !lambda_a.has_value(); }
};

enum class Severity { Warning, Violation };

struct Issue {
    Severity severity;
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> issues;

    bool ok() const noexcept;
    std::vector<std::string> violations() const;
    std::vector<std::string> warnings() const;
};

ValidationReport validate_params(const ModelParams& params, const PolicyVector& policy,
                                 const TicScheme& tic);

/// Checks for the strategic analyses: target range, gamma_B sign and size, alpha ordering.
ValidationReport validate_preferences(const ModelParams& params, const Preferences& prefs);

/// Throws ValidationError when the report carries any violation.
void require_valid(const ValidationReport& report);

/// Rejects negative prices; expects pi = 0 for countries without a TIC.
EffectiveRates effective_rates(const PolicyVector& policy, const TicScheme& tic,
                               PerCountry<double> pi);

/// Instrument state after folding production subsidies into tariffs and export subsidies.
struct NormalizedInstruments {
    EffectiveRates rates;
    PerCountry<double> s;  // always zero
};

NormalizedInstruments normalize_subsidies(const PolicyVector& policy, const EffectiveRates& rates);

}  // namespace tic
