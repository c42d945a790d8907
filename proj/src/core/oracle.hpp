#pragma once

// Brute-force reference for the closed forms: the product line is cut into M midpoint
// markets, each served by whichever producer has the lower marginal cost.

#include <cstddef>
#include <vector>

#include "model.hpp"

namespace tic {

class DiscretizedMarket {
public:
    static constexpr std::size_t kDefaultSize = 100000;

    explicit DiscretizedMarket(const ModelParams& params, std::size_t size = kDefaultSize,
                               double baseline = kBaselineCost);

    std::size_t size() const noexcept { return size_; }
    const ModelParams& params() const noexcept { return params_; }
    double baseline() const noexcept { return baseline_; }

    double midpoint(std::size_t k) const noexcept {
        return (static_cast<double>(k) + 0.5) / static_cast<double>(size_);
    }
    /// Technological cost w_c(m_k).
    double cost(Country c, std::size_t k) const noexcept;

private:
    ModelParams params_;
    std::size_t size_;
    double baseline_;
};

struct OracleAllocation {
    /// 1 where market k of the country is served by its own producers.
    PerCountry<std::vector<char>> served_domestic;
    PerCountry<double> q_dom;
    PerCountry<double> q_exp;
    /// Markets where domestic and import costs tie exactly (resolved to domestic).
    std::size_t ties = 0;
};

OracleAllocation oracle_allocate(const DiscretizedMarket& market, const EffectiveRates& rates,
                                 PerCountry<double> s);

struct OracleClearing {
    PerCountry<double> pi;
    EffectiveRates rates;
    OracleAllocation allocation;
};

/// Clears each certificate market by bisection on its price. Throws AutarkyOnly when no
/// clearing with positive trade exists.
OracleClearing oracle_clear_certificates(const DiscretizedMarket& market,
                                         const PolicyVector& policy, const TicScheme& tic);

/// Direct costs D_i by summing per-market direct costs over the grid.
PerCountry<double> oracle_costs(const DiscretizedMarket& market, const OracleAllocation& allocation,
                                const PolicyVector& policy, const TicScheme& tic,
                                PerCountry<double> pi);

}  // namespace tic
