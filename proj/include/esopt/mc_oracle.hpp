#pragma once

#include <cstdint>

#include "esopt/market.hpp"

namespace esopt {

struct McConfig {
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 0;
    bool antithetic = false;
    /// Worker threads; 0 means hardware concurrency. The estimate is
    /// bit-identical for any value.
    int workers = 0;
};

/// Terminal-sampling Monte Carlo estimate. With antithetic sampling on,
/// consecutive path pairs share |Z| with opposite signs and the standard
/// errors are computed over pair means.
struct McResult {
    double call;
    double put;
    double se_call;
    double se_put;
    double terminal_mean;  // plain mean of S_T (undiscounted)
    double se_terminal;
    std::uint64_t paths;

    PriceQuote quote() const {
        return {call, put, Method::monte_carlo,
                se_call > se_put ? se_call : se_put};
    }
};

/// Prices both legs by exact lognormal terminal sampling:
/// S_T = s exp((r - sigma^2/2) tau + sigma sqrt(tau) Z). Discounted payoff
/// means and their sample standard errors. Throws DegenerateLimitError for
/// tau == 0 or sigma == 0 and InputError for paths == 0.
McResult mc_price(double s, const MarketParams& m, const McConfig& cfg);

}  // namespace esopt
