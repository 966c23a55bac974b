#pragma once

#include <utility>

#include "esopt/market.hpp"
#include "esopt/normal.hpp"
#include "esopt/pb_model.hpp"
#include "esopt/stock_mapping.hpp"

namespace esopt {

/// d1 = [ln(s/K) + (r + sigma^2/2) tau] / (sigma sqrt(tau)), d2 = d1 - sigma sqrt(tau).
/// Throws DegenerateLimitError when sigma*sqrt(tau) == 0; the price functions
/// below carry the deterministic branches themselves.
std::pair<double, double> d1_d2(double s, const MarketParams& m);

/// Closed-form call: s N(d1) - K e^{-r tau} N(d2).
/// tau == 0  -> max(s - K, 0)
/// sigma == 0 -> max(s - K e^{-r tau}, 0)
double call_price(double s, const MarketParams& m);

/// Closed-form put: K e^{-r tau} N(-d2) - s N(-d1), with the mirrored
/// degenerate branches.
double put_price(double s, const MarketParams& m);

/// Both legs with method tag closed-form and error estimate 0.
PriceQuote closed_form_quote(double s, const MarketParams& m);

/// Maps the boundary state through the impact aggregate and the
/// impact-to-price map, then quotes closed form on the mapped spot. Throws
/// UnpriceableError (carrying the spot) when the mapped price is <= 0.
PriceQuote price_pb_option(const PbVector& h_now, const PbVector& h_ref,
                           const InteractionMatrix& g, const MappingParams& map,
                           const MarketParams& m);

}  // namespace esopt
