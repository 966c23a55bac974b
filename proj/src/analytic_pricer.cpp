#include "esopt/analytic_pricer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esopt/errors.hpp"

namespace esopt {

MarketParams::MarketParams(double sigma_, double r_, double strike_,
                           double expiry_, double valuation_time_)
    : sigma(sigma_),
      r(r_),
      strike(strike_),
      expiry(expiry_),
      valuation_time(valuation_time_) {
    if (!(std::isfinite(sigma) && sigma >= 0.0))
        throw InputError("market: sigma must be finite and >= 0");
    if (!std::isfinite(r)) throw InputError("market: r must be finite");
    if (!(std::isfinite(strike) && strike > 0.0))
        throw InputError("market: strike must be finite and > 0");
    if (!std::isfinite(expiry) || !std::isfinite(valuation_time))
        throw InputError("market: times must be finite");
    if (expiry < valuation_time)
        throw InputError("market: expiry lies before valuation_time");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed-form";
        case Method::pde: return "pde";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

namespace {

void check_spot(double s, const char* where) {
    if (!(std::isfinite(s) && s > 0.0))
        throw InputError(std::string(where) + ": spot must be finite and > 0, got " +
                         std::to_string(s));
}

}  // namespace

std::pair<double, double> d1_d2(double s, const MarketParams& m) {
    check_spot(s, "d1_d2");
    const double vol = m.sigma * std::sqrt(m.tau());
    if (vol == 0.0)
        throw DegenerateLimitError(
            "d1_d2: sigma*sqrt(tau) == 0, use the deterministic branch");
    const double d1 =
        (std::log(s / m.strike) + (m.r + 0.5 * m.sigma * m.sigma) * m.tau()) / vol;
    return {d1, d1 - vol};
}

double call_price(double s, const MarketParams& m) {
    check_spot(s, "call_price");
    const double tau = m.tau();
    if (tau == 0.0) return std::max(s - m.strike, 0.0);
    const double disc = std::exp(-m.r * tau);
    if (m.sigma == 0.0) return std::max(s - m.strike * disc, 0.0);
    const auto [d1, d2] = d1_d2(s, m);
    return s * normal_cdf(d1) - m.strike * disc * normal_cdf(d2);
}

double put_price(double s, const MarketParams& m) {
    check_spot(s, "put_price");
    const double tau = m.tau();
    if (tau == 0.0) return std::max(m.strike - s, 0.0);
    const double disc = std::exp(-m.r * tau);
    if (m.sigma == 0.0) return std::max(m.strike * disc - s, 0.0);
    const auto [d1, d2] = d1_d2(s, m);
    return m.strike * disc * normal_cdf(-d2) - s * normal_cdf(-d1);
}

PriceQuote closed_form_quote(double s, const MarketParams& m) {
    return {call_price(s, m), put_price(s, m), Method::closed_form, 0.0};
}

PriceQuote price_pb_option(const PbVector& h_now, const PbVector& h_ref,
                           const InteractionMatrix& g, const MappingParams& map,
                           const MarketParams& m) {
    const MappedPrice spot = stock_price(map, impact_delta(h_ref, h_now, g));
    if (!spot.priceable)
        throw UnpriceableError("price_pb_option: mapped spot " +
                                   std::to_string(spot.value) +
                                   " is not positive",
                               spot.value);
    return closed_form_quote(spot.value, m);
}

}  // namespace esopt
