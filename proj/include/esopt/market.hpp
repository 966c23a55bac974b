#pragma once

namespace esopt {

/// European option contract and market environment. Time is a plain real in
/// years; rates are continuously compounded. Negative r is allowed.
struct MarketParams {
    double sigma;           // volatility, per sqrt(year), >= 0
    double r;               // risk-free rate, per year
    double strike;          // > 0
    double expiry;          // years
    double valuation_time;  // years, <= expiry

    MarketParams(double sigma, double r, double strike, double expiry,
                 double valuation_time = 0.0);

    double tau() const { return expiry - valuation_time; }
};

enum class OptionType { call, put };

enum class Method { closed_form, pde, quadrature, monte_carlo };

const char* method_name(Method m);

/// A two-legged quote with the numerical-error estimate of the method that
/// produced it (0 for closed form, standard error for Monte Carlo,
/// discretization bound for PDE/quadrature).
struct PriceQuote {
    double call;
    double put;
    Method method;
    double error_estimate;
};

}  // namespace esopt
