#pragma once

#include <functional>
#include <vector>

#include "esopt/market.hpp"

namespace esopt {

/// Coordinates in which the pricing equation is a pure diffusion:
/// tau = T - t, x = ln(S/K) + (r - sigma^2/2) tau, u = C e^{r tau}.
struct HeatVariables {
    double tau;
    double x;
    double u;
};

struct SpotValue {
    double s;
    double t;
    double c;
};

HeatVariables to_heat(double s, double t, double c, const MarketParams& m);
SpotValue from_heat(const HeatVariables& hv, const MarketParams& m);

/// Initial data in heat coordinates: K max(e^x - 1, 0) for a call,
/// K max(1 - e^x, 0) for a put.
double heat_payoff(double x, double strike, OptionType leg);

struct QuadResult {
    double value;
    double error;  // last refinement delta
};

/// (1/(w sqrt(2 pi))) * Int_a^b f(y) exp(-(x-y)^2 / (2 w^2)) dy by composite
/// Gauss-Legendre with panel doubling until |delta| <= tol. Returns the last
/// delta as error estimate.
QuadResult heat_kernel_convolve(const std::function<double(double)>& f, double a,
                                double b, double x, double w, double tol,
                                int initial_panels = 8, int max_doublings = 14);

struct QuadratureConfig {
    double tol = 1e-9;    // absolute target on the discounted price
    double width = 10.0;  // truncation width in units of sigma sqrt(tau);
                          // doubled until the tail bound drops below tail_tol
    double tail_tol = 1e-12;
};

/// Prices one leg through the Gaussian-kernel convolution of the heat-space
/// payoff, mapped back to C(S,t). Throws DegenerateLimitError for
/// tau == 0 or sigma == 0.
double greens_function_leg(double s, const MarketParams& m, OptionType leg,
                           const QuadratureConfig& quad, double* error_out);

/// Both legs; error_estimate = max of the per-leg quadrature + truncation bounds.
PriceQuote greens_function_price(double s, const MarketParams& m,
                                 const QuadratureConfig& quad = {});

enum class FdScheme { explicit_euler, crank_nicolson };

/// Uniform grid on [x_min, x_max]. The bounds are shifted (by less than one
/// cell) so that x = 0 falls exactly on a node; the payoff kink then never
/// straddles a cell.
struct Grid {
    Grid(double x_min, double x_max, int nx, int ntau);

    double x_min;
    double x_max;
    int nx;
    int ntau;

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double node(int i) const { return x_min + i * dx(); }
    int zero_node() const { return zero_node_; }

private:
    int zero_node_;
};

/// x in [-6, 6], nx = 801, ntau chosen so dtau is about dx.
Grid default_grid(const MarketParams& m);

struct FdOptions {
    bool store_surface = false;
    /// Number of implicit-Euler half-steps replacing the first Crank-Nicolson
    /// steps; damps the odd-even mode excited by the payoff kink. 4 half-steps
    /// smooth the first two steps. 0 disables.
    int rannacher_half_steps = 4;
    /// Replace the initial datum at the kink node by its cell average.
    bool kink_cell_average = true;
};

struct FdSolution {
    FdSolution(Grid g, double tau, OptionType leg, const MarketParams& m);

    Grid grid;
    double tau;  // terminal diffusion time reached
    OptionType leg;
    MarketParams market;
    std::vector<double> u;  // final time level
    /// Every time level including the initial one, when store_surface is set;
    /// surface[k] is the level at tau = k * dtau.
    std::vector<std::vector<double>> surface;

    /// Cubic (4-point Lagrange) interpolation of the final level.
    double value_at_x(double x) const;
    /// C(s, valuation_time): maps s to heat coordinates and discounts.
    double price(double s) const;
};

/// Marches the diffusion equation from the payoff to tau = T - t with
/// boundary values taken from the exact far-field asymptotes. The explicit
/// scheme requires sigma^2 dtau / (2 dx^2) <= 1/2 and rejects the grid
/// otherwise, reporting the offending ratio.
FdSolution fd_solve(const MarketParams& m, const Grid& grid, FdScheme scheme,
                    OptionType leg, const FdOptions& opts = {});

/// Both legs on the given grid plus a Richardson error estimate obtained
/// from a once-coarsened solve (|fine - coarse| / 3 per leg).
PriceQuote fd_quote(double s, const MarketParams& m, const Grid& grid,
                    FdScheme scheme = FdScheme::crank_nicolson);

}  // namespace esopt
