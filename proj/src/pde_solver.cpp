#include "esopt/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "esopt/errors.hpp"
#include "esopt/normal.hpp"

namespace esopt {

HeatVariables to_heat(double s, double t, double c, const MarketParams& m) {
    if (!(std::isfinite(s) && s > 0.0))
        throw InputError("to_heat: spot must be finite and > 0");
    const double tau = m.expiry - t;
    if (tau < 0.0) throw InputError("to_heat: t past expiry");
    const double x =
        std::log(s / m.strike) + (m.r - 0.5 * m.sigma * m.sigma) * tau;
    return {tau, x, c * std::exp(m.r * tau)};
}

SpotValue from_heat(const HeatVariables& hv, const MarketParams& m) {
    const double s = m.strike * std::exp(hv.x - (m.r - 0.5 * m.sigma * m.sigma) * hv.tau);
    return {s, m.expiry - hv.tau, hv.u * std::exp(-m.r * hv.tau)};
}

double heat_payoff(double x, double strike, OptionType leg) {
    return leg == OptionType::call ? strike * std::max(std::exp(x) - 1.0, 0.0)
                                   : strike * std::max(1.0 - std::exp(x), 0.0);
}

namespace {

constexpr int kGaussOrder = 16;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
struct GaussRule {
    double node[kGaussOrder];
    double weight[kGaussOrder];
    GaussRule() {
        const int n = kGaussOrder;
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double z1, pp;
            do {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                z1 = z;
                z = z1 - p1 / pp;
            } while (std::abs(z - z1) > 1e-15);
            node[i] = -z;
            node[n - 1 - i] = z;
            weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }
};

const GaussRule& gauss_rule() {
    static const GaussRule rule;
    return rule;
}

double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels) {
    const GaussRule& rule = gauss_rule();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (int k = 0; k < kGaussOrder; ++k)
            acc += rule.weight[k] * f(mid + 0.5 * h * rule.node[k]);
        total += 0.5 * h * acc;
    }
    return total;
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

}  // namespace

QuadResult heat_kernel_convolve(const std::function<double(double)>& f, double a,
                                double b, double x, double w, double tol,
                                int initial_panels, int max_doublings) {
    if (!(w > 0.0)) throw InputError("heat_kernel_convolve: width must be > 0");
    if (b <= a) return {0.0, 0.0};
    // Integrate in the standardized coordinate z = (y - x)/w.
    const double za = (a - x) / w;
    const double zb = (b - x) / w;
    const auto g = [&](double z) {
        return f(x + w * z) * std::exp(-0.5 * z * z);
    };
    int panels =
        std::max(initial_panels, static_cast<int>(std::ceil((zb - za) / 2.0)));
    double prev = kInvSqrt2Pi * composite_gauss(g, za, zb, panels);
    double delta = std::abs(prev);
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        const double cur = kInvSqrt2Pi * composite_gauss(g, za, zb, panels);
        delta = std::abs(cur - prev);
        prev = cur;
        if (delta <= tol) break;
    }
    return {prev, delta};
}

double greens_function_leg(double s, const MarketParams& m, OptionType leg,
                           const QuadratureConfig& quad, double* error_out) {
    if (!(std::isfinite(s) && s > 0.0))
        throw InputError("greens_function_price: spot must be finite and > 0");
    const double tau = m.tau();
    if (tau == 0.0 || m.sigma == 0.0)
        throw DegenerateLimitError(
            "greens_function_price: tau or sigma is zero, use the analytic branch");

    const double w = m.sigma * std::sqrt(tau);
    const double x = std::log(s / m.strike) + (m.r - 0.5 * m.sigma * m.sigma) * tau;
    const double grow = std::exp(-m.r * tau);  // u -> C
    const double k = m.strike;

    // Widen the truncation until the discarded tail is negligible. The call
    // integrand grows like e^y, so its tail bound carries the lognormal mean.
    double width = quad.width;
    double tail_u;
    for (;;) {
        if (leg == OptionType::call)
            tail_u = k * std::exp(x + 0.5 * w * w) * normal_cdf(w - width);
        else
            tail_u = k * normal_cdf(-width);
        if (tail_u * grow <= quad.tail_tol || width >= 320.0) break;
        width *= 2.0;
    }

    double lo, hi;
    if (leg == OptionType::call) {
        lo = 0.0;
        hi = x + width * w;
    } else {
        lo = x - width * w;
        hi = 0.0;
    }

    double u_val = 0.0, quad_err = 0.0;
    if (hi > lo) {
        const auto payoff = [&](double y) { return heat_payoff(y, k, leg); };
        const QuadResult qr = heat_kernel_convolve(
            payoff, lo, hi, x, w, 0.5 * quad.tol / grow, 8, 16);
        u_val = qr.value;
        quad_err = qr.error;
    }
    if (error_out) *error_out = (quad_err + tail_u) * grow;
    return std::max(u_val * grow, 0.0);
}

PriceQuote greens_function_price(double s, const MarketParams& m,
                                 const QuadratureConfig& quad) {
    double err_call = 0.0, err_put = 0.0;
    const double call = greens_function_leg(s, m, OptionType::call, quad, &err_call);
    const double put = greens_function_leg(s, m, OptionType::put, quad, &err_put);
    return {call, put, Method::quadrature, std::max(err_call, err_put)};
}

Grid::Grid(double x_min_, double x_max_, int nx_, int ntau_)
    : x_min(x_min_), x_max(x_max_), nx(nx_), ntau(ntau_) {
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < 0.0 && 0.0 < x_max))
        throw InputError("grid: x_min < 0 < x_max required");
    if (nx < 3) throw InputError("grid: nx must be >= 3");
    if (ntau < 1) throw InputError("grid: ntau must be >= 1");
    const double h = (x_max - x_min) / (nx - 1);
    double k = std::round(-x_min / h);
    k = std::min(std::max(k, 1.0), static_cast<double>(nx - 2));
    const double shift = -k * h - x_min;
    x_min += shift;
    x_max += shift;
    zero_node_ = static_cast<int>(k);
}

Grid default_grid(const MarketParams& m) {
    const int nx = 801;
    const double dx = 12.0 / (nx - 1);
    const int ntau = std::max(1, static_cast<int>(std::llround(m.tau() / dx)));
    return Grid(-6.0, 6.0, nx, ntau);
}

namespace {

double boundary_left(double tau, const MarketParams& m, double x_min,
                     OptionType leg) {
    if (leg == OptionType::call) return 0.0;
    // P ~ K e^{-r tau} - S for small S, transformed exactly.
    return m.strike * (1.0 - std::exp(x_min + 0.5 * m.sigma * m.sigma * tau));
}

double boundary_right(double tau, const MarketParams& m, double x_max,
                      OptionType leg) {
    if (leg == OptionType::put) return 0.0;
    // C ~ S - K e^{-r tau} for large S, transformed exactly.
    return m.strike * (std::exp(x_max + 0.5 * m.sigma * m.sigma * tau) - 1.0);
}

// Tridiagonal solve for the constant-coefficient implicit systems:
// -c u_{i-1} + (1 + 2c) u_i - c u_{i+1} = rhs_i on the interior.
void solve_implicit(std::vector<double>& u, std::vector<double>& rhs, double c,
                    std::vector<double>& scratch) {
    const int n = static_cast<int>(u.size());
    const double diag = 1.0 + 2.0 * c;
    std::vector<double>& cp = scratch;
    cp[1] = -c / diag;
    rhs[1] /= diag;
    for (int i = 2; i <= n - 2; ++i) {
        const double denom = diag + c * cp[i - 1];
        cp[i] = -c / denom;
        rhs[i] = (rhs[i] + c * rhs[i - 1]) / denom;
    }
    u[n - 2] = rhs[n - 2];
    for (int i = n - 3; i >= 1; --i) u[i] = rhs[i] - cp[i] * u[i + 1];
}

}  // namespace

FdSolution::FdSolution(Grid g, double tau_, OptionType leg_, const MarketParams& m)
    : grid(g), tau(tau_), leg(leg_), market(m) {}

double FdSolution::value_at_x(double x) const {
    const double h = grid.dx();
    if (x < grid.x_min - 1e-12 || x > grid.x_max + 1e-12)
        throw InputError("fd solution: x = " + std::to_string(x) +
                         " outside grid [" + std::to_string(grid.x_min) + ", " +
                         std::to_string(grid.x_max) + "]");
    int i0 = static_cast<int>(std::floor((x - grid.x_min) / h)) - 1;
    i0 = std::min(std::max(i0, 0), grid.nx - 4);
    double result = 0.0;
    for (int a = 0; a < 4; ++a) {
        double lagr = 1.0;
        const double xa = grid.node(i0 + a);
        for (int b = 0; b < 4; ++b) {
            if (b == a) continue;
            const double xb = grid.node(i0 + b);
            lagr *= (x - xb) / (xa - xb);
        }
        result += lagr * u[i0 + a];
    }
    return result;
}

double FdSolution::price(double s) const {
    if (!(std::isfinite(s) && s > 0.0))
        throw InputError("fd solution: spot must be finite and > 0");
    const double x = std::log(s / market.strike) +
                     (market.r - 0.5 * market.sigma * market.sigma) * tau;
    return value_at_x(x) * std::exp(-market.r * tau);
}

FdSolution fd_solve(const MarketParams& m, const Grid& grid, FdScheme scheme,
                    OptionType leg, const FdOptions& opts) {
    const double tau_end = m.tau();
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double dtau = tau_end / grid.ntau;
    const double mu = 0.5 * m.sigma * m.sigma * dtau / (dx * dx);

    if (scheme == FdScheme::explicit_euler && mu > 0.5)
        throw InputError(
            "fd_solve: explicit scheme unstable, sigma^2*dtau/(2*dx^2) = " +
            std::to_string(mu) + " > 0.5; refine ntau or coarsen nx");

    FdSolution sol(grid, tau_end, leg, m);
    sol.u.resize(nx);
    for (int i = 0; i < nx; ++i) sol.u[i] = heat_payoff(grid.node(i), m.strike, leg);
    if (opts.kink_cell_average) {
        // Pointwise sampling of the payoff corner sheds an O(dx^2) error with
        // a large constant; the cell average over [-dx/2, dx/2] removes it.
        sol.u[grid.zero_node()] =
            leg == OptionType::call
                ? m.strike / dx * (std::exp(0.5 * dx) - 1.0 - 0.5 * dx)
                : m.strike / dx * (std::exp(-0.5 * dx) - 1.0 + 0.5 * dx);
    }
    if (opts.store_surface) sol.surface.push_back(sol.u);
    if (tau_end == 0.0) return sol;

    std::vector<double> rhs(nx), scratch(nx), next(nx);
    int rannacher_half = scheme == FdScheme::crank_nicolson
                             ? (opts.rannacher_half_steps + 1) / 2 * 2
                             : 0;

    double tau = 0.0;
    for (int step = 0; step < grid.ntau; ++step) {
        if (scheme == FdScheme::explicit_euler) {
            tau += dtau;
            next[0] = boundary_left(tau, m, grid.x_min, leg);
            next[nx - 1] = boundary_right(tau, m, grid.x_max, leg);
            for (int i = 1; i < nx - 1; ++i)
                next[i] = sol.u[i] + mu * (sol.u[i + 1] - 2.0 * sol.u[i] + sol.u[i - 1]);
            sol.u.swap(next);
        } else if (rannacher_half >= 2) {
            // Two implicit-Euler half-steps in place of one CN step.
            for (int half = 0; half < 2; ++half) {
                tau += 0.5 * dtau;
                const double c = 0.5 * mu;  // sigma^2 (dtau/2) / (2 dx^2)
                const double bl = boundary_left(tau, m, grid.x_min, leg);
                const double br = boundary_right(tau, m, grid.x_max, leg);
                for (int i = 1; i < nx - 1; ++i) rhs[i] = sol.u[i];
                rhs[1] += c * bl;
                rhs[nx - 2] += c * br;
                sol.u[0] = bl;
                sol.u[nx - 1] = br;
                solve_implicit(sol.u, rhs, c, scratch);
            }
            rannacher_half -= 2;
        } else {
            tau += dtau;
            const double c = 0.5 * mu;
            const double bl = boundary_left(tau, m, grid.x_min, leg);
            const double br = boundary_right(tau, m, grid.x_max, leg);
            for (int i = 1; i < nx - 1; ++i)
                rhs[i] = sol.u[i] + c * (sol.u[i + 1] - 2.0 * sol.u[i] + sol.u[i - 1]);
            rhs[1] += c * bl;
            rhs[nx - 2] += c * br;
            sol.u[0] = bl;
            sol.u[nx - 1] = br;
            solve_implicit(sol.u, rhs, c, scratch);
        }
        if (opts.store_surface) sol.surface.push_back(sol.u);
    }
    return sol;
}

PriceQuote fd_quote(double s, const MarketParams& m, const Grid& grid,
                    FdScheme scheme) {
    const FdSolution fine_call = fd_solve(m, grid, scheme, OptionType::call);
    const FdSolution fine_put = fd_solve(m, grid, scheme, OptionType::put);
    const double c_f = fine_call.price(s);
    const double p_f = fine_put.price(s);

    const int nx_c = std::max(3, (grid.nx - 1) / 2 + 1);
    const int ntau_c = std::max(1, grid.ntau / 2);
    const Grid coarse(grid.x_min, grid.x_max, nx_c, ntau_c);
    const double c_c = fd_solve(m, coarse, scheme, OptionType::call).price(s);
    const double p_c = fd_solve(m, coarse, scheme, OptionType::put).price(s);

    // Richardson error estimate for a second-order scheme, with a safety
    // factor of two and a floor at the round-off scale of the solves.
    const double floor = 1e-12 * m.strike;
    const double est_call = 2.0 * std::abs(c_f - c_c) / 3.0 + floor;
    const double est_put = 2.0 * std::abs(p_f - p_c) / 3.0 + floor;
    return {std::max(c_f, 0.0), std::max(p_f, 0.0), Method::pde,
            std::max(est_call, est_put)};
}

}  // namespace esopt
