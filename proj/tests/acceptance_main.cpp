// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit status 0 only when all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "esopt/analytic_pricer.hpp"
#include "esopt/errors.hpp"
#include "esopt/mc_oracle.hpp"
#include "esopt/pde_solver.hpp"
#include "esopt/scenario.hpp"
#include "oracles.hpp"

using namespace esopt;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s — %s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

struct SweepPoint {
    double sk, sigma, r, tau;
};

std::vector<SweepPoint> sweep() {
    std::vector<SweepPoint> pts;
    for (double sk : {0.5, 0.8, 1.0, 1.25, 2.0})
        for (double sigma : {0.1, 0.2, 0.4})
            for (double r : {0.0, 0.05})
                for (double tau : {0.25, 1.0, 2.0})
                    pts.push_back({sk, sigma, r, tau});
    return pts;
}

// ---------------------------------------------------------------- criterion 1
void four_way_agreement() {
    const auto t0 = std::chrono::steady_clock::now();
    const double strike = 100.0;
    // Monte Carlo resolution floor: below ~1e-6 of the strike the sampled
    // tail holds too few paths for a Gaussian interval at 1e6 paths.
    const double mc_floor = 1e-6 * strike;

    int bad = 0;
    double worst_quad = 0.0, worst_cn_scaled = 0.0, worst_mc = 0.0;
    for (const SweepPoint& pt : sweep()) {
        const MarketParams m(pt.sigma, pt.r, strike, pt.tau);
        const double s = strike * pt.sk;

        const PriceQuote cf = closed_form_quote(s, m);
        const PriceQuote qd = greens_function_price(s, m);
        const PriceQuote cn = fd_quote(s, m, default_grid(m));
        McConfig mc_cfg;
        mc_cfg.paths = 1'000'000;
        mc_cfg.seed = 20260809;
        const McResult mc = mc_price(s, m, mc_cfg);

        const double cfs[2] = {cf.call, cf.put};
        const double qds[2] = {qd.call, qd.put};
        const double cns[2] = {cn.call, cn.put};
        const double mcs[2] = {mc.call, mc.put};
        const double mc_bound[2] = {3.0 * mc.se_call + mc_floor,
                                    3.0 * mc.se_put + mc_floor};
        for (int leg = 0; leg < 2; ++leg) {
            const double quad_err = std::abs(qds[leg] - cfs[leg]);
            const double cn_err = std::abs(cns[leg] - cfs[leg]);
            const double mc_err = std::abs(mcs[leg] - cfs[leg]);
            // price scale for the 1e-4 discretization criterion: the
            // contract's own scale, never below the strike
            const double cn_scale = std::max(std::abs(cfs[leg]), strike);

            bool ok = true;
            ok &= quad_err <= 1e-8 && qd.error_estimate <= 1e-8;
            ok &= cn_err <= 1e-4 * cn_scale;
            ok &= cn_err <= cn.error_estimate;
            ok &= mc_err <= mc_bound[leg];
            ok &= std::abs(qds[leg] - cns[leg]) <= 1e-8 + cn.error_estimate;
            ok &= std::abs(qds[leg] - mcs[leg]) <= 1e-8 + mc_bound[leg];
            ok &= std::abs(cns[leg] - mcs[leg]) <=
                  cn.error_estimate + mc_bound[leg];
            if (!ok) ++bad;

            worst_quad = std::max(worst_quad, quad_err);
            worst_cn_scaled = std::max(worst_cn_scaled, cn_err / cn_scale);
            worst_mc = std::max(worst_mc, mc_err / mc_bound[leg]);
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "90-point sweep, both legs: closed form vs quadrature "
                  "(<=1e-8, worst %.1e), Crank-Nicolson (<=1e-4 of price "
                  "scale, worst %.1e), Monte Carlo (<=3se, worst %.2f of "
                  "bound); %d violations; %.1fs (< 60s)",
                  worst_quad, worst_cn_scaled, worst_mc, bad, secs);
    report(bad == 0 && secs < 60.0, "four-way price agreement", detail);
}

// ---------------------------------------------------------------- criterion 2
void parity() {
    std::mt19937_64 rng(31001);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const MarketParams m(0.05 + 0.75 * unif(rng), -0.05 + 0.15 * unif(rng),
                             50.0 + 100.0 * unif(rng), 0.01 + 3.0 * unif(rng));
        const double s = m.strike * (0.2 + 4.8 * unif(rng));
        const double gap = call_price(s, m) - put_price(s, m) -
                           (s - m.strike * std::exp(-m.r * m.tau()));
        worst = std::max(worst, std::abs(gap));
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "10^4 random draws, worst |C-P-S+K·disc| = %.2e (<= 1e-12)",
                  worst);
    report(worst <= 1e-12, "put-call parity", detail);
}

// ---------------------------------------------------------------- criterion 3
void cdf_oracle() {
    double worst = 0.0;
    for (int i = 0; i <= 1600; ++i) {
        const double x = -8.0 + 0.01 * i;
        worst = std::max(worst, std::abs(normal_cdf(x) -
                                         oracles::normal_cdf_quadrature(x)));
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "1601-point grid on [-8,8], max |err| = %.2e (<= 1e-12)",
                  worst);
    report(worst <= 1e-12, "normal cdf vs quadrature oracle", detail);
}

// ---------------------------------------------------------------- criterion 4
void impact_oracle() {
    std::mt19937_64 rng(31002);
    std::uniform_real_distribution<double> hdist(0.1, 2.0);
    std::uniform_real_distribution<double> gdist(-0.05, 0.05);
    double worst = 0.0;
    for (int n : {2, 9, 20}) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j <= i; ++j) raw[i][j] = raw[j][i] = gdist(rng);
                raw[i][i] += 0.5;
            }
            std::vector<double> hv(n);
            for (double& v : hv) v = hdist(rng);
            const double got =
                human_impact(PbVector(hv), InteractionMatrix::validate(raw));
            const double want = oracles::naive_impact(hv, raw);
            worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "10^3 draws each for n in {2,9,20}, worst rel err = %.2e "
                  "(<= 1e-14)",
                  worst);
    report(worst <= 1e-14, "impact aggregate vs naive double loop", detail);
}

// ---------------------------------------------------------------- criterion 5
void hessian_oracle() {
    std::mt19937_64 rng(31003);
    std::uniform_real_distribution<double> gdist(-0.4, 0.4);
    std::uniform_real_distribution<double> hdist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) raw[i][j] = raw[j][i] = gdist(rng);
            raw[i][i] += 1.5;
        }
        const InteractionMatrix g = InteractionMatrix::validate(raw);
        const MappingParams p(100.0, 1.0 + std::abs(hdist(rng)));
        std::vector<int> coords(n);
        for (int i = 0; i < n; ++i) coords[i] = i;
        std::vector<double> at(n);
        for (double& v : at) v = hdist(rng);

        // The composed map is quadratic, so central differences carry no
        // truncation term; a 1e-3 step keeps rounding amplification ~1e-8.
        const auto analytic = hessian_of_price(p, g, coords);
        const auto fd = oracles::central_hessian(
            [&p, &g](const std::vector<double>& hv) {
                return stock_price(p, human_impact(PbVector(hv), g)).value;
            },
            at, 1e-3);
        for (std::size_t k = 0; k < analytic.size(); ++k)
            worst = std::max(worst, std::abs(analytic[k] - fd[k]));
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "100 random draws, max |analytic - central FD| = %.2e "
                  "(<= 1e-6)",
                  worst);
    report(worst <= 1e-6, "analytic Hessian vs finite differences", detail);
}

// ---------------------------------------------------------------- criterion 6
void classification() {
    std::mt19937_64 rng(31004);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int checked = 0, disagreements = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double g11 = unif(rng), g22 = unif(rng), g12 = unif(rng);
        InteractionMatrix g = InteractionMatrix::zero(2);
        try {
            g = InteractionMatrix::validate({{g11, g12}, {g12, g22}});
        } catch (const DegenerateMatrixError&) {
            continue;
        }
        const MappingParams p(50.0, 0.5 + std::abs(unif(rng)));
        const auto rep = classify_extremum(p, g, {0, 1});
        if (rep.classification == Extremum::degenerate) continue;
        ++checked;
        const bool max_by_det =
            rep.hessian_det > 0.0 && rep.leading_second_derivative < 0.0;
        const bool min_by_det =
            rep.hessian_det > 0.0 && rep.leading_second_derivative > 0.0;
        const bool saddle_by_det = rep.hessian_det < 0.0;
        if ((rep.classification == Extremum::maximum) != max_by_det ||
            (rep.classification == Extremum::minimum) != min_by_det ||
            (rep.classification == Extremum::saddle) != saddle_by_det)
            ++disagreements;
    }

    // brute-force confirmation of the worked positive-definite example
    const MappingParams p(100.0, 1.0);
    const InteractionMatrix g =
        InteractionMatrix::validate({{1.0, 0.1}, {0.1, 1.0}});
    const auto rep = classify_extremum(p, g, {0, 1});
    const auto best = oracles::grid_argmax(
        [&](double a, double b) {
            return stock_price(p, human_impact(PbVector({a, b}), g)).value;
        },
        -2.0, 2.0, 401);
    const bool worked = rep.classification == Extremum::maximum &&
                        rep.has_stationary_point && best.interior &&
                        std::abs(best.x0 - rep.point[0]) <= 0.011 &&
                        std::abs(best.x1 - rep.point[1]) <= 0.011;

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%d non-degenerate 2x2 draws, %d rule disagreements (= 0); "
                  "worked example: interior maximum %s",
                  checked, disagreements, worked ? "confirmed" : "MISSED");
    report(disagreements == 0 && checked > 900 && worked,
           "extremum classification", detail);
}

// ---------------------------------------------------------------- criterion 7
void capture_scenario() {
    std::vector<ScenarioStep> steps;
    for (int k = 0; k <= 8; ++k) {
        std::vector<double> h(9, 0.5);
        h[0] = 0.5 - 0.05 * k;
        steps.push_back({0.1 * k, PbVector(h)});
    }
    const Scenario sc(MappingParams(100.0, 50.0),
                      MarketParams(0.2, 0.05, 100.0, 1.0),
                      InteractionMatrix::zero(9),
                      PbVector(std::vector<double>(9, 0.5)), std::move(steps));
    const auto pts = run_scenario(sc);

    const MarketParams fixed_tau(0.2, 0.05, 100.0, 1.0);
    bool ok = pts.size() == 9;
    double prev_spot = 0.0, prev_call = 0.0;
    for (const auto& p : pts) {
        const double c = call_price(p.spot, fixed_tau);
        ok &= p.priceable && p.spot > prev_spot && c > prev_call;
        prev_spot = p.spot;
        prev_call = c;
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "falling first driver: spot strictly increasing to %.6g, "
                  "fixed-expiry call strictly increasing to %.6g",
                  prev_spot, prev_call);
    report(ok, "capture scenario boosts spot and call", detail);
}

// ---------------------------------------------------------------- criterion 8
void convergence_order() {
    const MarketParams m(0.2, 0.05, 100.0, 1.0);
    const double cf = call_price(100.0, m);
    double prev = 0.0, min_order = 1e9;
    std::string orders;
    for (int lv = 0; lv < 4; ++lv) {
        const int nx = ((801 - 1) >> (3 - lv)) + 1;
        const int ntau = 800 >> (3 - lv);
        const Grid g(-6.0, 6.0, nx, ntau);
        const double err = std::abs(
            fd_solve(m, g, FdScheme::crank_nicolson, OptionType::call)
                .price(100.0) - cf);
        if (lv > 0) {
            const double order = std::log2(prev / err);
            min_order = std::min(min_order, order);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s%.2f", lv > 1 ? ", " : "", order);
            orders += buf;
        }
        prev = err;
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "simultaneous dx,dtau halving over 101->801 nodes: orders "
                  "[%s], min %.2f (>= 1.9)",
                  orders.c_str(), min_order);
    report(min_order >= 1.9, "Crank-Nicolson convergence order", detail);
}

// ---------------------------------------------------------------- criterion 9
void mc_determinism() {
    McConfig base;
    base.paths = 1'000'000;
    base.seed = 123;
    const MarketParams m(0.2, 0.05, 100.0, 1.0);

    base.workers = 1;
    const McResult r1 = mc_price(100.0, m, base);
    bool ok = true;
    for (int workers : {1, 4, 8}) {
        McConfig cfg = base;
        cfg.workers = workers;
        const McResult r = mc_price(100.0, m, cfg);
        ok &= r.call == r1.call && r.put == r1.put && r.se_call == r1.se_call &&
              r.se_put == r1.se_put && r.terminal_mean == r1.terminal_mean &&
              r.se_terminal == r1.se_terminal;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "10^6 paths, seed 123: workers {1,4,8} all produced call = "
                  "%.17g bit-identically",
                  r1.call);
    report(ok, "Monte Carlo determinism across parallelism", detail);
}

}  // namespace

int main() {
    four_way_agreement();
    parity();
    cdf_oracle();
    impact_oracle();
    hessian_oracle();
    classification();
    capture_scenario();
    convergence_order();
    mc_determinism();

    std::printf("ACCEPTANCE: %d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
