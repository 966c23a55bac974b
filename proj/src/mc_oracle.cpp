#include "esopt/mc_oracle.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "esopt/errors.hpp"
#include "esopt/rng.hpp"

namespace esopt {

namespace {

// Fixed batch size so batch boundaries (and therefore rounding behaviour)
// do not depend on the worker count. Even, so antithetic pairs never
// straddle a batch.
constexpr std::uint64_t kBatchPaths = 1u << 16;

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

struct BatchSums {
    Neumaier call, call2, put, put2, st, st2;
    std::uint64_t groups = 0;
};

struct PathModel {
    double spot, strike, drift, vol_sqrt_tau;
};

inline void accumulate_group(BatchSums& bs, double c, double p, double s_t) {
    bs.call.add(c);
    bs.call2.add(c * c);
    bs.put.add(p);
    bs.put2.add(p * p);
    bs.st.add(s_t);
    bs.st2.add(s_t * s_t);
    ++bs.groups;
}

void run_batch(const PathModel& pm, const McConfig& cfg, std::uint64_t first,
               std::uint64_t count, BatchSums& bs) {
    if (!cfg.antithetic) {
        for (std::uint64_t i = first; i < first + count; ++i) {
            const double z = standard_normal(cfg.seed, i);
            const double s_t = pm.spot * std::exp(pm.drift + pm.vol_sqrt_tau * z);
            const double c = s_t > pm.strike ? s_t - pm.strike : 0.0;
            const double p = pm.strike > s_t ? pm.strike - s_t : 0.0;
            accumulate_group(bs, c, p, s_t);
        }
        return;
    }
    // Pairs (2j, 2j+1) share one draw with opposite signs; a trailing odd
    // path forms its own group.
    std::uint64_t i = first;
    const std::uint64_t end = first + count;
    while (i < end) {
        const std::uint64_t pair = i / 2;
        const double z = standard_normal(cfg.seed, pair);
        const double s_up = pm.spot * std::exp(pm.drift + pm.vol_sqrt_tau * z);
        if (i + 1 < end) {
            const double s_dn = pm.spot * std::exp(pm.drift - pm.vol_sqrt_tau * z);
            const double c = 0.5 * ((s_up > pm.strike ? s_up - pm.strike : 0.0) +
                                    (s_dn > pm.strike ? s_dn - pm.strike : 0.0));
            const double p = 0.5 * ((pm.strike > s_up ? pm.strike - s_up : 0.0) +
                                    (pm.strike > s_dn ? pm.strike - s_dn : 0.0));
            accumulate_group(bs, c, p, 0.5 * (s_up + s_dn));
            i += 2;
        } else {
            const double c = s_up > pm.strike ? s_up - pm.strike : 0.0;
            const double p = pm.strike > s_up ? pm.strike - s_up : 0.0;
            accumulate_group(bs, c, p, s_up);
            i += 1;
        }
    }
}

}  // namespace

McResult mc_price(double s, const MarketParams& m, const McConfig& cfg) {
    if (!(std::isfinite(s) && s > 0.0))
        throw InputError("mc_price: spot must be finite and > 0");
    if (cfg.paths == 0) throw InputError("mc_price: paths must be >= 1");
    const double tau = m.tau();
    if (tau == 0.0 || m.sigma == 0.0)
        throw DegenerateLimitError(
            "mc_price: tau or sigma is zero, use the analytic branch");

    const PathModel pm{s, m.strike, (m.r - 0.5 * m.sigma * m.sigma) * tau,
                       m.sigma * std::sqrt(tau)};

    const std::uint64_t n_batches = (cfg.paths + kBatchPaths - 1) / kBatchPaths;
    std::vector<BatchSums> batches(n_batches);

    int workers = cfg.workers > 0
                      ? cfg.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<std::uint64_t>(workers) > n_batches)
        workers = static_cast<int>(n_batches);

    std::atomic<std::uint64_t> next_batch{0};
    auto work = [&]() {
        for (;;) {
            const std::uint64_t b = next_batch.fetch_add(1);
            if (b >= n_batches) return;
            const std::uint64_t first = b * kBatchPaths;
            const std::uint64_t count =
                std::min(kBatchPaths, cfg.paths - first);
            run_batch(pm, cfg, first, count, batches[b]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction in batch order.
    Neumaier call, call2, put, put2, st, st2;
    std::uint64_t groups = 0;
    for (const BatchSums& b : batches) {
        call.add(b.call.get());
        call2.add(b.call2.get());
        put.add(b.put.get());
        put2.add(b.put2.get());
        st.add(b.st.get());
        st2.add(b.st2.get());
        groups += b.groups;
    }

    const double n = static_cast<double>(groups);
    const double disc = std::exp(-m.r * tau);
    const auto mean_se = [n](const Neumaier& sum, const Neumaier& sumsq,
                             double& mean, double& se) {
        mean = sum.get() / n;
        if (n < 2.0) {
            se = 0.0;
            return;
        }
        double var = (sumsq.get() - n * mean * mean) / (n - 1.0);
        if (var < 0.0) var = 0.0;  // round-off guard
        se = std::sqrt(var / n);
    };

    McResult res{};
    double mc, sec, mp, sep, ms, ses;
    mean_se(call, call2, mc, sec);
    mean_se(put, put2, mp, sep);
    mean_se(st, st2, ms, ses);
    res.call = disc * mc;
    res.se_call = disc * sec;
    res.put = disc * mp;
    res.se_put = disc * sep;
    res.terminal_mean = ms;
    res.se_terminal = ses;
    res.paths = cfg.paths;
    return res;
}

}  // namespace esopt
