#include "esopt/scenario.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "esopt/analytic_pricer.hpp"
#include "esopt/errors.hpp"

namespace esopt {

Scenario::Scenario(MappingParams mapping_, MarketParams market_,
                   InteractionMatrix g_, PbVector reference_,
                   std::vector<ScenarioStep> steps_)
    : mapping(mapping_),
      market(market_),
      g(std::move(g_)),
      reference(std::move(reference_)),
      steps(std::move(steps_)) {
    const int n = reference.dim();
    if (n != g.dim())
        throw InputError("scenario: reference dimension " + std::to_string(n) +
                         " does not match g dimension " + std::to_string(g.dim()));
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const ScenarioStep& st = steps[i];
        if (st.h.dim() != n)
            throw InputError("scenario: step " + std::to_string(i) +
                             ": h dimension " + std::to_string(st.h.dim()) +
                             " does not match scenario dimension " +
                             std::to_string(n));
        if (!std::isfinite(st.time) || st.time <= prev)
            throw InputError("scenario: step " + std::to_string(i) +
                             ": times must be finite and strictly increasing");
        if (st.time > market.expiry)
            throw InputError("scenario: step " + std::to_string(i) +
                             ": time " + std::to_string(st.time) +
                             " past expiry " + std::to_string(market.expiry));
        prev = st.time;
    }
}

std::vector<TrajectoryPoint> run_scenario(const Scenario& sc, DeltaMode mode) {
    std::vector<TrajectoryPoint> out;
    out.reserve(sc.steps.size());
    const double h_ref_impact = human_impact(sc.reference, sc.g);
    double prev_impact = h_ref_impact;

    for (const ScenarioStep& st : sc.steps) {
        TrajectoryPoint pt{st.time,
                           st.h,
                           human_impact(st.h, sc.g),
                           0.0,
                           0.0,
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN(),
                           false};
        pt.delta_impact = mode == DeltaMode::from_reference
                              ? pt.impact - h_ref_impact
                              : pt.impact - prev_impact;
        prev_impact = pt.impact;

        const MappedPrice spot = stock_price(sc.mapping, pt.delta_impact);
        pt.spot = spot.value;
        pt.priceable = spot.priceable;
        if (pt.priceable) {
            const MarketParams at_step(sc.market.sigma, sc.market.r,
                                       sc.market.strike, sc.market.expiry,
                                       st.time);
            const PriceQuote q = closed_form_quote(spot.value, at_step);
            pt.call = q.call;
            pt.put = q.put;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

double strike_from_target(const MappingParams& mapping,
                          const InteractionMatrix& g, const PbVector& reference,
                          const PbVector& h_target) {
    const MappedPrice k = stock_price(mapping, impact_delta(reference, h_target, g));
    if (!k.priceable)
        throw UnpriceableError("strike_from_target: target maps to " +
                                   std::to_string(k.value) +
                                   ", strike must be positive",
                               k.value);
    return k.value;
}

double strike_from_target(const Scenario& sc, const PbVector& h_target) {
    return strike_from_target(sc.mapping, sc.g, sc.reference, h_target);
}

}  // namespace esopt
