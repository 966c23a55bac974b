#pragma once

#include <vector>

#include "esopt/market.hpp"
#include "esopt/pb_model.hpp"
#include "esopt/stock_mapping.hpp"

namespace esopt {

struct ScenarioStep {
    double time;  // years from scenario start
    PbVector h;
};

/// A boundary-state trajectory plus everything needed to price it.
struct Scenario {
    MappingParams mapping;
    MarketParams market;
    InteractionMatrix g;
    PbVector reference;  // the state impact changes are measured against
    std::vector<ScenarioStep> steps;

    /// Validates dimensions, strictly increasing step times, and
    /// times <= expiry; errors name the first offending step index.
    Scenario(MappingParams mapping, MarketParams market, InteractionMatrix g,
             PbVector reference, std::vector<ScenarioStep> steps);
};

/// How delta_H is measured: against the fixed reference state, or against
/// the previous step (sensitivity mode).
enum class DeltaMode { from_reference, step_over_step };

struct TrajectoryPoint {
    double time;
    PbVector h;
    double impact;        // H at this step
    double delta_impact;  // per the chosen mode
    double spot;
    double call;  // NaN when not priceable
    double put;   // NaN when not priceable
    bool priceable;
};

/// Prices every step with time-to-expiry = expiry - step.time. Unpriceable
/// steps (mapped spot <= 0) are flagged and kept, never dropped.
std::vector<TrajectoryPoint> run_scenario(
    const Scenario& sc, DeltaMode mode = DeltaMode::from_reference);

/// Strike implied by a target boundary state:
/// stock_price(mapping, H(h_target) - H(reference)). Throws
/// UnpriceableError when the result is not positive.
double strike_from_target(const MappingParams& mapping,
                          const InteractionMatrix& g, const PbVector& reference,
                          const PbVector& h_target);
double strike_from_target(const Scenario& sc, const PbVector& h_target);

}  // namespace esopt
