#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "esopt/market.hpp"
#include "esopt/mc_oracle.hpp"
#include "esopt/pb_model.hpp"
#include "esopt/pde_solver.hpp"
#include "esopt/scenario.hpp"
#include "esopt/stock_mapping.hpp"

namespace esopt {

/// 12 significant digits, shortest form ("%.12g").
std::string fmt12(double x);

/// The value fmt12 prints, as a double, so serialized JSON shows the same
/// 12-digit numbers as the CSV output.
double round12(double x);

/// Boundary-state document: {"dimension": n, "labels": [n strings]?,
/// "h": [n numbers]?, "g": [[n x n numbers]]?}. Omitted g means no
/// interactions. Labels default to the canonical nine when n == 9.
struct PbDocument {
    int dimension;
    std::vector<std::string> labels;
    std::optional<PbVector> h;
    InteractionMatrix g;
};

PbDocument parse_pb_document(const nlohmann::json& j);

/// Scenario document:
/// { "mapping": {"s0", "alpha"},
///   "market": {"sigma", "r", "strike"?, "expiry"},
///   "pb": {"dimension", "labels"?, "g"?},
///   "reference": [n],
///   "steps": [{"t", "h": [n]}, ...],
///   "h_target": [n]? }
/// A missing strike is resolved through h_target when present, else s0.
struct ScenarioDocument {
    Scenario scenario;
    std::optional<PbVector> h_target;
    std::vector<std::string> labels;
};

ScenarioDocument parse_scenario(const nlohmann::json& j);

/// Throws InputError with a one-line diagnostic on malformed text.
nlohmann::json parse_json_text(const std::string& text, const std::string& where);

std::string trajectory_csv(const std::vector<TrajectoryPoint>& pts);
nlohmann::json trajectory_json(const std::vector<TrajectoryPoint>& pts);

nlohmann::json quote_json(const PriceQuote& q);
nlohmann::json mc_json(const McResult& r);

/// Coordinates are emitted 1-based, matching the CLI's --coords flag.
nlohmann::json extremum_json(const ExtremumReport& rep);

/// (x, tau, u) rows for every stored time level.
void surface_csv(const FdSolution& sol, std::ostream& os);
/// Mapped (S, C) slice of the final level.
void slice_csv(const FdSolution& sol, std::ostream& os);

}  // namespace esopt
