#include "esopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "esopt/errors.hpp"

namespace esopt {

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(fmt12(x).c_str(), nullptr);
}

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

double number_at(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number())
        throw InputError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> number_array(const json& v, int n, const std::string& where) {
    if (!v.is_array() || (n >= 0 && static_cast<int>(v.size()) != n))
        throw InputError(where + ": expected an array of " +
                         (n >= 0 ? std::to_string(n) : std::string("numbers")));
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            throw InputError(where + ": array entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

InteractionMatrix parse_g(const json& pb, int n, const std::string& where) {
    const auto it = pb.find("g");
    if (it == pb.end() || it->is_null()) return InteractionMatrix::zero(n);
    if (!it->is_array() || static_cast<int>(it->size()) != n)
        throw InputError(where + ": field 'g' must be an array of " +
                         std::to_string(n) + " rows");
    std::vector<std::vector<double>> raw;
    raw.reserve(n);
    for (const auto& row : *it)
        raw.push_back(number_array(row, n, where + ": field 'g'"));
    return InteractionMatrix::validate(raw);
}

std::vector<std::string> parse_labels(const json& pb, int n,
                                      const std::string& where) {
    const auto it = pb.find("labels");
    if (it == pb.end() || it->is_null()) {
        if (n == kDefaultPbDimension) return canonical_pb_labels();
        return {};
    }
    if (!it->is_array() || static_cast<int>(it->size()) != n)
        throw InputError(where + ": field 'labels' must be an array of " +
                         std::to_string(n) + " strings");
    std::vector<std::string> out;
    for (const auto& e : *it) {
        if (!e.is_string())
            throw InputError(where + ": labels must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

int parse_dimension(const json& j, const std::string& where) {
    const json& v = require(j, "dimension", where);
    if (!v.is_number_integer() || v.get<int>() < 1)
        throw InputError(where + ": field 'dimension' must be an integer >= 1");
    return v.get<int>();
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text, const std::string& where) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InputError(where + ": malformed JSON");
    return j;
}

PbDocument parse_pb_document(const nlohmann::json& j) {
    const std::string where = "pb document";
    if (!j.is_object()) throw InputError(where + ": expected an object");
    const int n = parse_dimension(j, where);

    std::optional<PbVector> h;
    if (const auto it = j.find("h"); it != j.end() && !it->is_null())
        h = PbVector(number_array(*it, n, where + ": field 'h'"));

    return PbDocument{n, parse_labels(j, n, where), std::move(h),
                      parse_g(j, n, where)};
}

ScenarioDocument parse_scenario(const nlohmann::json& j) {
    const std::string where = "scenario";
    if (!j.is_object()) throw InputError(where + ": expected an object");

    const json& jmap = require(j, "mapping", where);
    const MappingParams mapping(number_at(jmap, "s0", where + ".mapping"),
                                number_at(jmap, "alpha", where + ".mapping"));

    const json& jpb = require(j, "pb", where);
    const int n = parse_dimension(jpb, where + ".pb");
    InteractionMatrix g = parse_g(jpb, n, where + ".pb");
    std::vector<std::string> labels = parse_labels(jpb, n, where + ".pb");

    PbVector reference(
        number_array(require(j, "reference", where), n, where + ": field 'reference'"));

    std::optional<PbVector> h_target;
    if (const auto it = j.find("h_target"); it != j.end() && !it->is_null())
        h_target = PbVector(number_array(*it, n, where + ": field 'h_target'"));

    const json& jm = require(j, "market", where);
    const double sigma = number_at(jm, "sigma", where + ".market");
    const double rate = number_at(jm, "r", where + ".market");
    const double expiry = number_at(jm, "expiry", where + ".market");
    double strike;
    if (const auto it = jm.find("strike"); it != jm.end() && !it->is_null()) {
        if (!it->is_number())
            throw InputError(where + ".market: field 'strike' must be a number");
        strike = it->get<double>();
    } else if (h_target) {
        strike = strike_from_target(mapping, g, reference, *h_target);
    } else {
        strike = mapping.s0;
    }
    const MarketParams market(sigma, rate, strike, expiry);

    const json& jsteps = require(j, "steps", where);
    if (!jsteps.is_array())
        throw InputError(where + ": field 'steps' must be an array");
    std::vector<ScenarioStep> steps;
    steps.reserve(jsteps.size());
    for (std::size_t i = 0; i < jsteps.size(); ++i) {
        const std::string sw = where + ": step " + std::to_string(i);
        const json& js = jsteps[i];
        if (!js.is_object()) throw InputError(sw + ": expected an object");
        steps.push_back(ScenarioStep{
            number_at(js, "t", sw),
            PbVector(number_array(require(js, "h", sw), n, sw + ": field 'h'"))});
    }

    return ScenarioDocument{
        Scenario(mapping, market, std::move(g), std::move(reference),
                 std::move(steps)),
        std::move(h_target), std::move(labels)};
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& pts) {
    std::ostringstream os;
    os << "time,H,delta_H,spot,call,put,priceable\n";
    for (const TrajectoryPoint& p : pts) {
        os << fmt12(p.time) << ',' << fmt12(p.impact) << ','
           << fmt12(p.delta_impact) << ',' << fmt12(p.spot) << ','
           << fmt12(p.call) << ',' << fmt12(p.put) << ','
           << (p.priceable ? 1 : 0) << '\n';
    }
    return os.str();
}

nlohmann::json trajectory_json(const std::vector<TrajectoryPoint>& pts) {
    json arr = json::array();
    for (const TrajectoryPoint& p : pts) {
        json row{{"time", round12(p.time)},
                 {"H", round12(p.impact)},
                 {"delta_H", round12(p.delta_impact)},
                 {"spot", round12(p.spot)},
                 {"priceable", p.priceable}};
        row["call"] = p.priceable ? json(round12(p.call)) : json(nullptr);
        row["put"] = p.priceable ? json(round12(p.put)) : json(nullptr);
        arr.push_back(std::move(row));
    }
    return arr;
}

nlohmann::json quote_json(const PriceQuote& q) {
    return json{{"method", method_name(q.method)},
                {"call", round12(q.call)},
                {"put", round12(q.put)},
                {"error_estimate", round12(q.error_estimate)}};
}

nlohmann::json mc_json(const McResult& r) {
    json j = quote_json(r.quote());
    j["se_call"] = round12(r.se_call);
    j["se_put"] = round12(r.se_put);
    j["paths"] = r.paths;
    return j;
}

nlohmann::json extremum_json(const ExtremumReport& rep) {
    json coords = json::array();
    for (int c : rep.coords) coords.push_back(c + 1);
    json eigs = json::array();
    for (double e : rep.eigenvalues) eigs.push_back(round12(e));
    json point = json();
    if (rep.has_stationary_point) {
        point = json::array();
        for (double v : rep.point) point.push_back(round12(v));
    }
    return json{{"coords", std::move(coords)},
                {"point", std::move(point)},
                {"classification", extremum_name(rep.classification)},
                {"hessian_det", round12(rep.hessian_det)},
                {"leading_second_derivative",
                 round12(rep.leading_second_derivative)},
                {"eigenvalues", std::move(eigs)}};
}

void surface_csv(const FdSolution& sol, std::ostream& os) {
    os << "x,tau,u\n";
    const double dtau =
        sol.surface.size() > 1 ? sol.tau / (sol.surface.size() - 1) : 0.0;
    for (std::size_t level = 0; level < sol.surface.size(); ++level) {
        const double tau = level * dtau;
        for (int i = 0; i < sol.grid.nx; ++i)
            os << fmt12(sol.grid.node(i)) << ',' << fmt12(tau) << ','
               << fmt12(sol.surface[level][i]) << '\n';
    }
}

void slice_csv(const FdSolution& sol, std::ostream& os) {
    os << "S,C\n";
    const MarketParams& m = sol.market;
    const double disc = std::exp(-m.r * sol.tau);
    for (int i = 0; i < sol.grid.nx; ++i) {
        const double s =
            m.strike * std::exp(sol.grid.node(i) -
                                (m.r - 0.5 * m.sigma * m.sigma) * sol.tau);
        os << fmt12(s) << ',' << fmt12(sol.u[i] * disc) << '\n';
    }
}

}  // namespace esopt
