#include "esopt/stock_mapping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esopt/errors.hpp"
#include "esopt/linalg.hpp"

namespace esopt {

MappingParams::MappingParams(double s0_, double alpha_) : s0(s0_), alpha(alpha_) {
    if (!(std::isfinite(s0) && s0 > 0.0))
        throw InputError("mapping: s0 must be finite and > 0");
    if (!(std::isfinite(alpha) && alpha > 0.0))
        throw InputError("mapping: alpha must be finite and > 0");
}

MappedPrice stock_price(const MappingParams& p, double delta_h) {
    if (!std::isfinite(delta_h))
        throw InputError("stock_price: delta_h is not finite");
    const double s = p.s0 - p.alpha * delta_h;
    return {s, s > 0.0};
}

const char* extremum_name(Extremum e) {
    switch (e) {
        case Extremum::maximum: return "maximum";
        case Extremum::minimum: return "minimum";
        case Extremum::saddle: return "saddle";
        case Extremum::degenerate: return "degenerate";
    }
    return "?";
}

namespace {

void check_coords(const InteractionMatrix& g, const std::vector<int>& coords) {
    if (coords.empty())
        throw InputError("extremum analysis: empty coordinate set");
    for (int c : coords)
        if (c < 0 || c >= g.dim())
            throw InputError("extremum analysis: coordinate " +
                             std::to_string(c) + " outside [0, " +
                             std::to_string(g.dim() - 1) + "]");
}

}  // namespace

std::vector<double> hessian_of_price(const MappingParams& p,
                                     const InteractionMatrix& g,
                                     const std::vector<int>& coords) {
    check_coords(g, coords);
    const int k = static_cast<int>(coords.size());
    std::vector<double> hess(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            hess[static_cast<std::size_t>(a) * k + b] =
                -2.0 * p.alpha * g(coords[a], coords[b]);
    return hess;
}

ExtremumReport classify_extremum(const MappingParams& p,
                                 const InteractionMatrix& g,
                                 const std::vector<int>& coords,
                                 double degeneracy_tol_rel) {
    ExtremumReport rep;
    rep.coords = coords;
    rep.point = {};
    rep.has_stationary_point = false;

    std::vector<double> hess = hessian_of_price(p, g, coords);
    const int k = static_cast<int>(coords.size());

    rep.hessian_det = linalg::det(hess, k);
    rep.leading_second_derivative = hess[0];
    rep.eigenvalues = linalg::symmetric_eigenvalues(hess, k);

    double lam_max = 0.0;
    for (double lam : rep.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
    const double tol = degeneracy_tol_rel * lam_max;

    bool any_small = false, all_neg = true, all_pos = true;
    for (double lam : rep.eigenvalues) {
        if (std::abs(lam) <= tol) any_small = true;
        if (!(lam < -tol)) all_neg = false;
        if (!(lam > tol)) all_pos = false;
    }
    if (lam_max == 0.0 || any_small)
        rep.classification = Extremum::degenerate;
    else if (all_neg)
        rep.classification = Extremum::maximum;
    else if (all_pos)
        rep.classification = Extremum::minimum;
    else
        rep.classification = Extremum::saddle;

    // Stationary point of the restricted map (off-coordinates held at 0):
    // grad S = -alpha (1 + 2 g h) = 0, i.e. 2 g_sub p = -1. No solution is
    // reported when g is degenerate on these coordinates.
    if (rep.classification != Extremum::degenerate) {
        std::vector<double> sub(static_cast<std::size_t>(k) * k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                sub[static_cast<std::size_t>(a) * k + b] =
                    2.0 * g(coords[a], coords[b]);
        std::vector<double> rhs(k, -1.0);
        if (linalg::solve(std::move(sub), rhs, k)) {
            rep.point = std::move(rhs);
            rep.has_stationary_point = true;
        }
    }
    return rep;
}

}  // namespace esopt
