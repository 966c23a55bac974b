#pragma once

#include <vector>

#include "esopt/pb_model.hpp"

namespace esopt {

/// Constants of the impact-to-price map S = s0 - alpha * delta_H.
struct MappingParams {
    double s0;     // initial stock price, > 0
    double alpha;  // price per unit of impact change, > 0

    MappingParams(double s0, double alpha);
};

/// A mapped price with its pricing validity. Non-positive values are
/// returned as-is and flagged; pricing modules require a positive spot.
struct MappedPrice {
    double value;
    bool priceable;
};

/// S = s0 - alpha * delta_h. Flags, never clamps.
MappedPrice stock_price(const MappingParams& p, double delta_h);

enum class Extremum { maximum, minimum, saddle, degenerate };

const char* extremum_name(Extremum e);

/// Analytic Hessian of the mapped price over the selected coordinates:
/// entry (i,j) = -2 * alpha * g_ij (the linear terms carry no curvature).
/// Row-major k*k for k = coords.size(). Coordinates are 0-based.
std::vector<double> hessian_of_price(const MappingParams& p,
                                     const InteractionMatrix& g,
                                     const std::vector<int>& coords);

struct ExtremumReport {
    std::vector<int> coords;        // analysed coordinates, 0-based
    std::vector<double> point;      // stationary point over coords; empty if none
    bool has_stationary_point;
    Extremum classification;
    double hessian_det;
    double leading_second_derivative;  // d2S/dh_c0^2
    std::vector<double> eigenvalues;   // of the Hessian, ascending
};

/// Classifies the critical point of the mapped price restricted to the
/// given coordinates using the eigenvalues of the analytic Hessian.
/// maximum:    all eigenvalues < -tol
/// minimum:    all eigenvalues > +tol
/// degenerate: any |eigenvalue| <= tol (never guessed past)
/// saddle:     otherwise
/// where tol = degeneracy_tol_rel * max|eigenvalue|. For two coordinates
/// this coincides with the determinant/leading-derivative conditions:
/// maximum iff det > 0 and the leading second derivative < 0.
ExtremumReport classify_extremum(const MappingParams& p,
                                 const InteractionMatrix& g,
                                 const std::vector<int>& coords,
                                 double degeneracy_tol_rel = 1e-10);

}  // namespace esopt
