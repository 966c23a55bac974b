#pragma once

#include <string>
#include <vector>

namespace esopt {

inline constexpr int kDefaultPbDimension = 9;

/// The nine canonical boundary indicators, used as default labels when a
/// document supplies none and the dimension is 9.
const std::vector<std::string>& canonical_pb_labels();

/// Boundary readings h_i relative to the safe-operating-space baseline.
/// Dimensionless signed reals; length is fixed at construction.
class PbVector {
public:
    explicit PbVector(std::vector<double> values);
    static PbVector zeros(int n);

    int dim() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

struct MatrixValidation {
    double symmetry_tol = 1e-9;    // max |g_ij - g_ji| accepted, then symmetrised
    double degeneracy_tol = 1e-12; // |det| must exceed this for non-zero input
};

/// Symmetric coupling coefficients g_ij. Only one triangle is stored, so
/// g_ij == g_ji holds exactly by construction. A non-zero matrix must be
/// non-degenerate; the all-zero matrix is the permitted "no interaction"
/// sentinel and bypasses the determinant check.
class InteractionMatrix {
public:
    static InteractionMatrix zero(int n);

    /// Validating factory for raw square input. Asymmetry beyond tolerance
    /// is rejected; asymmetry within tolerance is replaced by (g + g^T)/2.
    static InteractionMatrix validate(const std::vector<std::vector<double>>& raw,
                                      const MatrixValidation& opts = {});

    int dim() const { return n_; }
    double operator()(int i, int j) const {
        return i >= j ? lower_[idx(i, j)] : lower_[idx(j, i)];
    }
    bool is_zero() const { return zero_; }
    double determinant() const;
    std::vector<double> dense() const;  // row-major n*n copy

private:
    InteractionMatrix(int n, std::vector<double> lower, bool zero);
    static std::size_t idx(int i, int j) {
        return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
    }

    int n_;
    std::vector<double> lower_;  // packed lower triangle, (i,j) with j <= i
    bool zero_;
};

/// Aggregate impact H = sum_i h_i + sum_{i,j} g_ij h_i h_j. The quadratic
/// term runs over all ordered pairs, so an unordered pair (1,2) contributes
/// 2*g_12*h_1*h_2.
double human_impact(const PbVector& h, const InteractionMatrix& g);

/// H(h_end) - H(h_start); negative means the impact decreased.
double impact_delta(const PbVector& h_start, const PbVector& h_end,
                    const InteractionMatrix& g);

}  // namespace esopt
