#include "esopt/pb_model.hpp"

#include <cmath>
#include <utility>

#include "esopt/errors.hpp"
#include "esopt/linalg.hpp"

namespace esopt {

const std::vector<std::string>& canonical_pb_labels() {
    static const std::vector<std::string> labels = {
        "rate of biosphere loss",
        "land system change",
        "global fresh water use",
        "biogeochemical flows",
        "ocean acidification",
        "atmospheric aerosol loading",
        "stratospheric ozone depletion",
        "climate change",
        "chemical pollution",
    };
    return labels;
}

PbVector::PbVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InputError("pb vector: dimension must be >= 1");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw InputError("pb vector: entry " + std::to_string(i) +
                             " is not finite");
}

PbVector PbVector::zeros(int n) {
    if (n < 1) throw InputError("pb vector: dimension must be >= 1");
    return PbVector(std::vector<double>(n, 0.0));
}

InteractionMatrix::InteractionMatrix(int n, std::vector<double> lower, bool zero)
    : n_(n), lower_(std::move(lower)), zero_(zero) {}

InteractionMatrix InteractionMatrix::zero(int n) {
    if (n < 1) throw InputError("interaction matrix: dimension must be >= 1");
    return InteractionMatrix(
        n, std::vector<double>(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0),
        true);
}

InteractionMatrix InteractionMatrix::validate(
    const std::vector<std::vector<double>>& raw, const MatrixValidation& opts) {
    const int n = static_cast<int>(raw.size());
    if (n < 1) throw InputError("interaction matrix: dimension must be >= 1");
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(raw[i].size()) != n)
            throw InputError("interaction matrix: row " + std::to_string(i) +
                             " has " + std::to_string(raw[i].size()) +
                             " entries, expected " + std::to_string(n));

    bool zero = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(raw[i][j]))
                throw InputError("interaction matrix: entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") is not finite");
            if (raw[i][j] != 0.0) zero = false;
            if (j < i && std::abs(raw[i][j] - raw[j][i]) > opts.symmetry_tol)
                throw InputError("interaction matrix: asymmetric at (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 "): " + std::to_string(raw[i][j]) + " vs " +
                                 std::to_string(raw[j][i]));
        }

    std::vector<double> lower(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            lower[idx(i, j)] = 0.5 * (raw[i][j] + raw[j][i]);

    InteractionMatrix g(n, std::move(lower), zero);
    if (!zero && std::abs(g.determinant()) <= opts.degeneracy_tol)
        throw DegenerateMatrixError(
            "interaction matrix: degenerate, |det| = " +
            std::to_string(std::abs(g.determinant())) + " <= " +
            std::to_string(opts.degeneracy_tol));
    return g;
}

double InteractionMatrix::determinant() const {
    if (zero_) return 0.0;
    return linalg::det(dense(), n_);
}

std::vector<double> InteractionMatrix::dense() const {
    std::vector<double> a(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) a[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
    return a;
}

double human_impact(const PbVector& h, const InteractionMatrix& g) {
    const int n = h.dim();
    if (n != g.dim())
        throw InputError("human_impact: dimension mismatch, h has " +
                         std::to_string(n) + ", g has " +
                         std::to_string(g.dim()));
    double linear = 0.0;
    for (int i = 0; i < n; ++i) linear += h[i];
    if (g.is_zero()) return linear;
    double quad = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) quad += g(i, j) * h[i] * h[j];
    return linear + quad;
}

double impact_delta(const PbVector& h_start, const PbVector& h_end,
                    const InteractionMatrix& g) {
    if (h_start.dim() != h_end.dim())
        throw InputError("impact_delta: dimension mismatch, start has " +
                         std::to_string(h_start.dim()) + ", end has " +
                         std::to_string(h_end.dim()));
    return human_impact(h_end, g) - human_impact(h_start, g);
}

}  // namespace esopt
