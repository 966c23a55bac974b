#pragma once

#include <vector>

namespace esopt::linalg {

// Dense helpers for the small (n <= a few dozen) matrices this project uses.
// All matrices are row-major n*n in a flat vector.

/// Determinant via LU with partial pivoting. The copy is consumed.
double det(std::vector<double> a, int n);

/// Solves a*x = b in place (b becomes x). Returns false when the matrix is
/// singular to working precision.
bool solve(std::vector<double> a, std::vector<double>& b, int n);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Only the symmetric part of the input is referenced.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

}  // namespace esopt::linalg
