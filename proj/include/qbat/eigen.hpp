// eigen.hpp - Hermitian eigendecomposition by cyclic complex Jacobi rotations

#pragma once

#include "qbat/matrix.hpp"
#include "qbat/tolerances.hpp"

#include <vector>

namespace qbat {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
    int sweeps = 0;
};

/// Diagonalizes a Hermitian matrix. Rotations continue until the largest
/// off-diagonal magnitude drops below `tol` (scaled by max(1, max|a|)).
/// Eigenvalues come back ascending; ties keep the column order Jacobi
/// produced, so vectors inside a degenerate subspace are not canonical.
///
/// Throws ValidationError if `a` is not Hermitian to tolerances.hermitian_input
/// or tol <= 0, and NumericalError if max_sweeps is exhausted.
EigenDecomposition hermitian_eigen(const ComplexMatrix& a, double tol = kTolerances.eigen_offdiag,
                                   int max_sweeps = kTolerances.eigen_max_sweeps);

/// V diag(values) V^dagger
ComplexMatrix reconstruct(const EigenDecomposition& eig);

} // namespace qbat
