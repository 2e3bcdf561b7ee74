// density.cpp

#include "qbat/density.hpp"

#include "qbat/eigen.hpp"
#include "qbat/errors.hpp"

#include <cmath>

namespace qbat {

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : mat_(std::move(m)) {
    check_hermitian_trace(tol);
    const double lowest = min_eigenvalue();
    if (lowest < -tol.positivity) {
        throw ValidationError("rho", "not positive semidefinite (min eigenvalue " + std::to_string(lowest) + ")");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, SkipPositivityCheck, const Tolerances& tol) : mat_(std::move(m)) {
    check_hermitian_trace(tol);
}

void DensityMatrix::check_hermitian_trace(const Tolerances& tol) const {
    if (!mat_.all_finite()) {
        throw ValidationError("rho", "non-finite entry");
    }
    if (hermiticity_error(mat_) >= tol.hermitian_input) {
        throw ValidationError("rho", "not Hermitian");
    }
    const Complex tr = trace(mat_);
    if (std::abs(tr - 1.0) >= tol.trace) {
        throw ValidationError("rho", "trace is not 1 (got " + std::to_string(tr.real()) + ")");
    }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    if (psi.empty()) {
        throw ValidationError("psi", "empty state vector");
    }
    double norm2 = 0.0;
    for (const auto& z : psi) {
        norm2 += std::norm(z);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw ValidationError("psi", "state vector has zero or non-finite norm");
    }
    const std::size_t n = psi.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = psi[i] * std::conj(psi[j]) / norm2;
        }
    }
    return DensityMatrix(hermitian_part(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw UsageError("basis_state: index out of range");
    }
    ComplexMatrix m(dim);
    m(k, k) = 1.0;
    return DensityMatrix(std::move(m));
}

std::vector<double> DensityMatrix::eigenvalues() const {
    return hermitian_eigen(mat_).values;
}

double DensityMatrix::min_eigenvalue() const {
    return eigenvalues().front();
}

} // namespace qbat
