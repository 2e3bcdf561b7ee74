// density.hpp - density matrices: Hermitian, unit trace, positive semidefinite

#pragma once

#include "qbat/matrix.hpp"
#include "qbat/tolerances.hpp"

#include <span>
#include <vector>

namespace qbat {

class DensityMatrix {
public:
    struct SkipPositivityCheck {};

    // Validates Hermiticity, unit trace and positivity (min eigenvalue above
    // -tol.positivity). Throws ValidationError naming the broken property.
    explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = kTolerances);

    // Hermiticity and trace only. The integrator samples states through this
    // when a time-local generator with negative rates pushes the spectrum
    // slightly below zero; positivity is then monitored, not enforced.
    DensityMatrix(ComplexMatrix m, SkipPositivityCheck, const Tolerances& tol = kTolerances);

    static DensityMatrix pure(std::span<const Complex> psi);
    static DensityMatrix maximally_mixed(std::size_t dim);
    // |k><k| in the computational basis
    static DensityMatrix basis_state(std::size_t dim, std::size_t k);

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return mat_.dim(); }

    // Ascending.
    std::vector<double> eigenvalues() const;
    double min_eigenvalue() const;

private:
    void check_hermitian_trace(const Tolerances& tol) const;

    ComplexMatrix mat_;
};

} // namespace qbat
