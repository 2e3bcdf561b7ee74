// support.hpp - random states and operators shared by the test binaries

#pragma once

#include "qbat/density.hpp"
#include "qbat/matrix.hpp"

#include <random>

namespace qbat::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(d);
    for (auto& z : m.entries()) z = Complex(n(rng), n(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t d) {
    return hermitian_part(random_matrix(rng, d));
}

// G G^dagger / Tr, full rank with probability one
inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t d) {
    const auto g = random_matrix(rng, d);
    auto rho = hermitian_part(g * adjoint(g));
    rho *= Complex(1.0 / trace(rho).real());
    return DensityMatrix(rho);
}

} // namespace qbat::testing
