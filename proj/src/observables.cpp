// observables.cpp

#include "qbat/observables.hpp"

#include "qbat/eigen.hpp"
#include "qbat/errors.hpp"
#include "qbat/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbat {

namespace {

void require_hermitian(const ComplexMatrix& h) {
    if (hermiticity_error(h) > kTolerances.hermitian_input) {
        throw ValidationError("h", "Hamiltonian must be Hermitian");
    }
}

void require_dim(const DensityMatrix& rho, const ComplexMatrix& h) {
    if (rho.dim() != h.dim()) {
        throw UsageError("observable: rho and h have different dimensions");
    }
}

} // namespace

double energy(const DensityMatrix& rho, const ComplexMatrix& h) {
    require_dim(rho, h);
    require_hermitian(h);
    const ComplexMatrix& r = rho.matrix();
    Complex sum{};
    for (std::size_t i = 0; i < h.dim(); ++i) {
        for (std::size_t k = 0; k < h.dim(); ++k) {
            sum += h(i, k) * r(k, i);
        }
    }
    if (std::abs(sum.imag()) > kTolerances.energy_imag) {
        throw NumericalError("energy: Tr[h rho] has imaginary part " + std::to_string(sum.imag()));
    }
    return sum.real();
}

double purity_fidelity(const DensityMatrix& rho, std::size_t d) {
    if (d != rho.dim() || d < 2) {
        throw UsageError("purity_fidelity: d must equal the state dimension (>= 2)");
    }
    double tr_sq = 0.0;
    for (const auto& z : rho.matrix().entries()) {
        tr_sq += std::norm(z);
    }
    const double dd = static_cast<double>(d);
    return std::log(dd * tr_sq) / std::log(dd);
}

double l1_coherence(const DensityMatrix& rho) {
    const ComplexMatrix& r = rho.matrix();
    double sum = 0.0;
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            if (i != j) {
                sum += std::abs(r(i, j));
            }
        }
    }
    return sum;
}

PassiveState passive_state(const DensityMatrix& rho, const ComplexMatrix& h) {
    require_dim(rho, h);
    require_hermitian(h);
    const auto h_eig = hermitian_eigen(h);
    auto pops = hermitian_eigen(rho.matrix()).values;
    std::reverse(pops.begin(), pops.end());

    const std::size_t n = h.dim();
    ComplexMatrix m(n);
    std::vector<std::size_t> level(n);
    for (std::size_t i = 0; i < n; ++i) {
        level[i] = i;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) += pops[i] * h_eig.vectors(r, i) * std::conj(h_eig.vectors(c, i));
            }
        }
    }
    return PassiveState{DensityMatrix(hermitian_part(m), DensityMatrix::SkipPositivityCheck{}), std::move(level),
                        std::move(pops), h_eig.values};
}

ErgotropyDetail ergotropy_detail(const DensityMatrix& rho, const ComplexMatrix& h) {
    const double e_rho = energy(rho, h);
    const auto passive = passive_state(rho, h);
    double e_passive = 0.0;
    for (std::size_t i = 0; i < passive.populations.size(); ++i) {
        e_passive += passive.populations[i] * passive.energies[passive.level[i]];
    }
    const double raw = e_rho - e_passive;
    if (raw < -kTolerances.ergotropy_floor) {
        throw NumericalError("ergotropy: negative value " + std::to_string(raw));
    }
    return {std::max(raw, 0.0), raw};
}

double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h) {
    return ergotropy_detail(rho, h).value;
}

} // namespace qbat
