// observables.hpp - energy, purity, coherence, passive state and ergotropy

#pragma once

#include "qbat/density.hpp"
#include "qbat/matrix.hpp"

#include <vector>

namespace qbat {

struct ObservableSet {
    bool energy = true;
    bool purity = true;
    bool coherence = true;
    bool ergotropy = true;
    bool snapshots = true;

    static ObservableSet all() { return {}; }
    bool any() const noexcept { return energy || purity || coherence || ergotropy || snapshots; }
};

// Re Tr[h rho]. Throws NumericalError if the imaginary residue exceeds
// kTolerances.energy_imag, ValidationError if h is not Hermitian.
double energy(const DensityMatrix& rho, const ComplexMatrix& h);

// log_d(d Tr rho^2): 1 for pure states, 0 for I/d.
double purity_fidelity(const DensityMatrix& rho, std::size_t d);

// Sum of |rho_ij| over i != j in the computational basis.
double l1_coherence(const DensityMatrix& rho);

struct PassiveState {
    DensityMatrix state;
    // level[i]: index (ascending energy) of the h eigenlevel that receives the
    // i-th largest eigenvalue of rho.
    std::vector<std::size_t> level;
    std::vector<double> populations;  // rho eigenvalues, descending
    std::vector<double> energies;     // h eigenvalues, ascending
};

// sum_i p_i(desc) |E_i(asc)><E_i(asc)|. Slightly negative populations from
// non-Markovian drift are kept as they are.
PassiveState passive_state(const DensityMatrix& rho, const ComplexMatrix& h);

struct ErgotropyDetail {
    double value = 0.0;  // clamped at 0
    double raw = 0.0;    // energy(rho) - energy(passive) before clamping
};

// Throws NumericalError if raw < -kTolerances.ergotropy_floor; that would
// mean the passive state is not minimal, which cannot happen for Hermitian rho.
ErgotropyDetail ergotropy_detail(const DensityMatrix& rho, const ComplexMatrix& h);
double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h);

} // namespace qbat
