// model.hpp - four-level spin-valley battery Hamiltonian, spectrum and drive

#pragma once

#include "qbat/density.hpp"
#include "qbat/matrix.hpp"

#include <array>
#include <numbers>

namespace qbat {

// Basis ordering is {|00>, |01>, |10>, |11>}: first index sublattice, second valley.
inline constexpr std::size_t kBatteryDim = 4;

struct ModelParams {
    double lambda = 1.0;                 // interaction energy scale, sets the unit
    double alpha = std::numbers::pi / 4; // inter-sublattice anisotropy phase
    double eta = 0.5;                    // kinetic coupling
    double n_x = 1.0;
    double n_y = 5.0;
    double b_s = 1.0;                    // pulse amplitude
    double tau = 1.0;                    // pulse width

    double k1() const noexcept { return eta * n_x / lambda; }
    double k2() const noexcept { return eta * n_y / lambda; }

    // Throws ValidationError naming the first offending field.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct SpectrumClosedForm {
    double e1 = 0.0;  // lambda (1 - sqrt(1 + k1^2 + 2 k1 + k2^2))
    double e2 = 0.0;  // lambda (1 + sqrt(1 + k1^2 + 2 k1 + k2^2))
    double e3 = 0.0;  // lambda (1 - sqrt(1 + k1^2 - 2 k1 + k2^2))
    double e4 = 0.0;  // lambda (1 + sqrt(1 + k1^2 - 2 k1 + k2^2))

    std::array<double, 4> ascending() const;
};

ComplexMatrix build_h0(const ModelParams& p);
SpectrumClosedForm closed_form_spectrum(const ModelParams& p);

// Projector on the lowest eigenvector of H0. Throws DegeneracyError when the
// two lowest levels are closer than kTolerances.degeneracy.
DensityMatrix ground_state(const ModelParams& p);

// B_s diag(1, -1, 1, -1) exp(-t^2 / (2 tau^2)); t is measured from the pulse centre.
ComplexMatrix pulse_hamiltonian(const ModelParams& p, double t);

// The charging phase runs over [0, duration] with the pulse centred at `center`.
struct ChargingWindow {
    double center = 0.0;
    double duration = 0.0;
};

inline constexpr double kPulseCenterInWidths = 5.0;

ChargingWindow charging_window(const ModelParams& p) noexcept;

} // namespace qbat
