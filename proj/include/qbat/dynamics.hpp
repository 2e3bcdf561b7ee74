// dynamics.hpp - closed charging and open dissipative evolution of rho(t)

#pragma once

#include "qbat/density.hpp"
#include "qbat/matrix.hpp"
#include "qbat/model.hpp"
#include "qbat/observables.hpp"

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qbat {

enum class ChannelKind { None, AmplitudeDamping, Dephasing };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);  // throws UsageError

struct ConstantRate {
    double gamma = 0.0;
    friend bool operator==(const ConstantRate&, const ConstantRate&) = default;
};

// gamma(t) = gamma0 exp(-beta t) cos(omega t); negative values are allowed.
struct ExpCosineRate {
    double gamma0 = 0.0;
    double beta = 0.0;
    double omega = 0.0;
    friend bool operator==(const ExpCosineRate&, const ExpCosineRate&) = default;
};

using RateProfile = std::variant<ConstantRate, ExpCosineRate>;

void validate(const RateProfile& rate);
double evaluate_rate(const RateProfile& rate, double t);

struct ChannelSpec {
    ChannelKind kind = ChannelKind::None;
    RateProfile rate = ConstantRate{0.0};

    static ChannelSpec none() { return {}; }
    static ChannelSpec amplitude_damping(RateProfile r) { return {ChannelKind::AmplitudeDamping, r}; }
    static ChannelSpec dephasing(RateProfile r) { return {ChannelKind::Dephasing, r}; }

    void validate() const;
    // Instantaneous rate; 0 for ChannelKind::None.
    double rate_at(double t) const;

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

// Collective operators on the two pseudospins:
//   AmplitudeDamping: s_- (x) I + I (x) s_-   with s_- = |0><1|
//   Dephasing:        s_z (x) I + I (x) s_z = diag(2, 0, 0, -2)
ComplexMatrix collapse_operator(ChannelKind kind);

// -i[h, rho] + gamma(t) (L rho L^dagger - {L^dagger L, rho} / 2)
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h, const ChannelSpec& channel, double t);

// H(t) = base + drive(t). Energy is always measured against `base`;
// ergotropy against the full H(t).
struct Hamiltonian {
    ComplexMatrix base;
    std::function<ComplexMatrix(double)> drive;

    ComplexMatrix at(double t) const;
    bool time_dependent() const noexcept { return static_cast<bool>(drive); }
};

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 100.0;
    std::size_t sample_stride = 100;
    double positivity_tol = 1e-6;
    double charging_dt = 1e-4;
    std::size_t charging_stride = 100;
    std::vector<double> snapshot_times;

    void validate() const;
    std::size_t steps() const;

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

struct PositivityWarning {
    double t = 0.0;
    double min_eig = 0.0;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> purity;
    std::vector<double> coherence;
    std::vector<double> ergotropy;
    std::vector<double> min_eig;
    std::vector<double> rate;
    std::map<double, DensityMatrix> snapshots;

    std::vector<PositivityWarning> positivity_warnings;
    double max_trace_drift = 0.0;             // largest per-step |Tr rho - 1| before correction
    double cumulative_trace_correction = 0.0;
    std::size_t renormalizations = 0;
    double min_raw_ergotropy = 0.0;           // most negative pre-clamp ergotropy seen
    ComplexMatrix final_state;

    std::size_t size() const noexcept { return times.size(); }
};

// Fixed-step classical RK4. After every step rho is symmetrized and, if the
// trace drifted by more than kTolerances.renormalize, renormalized. Samples are
// taken every `sample_stride` steps plus the final step; snapshots at
// cfg.snapshot_times (which must lie on the step grid).
//
// Throws NumericalError carrying the time stamp if a step goes non-finite.
TrajectoryRecord integrate(const DensityMatrix& rho0, const Hamiltonian& h, const ChannelSpec& channel,
                           const IntegratorConfig& cfg, const ObservableSet& observables = ObservableSet::all());

// Unitary charging from the ground state of H0 under H0 + pulse over the
// charging window; returns the state at the end of the window.
DensityMatrix charge_battery(const ModelParams& p, double dt);

struct TwoPhaseResult {
    DensityMatrix charged;
    TrajectoryRecord charging;
    TrajectoryRecord dissipative;
};

TwoPhaseResult run_two_phase(const ModelParams& p, const ChannelSpec& channel, const IntegratorConfig& cfg,
                             const ObservableSet& observables = ObservableSet::all());

} // namespace qbat
