// dynamics.cpp - Lindblad generator and fixed-step RK4 propagation

#include "qbat/dynamics.hpp"

#include "qbat/eigen.hpp"
#include "qbat/errors.hpp"
#include "qbat/tolerances.hpp"

#include <cmath>
#include <limits>

namespace qbat {

std::string to_string(ChannelKind kind) {
    switch (kind) {
    case ChannelKind::None: return "none";
    case ChannelKind::AmplitudeDamping: return "amplitude_damping";
    case ChannelKind::Dephasing: return "dephasing";
    }
    return "none";
}

ChannelKind channel_kind_from_string(const std::string& name) {
    if (name == "none") return ChannelKind::None;
    if (name == "amplitude_damping") return ChannelKind::AmplitudeDamping;
    if (name == "dephasing") return ChannelKind::Dephasing;
    throw UsageError("unknown channel kind '" + name + "' (expected none, amplitude_damping or dephasing)");
}

void validate(const RateProfile& rate) {
    if (const auto* c = std::get_if<ConstantRate>(&rate)) {
        if (!std::isfinite(c->gamma) || c->gamma < 0.0) {
            throw ValidationError("gamma", "constant rate must be finite and >= 0");
        }
        return;
    }
    const auto& e = std::get<ExpCosineRate>(rate);
    if (!std::isfinite(e.gamma0) || e.gamma0 < 0.0) {
        throw ValidationError("gamma0", "must be finite and >= 0");
    }
    if (!std::isfinite(e.beta) || e.beta < 0.0) {
        throw ValidationError("beta", "must be finite and >= 0");
    }
    if (!std::isfinite(e.omega)) {
        throw ValidationError("omega", "must be finite");
    }
}

double evaluate_rate(const RateProfile& rate, double t) {
    if (t < 0.0) {
        throw UsageError("evaluate_rate: t must be >= 0");
    }
    if (const auto* c = std::get_if<ConstantRate>(&rate)) {
        return c->gamma;
    }
    const auto& e = std::get<ExpCosineRate>(rate);
    return e.gamma0 * std::exp(-e.beta * t) * std::cos(e.omega * t);
}

void ChannelSpec::validate() const {
    qbat::validate(rate);
    if (kind == ChannelKind::None) {
        const auto* c = std::get_if<ConstantRate>(&rate);
        if (c == nullptr || c->gamma != 0.0) {
            throw ValidationError("rate", "channel kind none requires a zero constant rate");
        }
    }
}

double ChannelSpec::rate_at(double t) const {
    return kind == ChannelKind::None ? 0.0 : evaluate_rate(rate, t);
}

ComplexMatrix collapse_operator(ChannelKind kind) {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    switch (kind) {
    case ChannelKind::AmplitudeDamping:
        return kron(ops::lowering(), id) + kron(id, ops::lowering());
    case ChannelKind::Dephasing:
        return kron(ops::sigma_z(), id) + kron(id, ops::sigma_z());
    case ChannelKind::None:
        break;
    }
    throw UsageError("collapse_operator: channel kind none has no collapse operator");
}

ComplexMatrix Hamiltonian::at(double t) const {
    return drive ? base + drive(t) : base;
}

namespace {

// |rho_ij| <= 1 for any density matrix; far beyond that the step has blown up.
constexpr double kDivergenceBound = 1e3;

// out = a * b for same-dimension matrices, no allocation.
void mul_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum{};
            for (std::size_t k = 0; k < n; ++k) {
                sum += a(i, k) * b(k, j);
            }
            out(i, j) = sum;
        }
    }
}

// Precomputed L, L^dagger, L^dagger L plus scratch space for the RHS.
class Generator {
public:
    Generator(const ChannelSpec& channel, std::size_t dim)
        : channel_(channel), scratch_a_(dim), scratch_b_(dim), scratch_c_(dim) {
        if (channel.kind != ChannelKind::None) {
            l_ = collapse_operator(channel.kind);
            if (l_.dim() != dim) {
                throw UsageError("lindblad_rhs: collapse operator and rho have different dimensions");
            }
            l_dag_ = adjoint(l_);
            l_dag_l_ = l_dag_ * l_;
        }
    }

    void operator()(const ComplexMatrix& rho, const ComplexMatrix& h, double t, ComplexMatrix& out) {
        const std::size_t n = rho.dim();
        const Complex minus_i{0.0, -1.0};
        mul_into(h, rho, scratch_a_);
        mul_into(rho, h, scratch_b_);
        for (std::size_t i = 0; i < n * n; ++i) {
            out.entries()[i] = minus_i * (scratch_a_.entries()[i] - scratch_b_.entries()[i]);
        }
        const double rate = channel_.rate_at(t);
        if (channel_.kind == ChannelKind::None || rate == 0.0) {
            return;
        }
        mul_into(l_, rho, scratch_a_);
        mul_into(scratch_a_, l_dag_, scratch_c_);  // L rho L^dagger
        mul_into(l_dag_l_, rho, scratch_a_);
        mul_into(rho, l_dag_l_, scratch_b_);
        for (std::size_t i = 0; i < n * n; ++i) {
            out.entries()[i] += rate * (scratch_c_.entries()[i] -
                                        0.5 * (scratch_a_.entries()[i] + scratch_b_.entries()[i]));
        }
    }

private:
    ChannelSpec channel_;
    ComplexMatrix l_;
    ComplexMatrix l_dag_;
    ComplexMatrix l_dag_l_;
    ComplexMatrix scratch_a_;
    ComplexMatrix scratch_b_;
    ComplexMatrix scratch_c_;
};

struct StepStats {
    double max_drift = 0.0;
    double cumulative_correction = 0.0;
    std::size_t renormalizations = 0;
};

// Advances rho from step 0 to n_steps; calls on_step(k, rho) for k = 0 and
// after every completed step k.
template <class OnStep>
StepStats propagate(ComplexMatrix rho, const Hamiltonian& h, const ChannelSpec& channel, double dt,
                    std::size_t n_steps, OnStep&& on_step) {
    const std::size_t n = rho.dim();
    Generator rhs(channel, n);
    ComplexMatrix k1(n), k2(n), k3(n), k4(n), tmp(n);
    const bool varying = h.time_dependent();
    ComplexMatrix h_start = h.at(0.0);
    ComplexMatrix h_mid = h_start;
    ComplexMatrix h_end = h_start;
    StepStats stats;

    auto axpy = [n](const ComplexMatrix& x, double a, const ComplexMatrix& y, ComplexMatrix& out) {
        for (std::size_t i = 0; i < n * n; ++i) {
            out.entries()[i] = x.entries()[i] + a * y.entries()[i];
        }
    };

    on_step(std::size_t{0}, rho);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (varying) {
            h_start = h.at(t);
            h_mid = h.at(t + 0.5 * dt);
            h_end = h.at(t + dt);
        }
        rhs(rho, h_start, t, k1);
        axpy(rho, 0.5 * dt, k1, tmp);
        rhs(tmp, h_mid, t + 0.5 * dt, k2);
        axpy(rho, 0.5 * dt, k2, tmp);
        rhs(tmp, h_mid, t + 0.5 * dt, k3);
        axpy(rho, dt, k3, tmp);
        rhs(tmp, h_end, t + dt, k4);
        for (std::size_t i = 0; i < n * n; ++i) {
            rho.entries()[i] += (dt / 6.0) * (k1.entries()[i] + 2.0 * k2.entries()[i] + 2.0 * k3.entries()[i] +
                                              k4.entries()[i]);
        }

        const double t_next = static_cast<double>(k + 1) * dt;
        if (!rho.all_finite()) {
            throw NumericalError("integrate: non-finite density matrix", t_next);
        }
        rho = hermitian_part(rho);
        const double tr = trace(rho).real();
        const double drift = std::abs(tr - 1.0);
        stats.max_drift = std::max(stats.max_drift, drift);
        if (drift > kTolerances.trace || max_abs(rho) > kDivergenceBound) {
            throw NumericalError("integrate: step diverged (trace drift " + std::to_string(drift) +
                                     "); reduce dt",
                                 t_next);
        }
        if (drift > kTolerances.renormalize) {
            rho *= 1.0 / tr;
            stats.cumulative_correction += drift;
            ++stats.renormalizations;
        }
        on_step(k + 1, rho);
    }
    return stats;
}

std::size_t grid_index(double t, double dt, const char* what) {
    const double x = t / dt;
    const double idx = std::round(x);
    if (t < 0.0 || std::abs(x - idx) > 1e-6) {
        throw ValidationError(what, "time " + std::to_string(t) + " is not on the integration grid");
    }
    return static_cast<std::size_t>(idx);
}

} // namespace

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h, const ChannelSpec& channel, double t) {
    if (rho.dim() != h.dim()) {
        throw UsageError("lindblad_rhs: rho and h have different dimensions");
    }
    Generator rhs(channel, rho.dim());
    ComplexMatrix out(rho.dim());
    rhs(rho, h, t, out);
    return out;
}

void IntegratorConfig::validate() const {
    if (!std::isfinite(dt) || !(dt > 0.0)) {
        throw ValidationError("dt", "must be > 0");
    }
    if (!std::isfinite(t_end) || !(t_end > 0.0)) {
        throw ValidationError("t_end", "must be > 0");
    }
    if (dt > t_end) {
        throw ValidationError("dt", "must not exceed t_end");
    }
    if (sample_stride == 0) {
        throw ValidationError("sample_stride", "must be >= 1");
    }
    if (!std::isfinite(positivity_tol) || positivity_tol < 0.0) {
        throw ValidationError("positivity_tol", "must be >= 0");
    }
    if (!std::isfinite(charging_dt) || !(charging_dt > 0.0)) {
        throw ValidationError("charging_dt", "must be > 0");
    }
    if (charging_stride == 0) {
        throw ValidationError("charging_stride", "must be >= 1");
    }
    (void)steps();
    for (double s : snapshot_times) {
        if (!(s >= 0.0 && s <= t_end)) {
            throw ValidationError("snapshot_times", "time " + std::to_string(s) + " outside [0, t_end]");
        }
        (void)grid_index(s, dt, "snapshot_times");
    }
}

std::size_t IntegratorConfig::steps() const {
    return grid_index(t_end, dt, "t_end");
}

TrajectoryRecord integrate(const DensityMatrix& rho0, const Hamiltonian& h, const ChannelSpec& channel,
                           const IntegratorConfig& cfg, const ObservableSet& observables) {
    cfg.validate();
    channel.validate();
    if (!observables.any()) {
        throw UsageError("integrate: no observable selected");
    }
    if (h.base.dim() != rho0.dim()) {
        throw UsageError("integrate: Hamiltonian and state dimensions differ");
    }

    const std::size_t n_steps = cfg.steps();
    std::map<std::size_t, double> snapshot_steps;
    if (observables.snapshots) {
        for (double s : cfg.snapshot_times) {
            snapshot_steps.emplace(grid_index(s, cfg.dt, "snapshot_times"), s);
        }
    }

    TrajectoryRecord rec;
    const std::size_t expected = n_steps / cfg.sample_stride + 2;
    for (auto* v : {&rec.times, &rec.energy, &rec.purity, &rec.coherence, &rec.ergotropy, &rec.min_eig, &rec.rate}) {
        v->reserve(expected);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::size_t d = rho0.dim();

    auto on_step = [&](std::size_t k, const ComplexMatrix& rho) {
        const bool sample = k % cfg.sample_stride == 0 || k == n_steps;
        const auto snap = snapshot_steps.find(k);
        if (!sample && snap == snapshot_steps.end()) {
            return;
        }
        const double t = static_cast<double>(k) * cfg.dt;
        DensityMatrix state(rho, DensityMatrix::SkipPositivityCheck{});
        if (snap != snapshot_steps.end()) {
            rec.snapshots.insert_or_assign(snap->second, state);
        }
        if (!sample) {
            return;
        }
        const double lowest = state.min_eigenvalue();
        if (lowest < -cfg.positivity_tol) {
            rec.positivity_warnings.push_back({t, lowest});
        }
        rec.times.push_back(t);
        rec.energy.push_back(observables.energy ? energy(state, h.base) : nan);
        rec.purity.push_back(observables.purity ? purity_fidelity(state, d) : nan);
        rec.coherence.push_back(observables.coherence ? l1_coherence(state) : nan);
        if (observables.ergotropy) {
            const auto erg = ergotropy_detail(state, h.at(t));
            rec.min_raw_ergotropy = std::min(rec.min_raw_ergotropy, erg.raw);
            rec.ergotropy.push_back(erg.value);
        } else {
            rec.ergotropy.push_back(nan);
        }
        rec.min_eig.push_back(lowest);
        rec.rate.push_back(channel.rate_at(t));
        if (k == n_steps) {
            rec.final_state = rho;
        }
    };

    const auto stats = propagate(rho0.matrix(), h, channel, cfg.dt, n_steps, on_step);
    rec.max_trace_drift = stats.max_drift;
    rec.cumulative_trace_correction = stats.cumulative_correction;
    rec.renormalizations = stats.renormalizations;
    return rec;
}

namespace {

Hamiltonian charging_hamiltonian(const ModelParams& p) {
    const auto window = charging_window(p);
    return Hamiltonian{build_h0(p), [p, window](double t) { return pulse_hamiltonian(p, t - window.center); }};
}

} // namespace

DensityMatrix charge_battery(const ModelParams& p, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("charging_dt", "must be > 0");
    }
    const auto window = charging_window(p);
    const auto n_steps = static_cast<std::size_t>(std::llround(window.duration / dt));
    ComplexMatrix last;
    propagate(ground_state(p).matrix(), charging_hamiltonian(p), ChannelSpec::none(), window.duration / n_steps,
              n_steps, [&](std::size_t k, const ComplexMatrix& rho) {
                  if (k == n_steps) last = rho;
              });
    return DensityMatrix(std::move(last), DensityMatrix::SkipPositivityCheck{});
}

TwoPhaseResult run_two_phase(const ModelParams& p, const ChannelSpec& channel, const IntegratorConfig& cfg,
                             const ObservableSet& observables) {
    p.validate();
    cfg.validate();
    const auto window = charging_window(p);
    const auto n_charge = static_cast<std::size_t>(std::llround(window.duration / cfg.charging_dt));

    IntegratorConfig charging_cfg;
    charging_cfg.dt = window.duration / static_cast<double>(n_charge);
    charging_cfg.t_end = window.duration;
    charging_cfg.sample_stride = cfg.charging_stride;
    charging_cfg.positivity_tol = cfg.positivity_tol;
    ObservableSet charging_obs = observables;
    charging_obs.snapshots = false;
    if (!charging_obs.any()) {
        charging_obs.energy = true;
    }
    auto charging = integrate(ground_state(p), charging_hamiltonian(p), ChannelSpec::none(), charging_cfg, charging_obs);

    DensityMatrix charged(charging.final_state, DensityMatrix::SkipPositivityCheck{});
    auto dissipative = integrate(charged, Hamiltonian{build_h0(p), {}}, channel, cfg, observables);
    return {std::move(charged), std::move(charging), std::move(dissipative)};
}

} // namespace qbat
