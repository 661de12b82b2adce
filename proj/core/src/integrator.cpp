#include "sns/integrator.hpp"

#include <cmath>
#include <numbers>

namespace sns {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fused single pass over the spectrum: ||u||^2, ||grad u||^2 and (f, u).
struct PreDiagnostics {
    double energy = 0.0;
    double grad_sq = 0.0;
    double force_work = 0.0;
};

PreDiagnostics spectral_diagnostics(const FourierField& u, const FourierField* f) {
    const GridSpec& g = u.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    const double kscale_sq = (kTwoPi / g.ell) * (kTwoPi / g.ell);
    double energy = 0.0, grad = 0.0, work = 0.0;
    std::size_t idx = 0;
    const std::size_t nm = g.modes_per_component();
    const Complex* base = u.raw().data();
    const Complex* fbase = f ? f->raw().data() : nullptr;
    for (int mx = 0; mx < n; ++mx) {
        const double kx = g.freq(mx);
        for (int my = 0; my < n; ++my) {
            const double ky = g.freq(my);
            for (int mz = 0; mz < nzh; ++mz, ++idx) {
                const double w = spectral_weight(g, mz);
                const double ksq = kx * kx + ky * ky + double(mz) * mz;
                double msq = 0.0;
                double dot = 0.0;
                for (int c = 0; c < 3; ++c) {
                    const Complex v = base[c * nm + idx];
                    msq += std::norm(v);
                    if (fbase) {
                        const Complex fv = fbase[c * nm + idx];
                        dot += fv.real() * v.real() + fv.imag() * v.imag();
                    }
                }
                energy += w * msq;
                grad += w * ksq * msq;
                work += w * dot;
            }
        }
    }
    PreDiagnostics out;
    const double vol = g.volume();
    out.energy = vol * energy;
    out.grad_sq = vol * kscale_sq * grad;
    out.force_work = vol * work;
    return out;
}

double energy_only(const FourierField& u) {
    const GridSpec& g = u.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    const std::size_t nm = g.modes_per_component();
    const Complex* base = u.raw().data();
    double energy = 0.0;
    std::size_t idx = 0;
    for (int mx = 0; mx < n; ++mx)
        for (int my = 0; my < n; ++my)
            for (int mz = 0; mz < nzh; ++mz, ++idx) {
                const double w = spectral_weight(g, mz);
                double msq = 0.0;
                for (int c = 0; c < 3; ++c) msq += std::norm(base[c * nm + idx]);
                energy += w * msq;
            }
    return g.volume() * energy;
}

} // namespace

void SolverParams::validate() const {
    if (!(nu > 0.0)) throw std::invalid_argument("solver: nu must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("solver: dt must be positive");
    if (t_end < 0.0) throw std::invalid_argument("solver: t_end must be >= 0");
    if (burn_in < 0.0) throw std::invalid_argument("solver: burn_in must be >= 0");
    if (t_end > 0.0 && burn_in >= t_end)
        throw std::invalid_argument("solver: burn_in must be < t_end");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("solver: cfl_safety must be in (0, 1]");
}

long SolverParams::steps() const { return std::lround(t_end / dt); }

StepTables make_step_tables(const GridSpec& grid, const SolverParams& params,
                            const NoiseSpec* noise) {
    StepTables tables;
    tables.grid = grid;
    tables.nu = params.nu;
    tables.dt = params.dt;
    const int n = grid.n;
    const int nzh = grid.nz_half();
    const double kscale_sq = (kTwoPi / grid.ell) * (kTwoPi / grid.ell);
    tables.decay.resize(grid.modes_per_component());
    std::size_t idx = 0;
    for (int mx = 0; mx < n; ++mx) {
        const double kx = grid.freq(mx);
        for (int my = 0; my < n; ++my) {
            const double ky = grid.freq(my);
            for (int mz = 0; mz < nzh; ++mz, ++idx) {
                const double ksq = kx * kx + ky * ky + double(mz) * mz;
                tables.decay[idx] = std::exp(-params.nu * kscale_sq * ksq * params.dt);
            }
        }
    }
    if (noise) {
        tables.noise.reserve(noise->modes.size());
        for (const ForcedMode& m : noise->modes) {
            StepTables::NoiseEntry e;
            e.coeff = basis_mode_coeff(m, grid);
            e.amplitude = m.amplitude;
            const double ksq = double(m.k[0]) * m.k[0] + double(m.k[1]) * m.k[1] +
                               double(m.k[2]) * m.k[2];
            e.mu = params.nu * kscale_sq * ksq;
            e.amp_ou = m.amplitude *
                       std::sqrt((1.0 - std::exp(-2.0 * e.mu * params.dt)) / (2.0 * e.mu));
            e.amp_plain = m.amplitude * std::sqrt(params.dt);
            tables.noise.push_back(e);
        }
    }
    return tables;
}

double mode_projection(const FourierField& u, const BasisModeCoeff& coeff) {
    const CVec3 uc = u.mode(coeff.k_store);
    double dot = 0.0;
    for (int c = 0; c < 3; ++c)
        dot += coeff.value[c].real() * uc[c].real() + coeff.value[c].imag() * uc[c].imag();
    return 2.0 * u.grid().volume() * dot;
}

SolverState step(SolverState state, const SolverParams& params,
                 const DeterministicForce* force, const NoiseSpec* noise,
                 SpectralWorkspace& ws, StepDiagnostics* diag,
                 const StepTables* tables) {
    const GridSpec& g = state.field.grid();
    StepTables local;
    if (!tables) {
        local = make_step_tables(g, params, noise);
        tables = &local;
    }

    StepDiagnostics d;
    d.t_pre = state.t;
    d.dt = params.dt;
    const FourierField* ffield =
        (force && force->amplitude > 0.0) ? &force->field : nullptr;
    const PreDiagnostics pre = spectral_diagnostics(state.field, ffield);
    d.energy_pre = pre.energy;
    d.grad_sq_pre = pre.grad_sq;
    d.force_work_pre = pre.force_work;
    d.trace_dt = noise ? trace_covariance(*noise, state.t) * params.dt : 0.0;

    // Ito projections (e_k, u(t_j)) of the pre-step field, taken before any
    // update touches the coefficients.
    std::vector<double> projections(tables->noise.size());
    for (std::size_t i = 0; i < tables->noise.size(); ++i)
        projections[i] = mode_projection(state.field, tables->noise[i].coeff);

    // Nonlinear term on the pre-step field (explicit).
    FourierField nonlinear;
    if (!params.linear_only) nonlinear = nonlinear_term(state.field, ws, &d.max_velocity);

    // coeff' = e^{-mu dt} (coeff + dt N + dt f)
    const double dt = params.dt;
    const std::size_t nm = g.modes_per_component();
    Complex* u = state.field.raw().data();
    const Complex* nl = params.linear_only ? nullptr : nonlinear.raw().data();
    const Complex* fc = ffield ? ffield->raw().data() : nullptr;
    for (int c = 0; c < 3; ++c) {
        Complex* uc = u + c * nm;
        const Complex* nc = nl ? nl + c * nm : nullptr;
        const Complex* fcc = fc ? fc + c * nm : nullptr;
        for (std::size_t i = 0; i < nm; ++i) {
            Complex v = uc[i];
            if (nc) v += dt * nc[i];
            if (fcc) v += dt * fcc[i];
            uc[i] = tables->decay[i] * v;
        }
    }

    // Noise, with the Ito work recorded against the pre-step projections.
    if (noise && !tables->noise.empty()) {
        const double s = noise->schedule.value(d.t_pre);
        for (std::size_t i = 0; i < tables->noise.size(); ++i) {
            const StepTables::NoiseEntry& e = tables->noise[i];
            const double xi = state.stream.normal();
            const double amp =
                (params.noise_form == NoiseForm::OuExact ? e.amp_ou : e.amp_plain) * s;
            CVec3 v = e.coeff.value;
            for (int c = 0; c < 3; ++c) v[c] *= amp * xi;
            state.field.add_mode(e.coeff.k_store, v);
            d.noise_work += amp * xi * projections[i];
        }
    }

    hermitian_repair(state.field);
    leray_project_inplace(state.field);

    d.energy_post = energy_only(state.field);
    if (!std::isfinite(d.energy_post)) throw BlowUpError(state.t + dt);

    state.t = d.t_pre + dt;
    state.step_index += 1;
    if (diag) *diag = d;
    return state;
}

double cfl_check(const SolverState& state, const SolverParams& params,
                 SpectralWorkspace& ws) {
    const PhysicalField phys = to_physical(state.field, ws);
    const double umax = max_pointwise_norm(phys);
    if (umax == 0.0) return std::numeric_limits<double>::infinity();
    return params.cfl_safety * state.field.grid().dx() / umax;
}

TrajectoryRecord run_trajectory(const SolverParams& params,
                                const DeterministicForce* force,
                                const NoiseSpec* noise, const FourierField& u0,
                                std::uint64_t seed,
                                const std::vector<Observer>& observers,
                                SpectralWorkspace& ws, RunOptions options) {
    params.validate();
    const GridSpec& g = u0.grid();

    TrajectoryRecord rec;
    rec.seed = seed;
    rec.initial_energy = l2_norm_sq(u0);

    SolverState state;
    state.field = u0;
    state.stream = RandomStream(seed);

    const long total_steps = params.steps();
    const StepTables tables = make_step_tables(g, params, noise);

    // Kinetic-energy guard (volume-normalized): guard_multiple of the
    // stationary bound plus the initial energy.
    const double poincare = (g.ell / kTwoPi) * (g.ell / kTwoPi);
    const double guard_g2 = noise ? noise->amplitude_sq_sum() / g.volume() : 0.0;
    const double famp = force ? force->amplitude : 0.0;
    rec.energy_guard_bound =
        params.energy_guard *
            (2.0 * guard_g2 * poincare / params.nu +
             famp * famp * poincare * poincare / (params.nu * params.nu)) +
        rec.initial_energy / g.volume();

    TrajectoryAccumulators acc(params.burn_in, params.t_end);
    BalanceLedger ledger;
    ledger.nu = params.nu;
    ledger.initial_energy = rec.initial_energy;
    ledger.final_energy = rec.initial_energy;
    ledger.duration = params.t_end;

    FourierField previous = state.field;
    for (long j = 0; j < total_steps; ++j) {
        previous = state.field;

        StepDiagnostics diag;
        try {
            state = step(std::move(state), params, force, noise, ws, &diag, &tables);
        } catch (const BlowUpError& err) {
            rec.aborted = true;
            rec.abort_time = err.t;
            rec.abort_reason = err.what();
            // Keep the last finite field; the stream state after a throw is
            // unspecified, so pin it for determinism of the record.
            state.field = previous;
            state.t = static_cast<double>(j) * params.dt;
            state.step_index = j;
            state.stream = RandomStream(seed);
            break;
        }

        // Accumulate statistics on the pre-step values (left endpoint).
        const double eps_pre = params.nu * diag.grad_sq_pre / g.volume();
        acc.dissipation.accumulate(eps_pre, diag.t_pre, params.dt);
        acc.dissipation_h1.accumulate(eps_pre, diag.t_pre, params.dt);
        acc.dissipation_h2.accumulate(eps_pre, diag.t_pre, params.dt);
        acc.velocity_sq.accumulate(diag.energy_pre / g.volume(), diag.t_pre, params.dt);
        rec.u6_integral += diag.energy_pre * diag.energy_pre * diag.energy_pre * params.dt;

        ledger.final_energy = diag.energy_post;
        ledger.dissipation_integral += diag.grad_sq_pre * params.dt;
        ledger.trace_integral += diag.trace_dt;
        ledger.force_work_integral += diag.force_work_pre * params.dt;
        ledger.noise_work_sum += diag.noise_work;

        if (diag.energy_post / g.volume() > rec.energy_guard_bound)
            ++rec.guard_violations;
        if (!params.linear_only && std::isfinite(diag.max_velocity) &&
            diag.max_velocity > 0.0) {
            const double advisory = params.cfl_safety * g.dx() / diag.max_velocity;
            rec.min_cfl_advisory = std::min(rec.min_cfl_advisory, advisory);
            if (params.dt > advisory) ++rec.cfl_violations;
        }

        rec.steps_completed = j + 1;
        if (!observers.empty()) {
            const StepContext ctx{j,
                                  diag.t_pre,
                                  params.dt,
                                  previous,
                                  state.field,
                                  diag,
                                  options.collect_balance ? ledger.residual() : 0.0};
            for (const Observer& obs : observers) obs(ctx);
        }
    }

    rec.final_state = std::move(state);
    if (options.collect_balance) {
        ledger.duration = rec.final_state.t;
        rec.ledger = ledger;
    }
    if (acc.dissipation.defined()) {
        rec.stats = finalize_trajectory(acc, rec.ledger, rec.path_index, rec.aborted,
                                        params.stationarity_rel_tol);
    }
    return rec;
}

} // namespace sns
