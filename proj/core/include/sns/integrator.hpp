#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "sns/forcing.hpp"
#include "sns/nonlinear.hpp"
#include "sns/statistics.hpp"

namespace sns {

enum class NoiseForm { OuExact, Plain };

struct SolverParams {
    double nu = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    double burn_in = 0.0;
    bool linear_only = false;
    double cfl_safety = 0.5;
    NoiseForm noise_form = NoiseForm::OuExact;
    double energy_guard = 10.0;          // multiple in the kinetic-energy diagnostic
    double stationarity_rel_tol = 0.1;   // split-half agreement threshold

    void validate() const;
    long steps() const;
};

struct SolverState {
    double t = 0.0;
    FourierField field;
    RandomStream stream;
    long step_index = 0;
};

/// Per-step quantities sampled around one update. "pre" values use the field
/// at the start of the step (Ito convention).
struct StepDiagnostics {
    double t_pre = 0.0;
    double dt = 0.0;
    double energy_pre = 0.0;     // ||u||^2
    double grad_sq_pre = 0.0;    // ||grad u||^2
    double force_work_pre = 0.0; // (f, u)
    double noise_work = 0.0;     // (u_pre, eta): the realized Ito increment
    double trace_dt = 0.0;       // Tr(g*g(t_pre)) dt
    double energy_post = 0.0;
    double max_velocity = std::numeric_limits<double>::quiet_NaN();
};

/// Precomputed per-slot decay factors and per-mode noise amplitudes for a
/// fixed (grid, nu, dt, noise) combination.
struct StepTables {
    GridSpec grid;
    double nu = 0.0;
    double dt = 0.0;
    std::vector<double> decay; // exp(-nu |kt|^2 dt) per stored slot
    struct NoiseEntry {
        BasisModeCoeff coeff;
        double amplitude = 0.0; // configured g_k
        double mu = 0.0;        // nu |kt|^2 of the forced wavevector
        double amp_ou = 0.0;    // g sqrt((1 - e^{-2 mu dt}) / (2 mu))
        double amp_plain = 0.0; // g sqrt(dt)
    };
    std::vector<NoiseEntry> noise;
};

StepTables make_step_tables(const GridSpec& grid, const SolverParams& params,
                            const NoiseSpec* noise);

/// L2 projection of the state onto a basis mode: (e_k, u).
double mode_projection(const FourierField& u, const BasisModeCoeff& coeff);

struct BlowUpError : std::runtime_error {
    double t;
    explicit BlowUpError(double t_)
        : std::runtime_error("blow-up at t = " + std::to_string(t_)), t(t_) {}
};

/// One exponential Euler-Maruyama update: per wavevector,
///   coeff' = e^{-mu dt} (coeff + dt N + dt f) + eta,
/// with exact-OU (or plain sqrt(dt)) noise amplitudes, then Hermitian repair
/// and Leray projection. Throws BlowUpError on non-finite coefficients.
SolverState step(SolverState state, const SolverParams& params,
                 const DeterministicForce* force, const NoiseSpec* noise,
                 SpectralWorkspace& ws, StepDiagnostics* diag = nullptr,
                 const StepTables* tables = nullptr);

/// Advisory maximum step: cfl_safety * dx / max_x |u(x)|; +inf for u = 0.
double cfl_check(const SolverState& state, const SolverParams& params,
                 SpectralWorkspace& ws);

struct StepContext {
    long step_index = 0;
    double t_pre = 0.0;
    double dt = 0.0;
    const FourierField& pre;
    const FourierField& post;
    const StepDiagnostics& diag;
    double balance_partial = 0.0; // running residual R(t) through this step
};
using Observer = std::function<void(const StepContext&)>;

struct TrajectoryRecord {
    std::size_t path_index = 0;
    std::uint64_t seed = 0;
    SolverState final_state;
    std::optional<TrajectoryStats> stats;
    std::optional<BalanceLedger> ledger;
    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_reason;
    double initial_energy = 0.0;
    long steps_completed = 0;
    // Diagnostics
    double min_cfl_advisory = std::numeric_limits<double>::infinity();
    long cfl_violations = 0;
    double energy_guard_bound = std::numeric_limits<double>::infinity();
    long guard_violations = 0;
    double u6_integral = 0.0; // left sum of ||u||^6 dt (sixth-moment diagnostic)
};

struct RunOptions {
    bool collect_balance = true;
};

/// Runs one path from t = 0 to t_end. Bitwise deterministic given
/// (seed, params, force, noise, u0); a blow-up aborts the path and keeps the
/// partial statistics with the aborted flag set.
TrajectoryRecord run_trajectory(const SolverParams& params,
                                const DeterministicForce* force,
                                const NoiseSpec* noise, const FourierField& u0,
                                std::uint64_t seed,
                                const std::vector<Observer>& observers,
                                SpectralWorkspace& ws, RunOptions options = {});

} // namespace sns
