#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sns/fourier_field.hpp"

namespace sns {

/// Running left-endpoint time integral with burn-in discard. Contributions
/// straddling the burn-in threshold are prorated.
class TimeAverager {
public:
    TimeAverager() = default;
    explicit TimeAverager(double burn_in) : burn_in_(burn_in) {}

    void accumulate(double value, double t, double dt) {
        if (!(dt > 0.0)) throw std::invalid_argument("accumulate: dt must be positive");
        const double t1 = t + dt;
        if (t1 <= burn_in_) return;
        const double span = t >= burn_in_ ? dt : t1 - burn_in_;
        integral_ += value * span;
        elapsed_ += span;
    }

    bool defined() const { return elapsed_ > 0.0; }
    double average() const {
        if (!defined()) throw std::runtime_error("time average undefined: empty window");
        return integral_ / elapsed_;
    }
    double integral() const { return integral_; }
    double elapsed() const { return elapsed_; }
    double burn_in() const { return burn_in_; }

private:
    double integral_ = 0.0;
    double elapsed_ = 0.0;
    double burn_in_ = 0.0;
};

/// nu * ||grad u||^2 / |D|: instantaneous dissipation rate per unit mass.
double epsilon_instant(const FourierField& field, double nu);

/// Per-path accumulators a trajectory drives step by step.
struct TrajectoryAccumulators {
    TimeAverager dissipation;     // <eps>
    TimeAverager velocity_sq;     // <||u||^2/|D|>
    TimeAverager dissipation_h1;  // first half of the averaging window
    TimeAverager dissipation_h2;  // second half
    double burn_in = 0.0;

    TrajectoryAccumulators() = default;
    TrajectoryAccumulators(double burn_in_, double t_end);
};

/// Everything the discrete energy identity needs from one trajectory.
struct BalanceLedger {
    double initial_energy = 0.0;     // ||u_0||^2
    double final_energy = 0.0;       // ||u(T)||^2
    double dissipation_integral = 0.0; // sum_j ||grad u(t_j)||^2 dt (left endpoint)
    double trace_integral = 0.0;     // sum_j Tr(g*g(t_j)) dt
    double force_work_integral = 0.0; // sum_j (f, u(t_j)) dt
    double noise_work_sum = 0.0;     // sum_j (u(t_j), eta_j), Ito convention
    double nu = 0.0;
    double duration = 0.0;

    double residual() const {
        return final_energy + 2.0 * nu * dissipation_integral - initial_energy -
               trace_integral - 2.0 * force_work_integral - 2.0 * noise_work_sum;
    }
};

struct TrajectoryStats {
    std::size_t path_index = 0;
    double eps_avg = 0.0;
    double usq_avg = 0.0;
    double u_rms = 0.0;
    double balance_residual = 0.0;
    bool aborted = false;
    bool converged = false; // split-half stationarity diagnostic
    double half_avg_1 = 0.0;
    double half_avg_2 = 0.0;
};

struct EnsembleStats {
    std::size_t m = 0; // paths included (aborted ones excluded)
    std::size_t aborted_count = 0;
    double eps_mean = 0.0;
    double eps_var = 0.0;    // unbiased sample variance, 0 for m == 1
    double velocity_scale = 0.0; // U: mean over paths of u_rms
    double stderr_eps = 0.0; // sqrt(eps_var / m), 0 for m == 1
    double stderr_u = 0.0;
    std::vector<TrajectoryStats> per_path; // sorted by path index
};

/// Fixed-order pairwise summation, independent of how the values were
/// produced or scheduled.
double pairwise_sum(std::span<const double> values);

/// Discrete energy-identity defect R(T). Throws "observer not attached" when
/// the record carries no balance ledger.
double energy_balance_residual(const std::optional<BalanceLedger>& ledger);

/// Packages the per-path accumulators; throws on an empty averaging window.
TrajectoryStats finalize_trajectory(const TrajectoryAccumulators& acc,
                                    const std::optional<BalanceLedger>& ledger,
                                    std::size_t path_index, bool aborted,
                                    double stationarity_rel_tol);

/// Ensemble reduction at fixed path order. Requires at least one non-aborted
/// path; U is the mean of per-path u_rms (square root before expectation).
EnsembleStats ensemble_reduce(std::vector<TrajectoryStats> stats);

} // namespace sns
