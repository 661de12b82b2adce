#include "sns/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sns {

double epsilon_instant(const FourierField& field, double nu) {
    return nu * grad_norm_sq(field) / field.grid().volume();
}

TrajectoryAccumulators::TrajectoryAccumulators(double burn_in_, double t_end)
    : dissipation(burn_in_), velocity_sq(burn_in_), burn_in(burn_in_) {
    const double mid = 0.5 * (burn_in_ + t_end);
    dissipation_h1 = TimeAverager(burn_in_);
    dissipation_h2 = TimeAverager(mid);
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

double energy_balance_residual(const std::optional<BalanceLedger>& ledger) {
    if (!ledger) throw std::runtime_error("observer not attached");
    return ledger->residual();
}

TrajectoryStats finalize_trajectory(const TrajectoryAccumulators& acc,
                                    const std::optional<BalanceLedger>& ledger,
                                    std::size_t path_index, bool aborted,
                                    double stationarity_rel_tol) {
    TrajectoryStats out;
    out.path_index = path_index;
    out.aborted = aborted;
    if (!acc.dissipation.defined())
        throw std::runtime_error("time average undefined: empty window");
    out.eps_avg = acc.dissipation.average();
    out.usq_avg = acc.velocity_sq.average();
    out.u_rms = std::sqrt(out.usq_avg);
    out.balance_residual = ledger ? ledger->residual() : 0.0;
    if (acc.dissipation_h1.defined() && acc.dissipation_h2.defined()) {
        out.half_avg_1 = acc.dissipation_h1.average();
        out.half_avg_2 = acc.dissipation_h2.average();
        const double scale = std::max(std::abs(out.eps_avg), 1e-300);
        out.converged =
            std::abs(out.half_avg_1 - out.half_avg_2) <= stationarity_rel_tol * scale;
    }
    return out;
}

EnsembleStats ensemble_reduce(std::vector<TrajectoryStats> stats) {
    std::sort(stats.begin(), stats.end(),
              [](const TrajectoryStats& a, const TrajectoryStats& b) {
                  return a.path_index < b.path_index;
              });

    EnsembleStats out;
    std::vector<double> eps, urms;
    for (const TrajectoryStats& s : stats) {
        if (s.aborted) {
            ++out.aborted_count;
            continue;
        }
        eps.push_back(s.eps_avg);
        urms.push_back(s.u_rms);
    }
    out.per_path = std::move(stats);
    out.m = eps.size();
    if (out.m == 0) throw std::runtime_error("ensemble_reduce: all paths aborted");

    const double m = static_cast<double>(out.m);
    out.eps_mean = pairwise_sum(eps) / m;
    out.velocity_scale = pairwise_sum(urms) / m;

    if (out.m >= 2) {
        std::vector<double> dev_eps(out.m), dev_u(out.m);
        for (std::size_t i = 0; i < out.m; ++i) {
            const double de = eps[i] - out.eps_mean;
            const double du = urms[i] - out.velocity_scale;
            dev_eps[i] = de * de;
            dev_u[i] = du * du;
        }
        out.eps_var = pairwise_sum(dev_eps) / (m - 1.0);
        out.stderr_eps = std::sqrt(out.eps_var / m);
        out.stderr_u = std::sqrt(pairwise_sum(dev_u) / (m - 1.0) / m);
    }
    return out;
}

} // namespace sns
