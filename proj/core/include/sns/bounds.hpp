#pragma once

#include <string>
#include <vector>

namespace sns {

/// Estimated and exact quantities feeding every audited inequality.
struct AuditInputs {
    double eps_mean = 0.0;
    double stderr_eps = 0.0;
    double eps_var = 0.0;
    std::size_t m = 0; // ensemble size behind the variance estimate
    double G_sq = 0.0; // volume-normalized noise energy rate
    double F = 0.0;    // deterministic force amplitude
    double L = 0.0;    // forcing length scale
    double U = 0.0;    // rms velocity scale
    double stderr_U = 0.0;
    double nu = 0.0;
    double ell = 0.0;
    // Energy-equality surrogate: the discrete balance defect, normalized by
    // run length and injection rate, against its configured tolerance.
    double balance_rel = 0.0;
    double balance_tol = 0.05;
    double zeroth_rel_tol = 0.05;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;    // rhs - lhs
    double stat_band = 0.0; // statistical tolerance band
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    double reynolds = 0.0;
    bool energy_equality_ok = false;
    bool dominance_ok = false;
    std::string assumption_note; // records the balance-residual surrogate
};

/// Re = U L / nu; 0 when U = 0. Throws for nu <= 0.
double reynolds(double U, double L, double nu);

/// E<eps> <= G^2/2 + F U.
BoundCheck check_intermediate_upper(const AuditInputs& in);
/// E<eps> <= G^2 + (2 + 1/Re) U^3 / L (rhs collapses to G^2 when U = 0).
BoundCheck check_upper_bound(const AuditInputs& in);
/// F <= U^2/L + (1/2) U nu / L^2 + (1/2) eps / U; inconclusive when U = 0.
BoundCheck check_F_estimate(const AuditInputs& in);
/// Stochastic dominance: 2 F U < G^2, strict.
BoundCheck check_dominance(const AuditInputs& in);
/// The four two-sided bounds; inconclusive unless dominance and the energy
/// equality surrogate both hold.
std::vector<BoundCheck> check_two_sided(const AuditInputs& in);
/// |eps_mean - G^2/2| <= max(3 stderr, rel_tol G^2/2); requires F = 0.
BoundCheck check_zeroth_law(const AuditInputs& in, double rel_tol);
/// Variance bounds (two general, plus the F = 0 form). Throws for m < 2.
std::vector<BoundCheck> check_variance_bounds(const AuditInputs& in);

/// Runs every check in a fixed order.
BoundReport build_report(const AuditInputs& in);

} // namespace sns
