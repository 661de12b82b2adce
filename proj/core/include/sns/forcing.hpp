#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sns/random.hpp"
#include "sns/spectral_workspace.hpp"

namespace sns {

/// Time schedule s(t) >= 0 multiplying all noise amplitudes. Only bounded
/// forms are representable, which keeps the covariance trace-class for all t.
struct Schedule {
    enum class Kind { Constant, StepDown, ExpDecay };
    Kind kind = Kind::Constant;
    double param = 0.0; // switch time or decay rate

    double value(double t) const {
        switch (kind) {
            case Kind::Constant: return 1.0;
            case Kind::StepDown: return t < param ? 1.0 : 0.0;
            case Kind::ExpDecay: return std::exp(-param * t);
        }
        return 1.0;
    }
    bool constant() const { return kind == Kind::Constant; }
    std::string describe() const;
};

/// One forced degree of freedom: a wavevector, a polarization index in the
/// plane perpendicular to it, and a noise amplitude.
struct ForcedMode {
    IVec3 k{0, 0, 0};
    int polarization = 0;
    double amplitude = 0.0;

    ForcedMode() = default;
    ForcedMode(IVec3 k_, int pol, double amp);
};

struct NoiseSpec {
    std::vector<ForcedMode> modes;
    Schedule schedule{};

    NoiseSpec() = default;
    /// Validates k != 0, uniqueness of (k, polarization) pairs.
    explicit NoiseSpec(std::vector<ForcedMode> modes_, Schedule schedule_ = {});

    double amplitude_sq_sum() const;
};

/// Deterministic body force with its derived scales.
struct DeterministicForce {
    FourierField field;
    double amplitude = 0.0;    // rms of f over the box
    double grad_rms = 0.0;     // rms of grad f
    double grad_sup = 0.0;     // pointwise sup of |grad f| (Frobenius)
    double length_scale = 0.0; // min of ell and the two gradient ratios
};

/// Real, divergence-free, unit-L2-norm field supported on the +/-k pair.
///
/// The polarization frame is the deterministic Craya-Herring pair built from
/// the lexicographically positive representative of {k, -k}: e0 along k x z
/// (k x x for k parallel to z), e1 along k x e0. The positive representative
/// carries the cosine profile and the negative one the sine profile, so the
/// up-to-two modes a configuration may force per wavevector pair stay
/// mutually orthogonal.
FourierField basis_field(const ForcedMode& mode, const GridSpec& grid);

/// Coefficient of the basis field at its canonical stored wavevector.
/// Exposed for the integrator, which applies noise without building fields.
struct BasisModeCoeff {
    IVec3 k_store; // canonical (lexicographically positive) wavevector
    CVec3 value;   // coefficient at +k_store
};
BasisModeCoeff basis_mode_coeff(const ForcedMode& mode, const GridSpec& grid);

/// Tr(g*g(t)) = sum_k (s(t) g_k)^2.
double trace_covariance(const NoiseSpec& spec, double t);

/// One Wiener increment of the forcing: sum_k s(t) g_k e_k dW_k with
/// independent N(0, dt) scalars, drawn in mode-list order.
FourierField sample_noise_increment(const NoiseSpec& spec, const GridSpec& grid,
                                    double dt, RandomStream& rng, double t = 0.0);

/// Volume-normalized, time-averaged noise energy injection rate. The time
/// average uses the same left-endpoint step grid as the integrator; constant
/// schedules short-circuit to the exact sum.
double compute_G_sq(const NoiseSpec& spec, const GridSpec& grid, double t_end, double dt);
inline double compute_G(const NoiseSpec& spec, const GridSpec& grid, double t_end, double dt) {
    return std::sqrt(compute_G_sq(spec, grid, t_end, dt));
}

/// Time average of Tr(g*g)^2 (finite for every representable schedule).
double compute_trace_sq_avg(const NoiseSpec& spec, double t_end, double dt);

/// Force amplitude, gradient scales and the forcing length scale.
DeterministicForce compute_F_L(const FourierField& force, SpectralWorkspace& ws);

} // namespace sns
