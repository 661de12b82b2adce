#include "sns/forcing.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sns {

namespace {

bool lexicographically_positive(const IVec3& k) {
    if (k[0] != 0) return k[0] > 0;
    if (k[1] != 0) return k[1] > 0;
    return k[2] > 0;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
    const double m = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / m, v[1] / m, v[2] / m};
}

// Craya-Herring frame perpendicular to k (tie-broken with x for k || z).
std::array<Vec3, 2> polarization_frame(const IVec3& k) {
    const Vec3 kv{double(k[0]), double(k[1]), double(k[2])};
    const bool parallel_z = (k[0] == 0 && k[1] == 0);
    const Vec3 ref = parallel_z ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
    const Vec3 e0 = normalized(cross(kv, ref));
    const Vec3 e1 = normalized(cross(kv, e0));
    return {e0, e1};
}

} // namespace

std::string Schedule::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Constant: os << "constant"; break;
        case Kind::StepDown: os << "step_down " << param; break;
        case Kind::ExpDecay: os << "exp_decay " << param; break;
    }
    return os.str();
}

ForcedMode::ForcedMode(IVec3 k_, int pol, double amp)
    : k(k_), polarization(pol), amplitude(amp) {
    if (k[0] == 0 && k[1] == 0 && k[2] == 0)
        throw std::invalid_argument("forced mode: k must be nonzero");
    if (pol != 0 && pol != 1)
        throw std::invalid_argument("forced mode: polarization must be 0 or 1");
    if (!(amp >= 0.0) || !std::isfinite(amp))
        throw std::invalid_argument("forced mode: amplitude must be finite and >= 0");
}

NoiseSpec::NoiseSpec(std::vector<ForcedMode> modes_, Schedule schedule_)
    : modes(std::move(modes_)), schedule(schedule_) {
    std::set<std::array<int, 4>> seen;
    for (const ForcedMode& m : modes) {
        if (!seen.insert({m.k[0], m.k[1], m.k[2], m.polarization}).second)
            throw std::invalid_argument("duplicate mode");
    }
}

double NoiseSpec::amplitude_sq_sum() const {
    double s = 0.0;
    for (const ForcedMode& m : modes) s += m.amplitude * m.amplitude;
    return s;
}

BasisModeCoeff basis_mode_coeff(const ForcedMode& mode, const GridSpec& grid) {
    const int limit = grid.n / 2 - 1;
    for (int c = 0; c < 3; ++c)
        if (std::abs(mode.k[c]) > limit)
            throw std::invalid_argument("mode unresolvable");

    const bool positive = lexicographically_positive(mode.k);
    const IVec3 kc = positive ? mode.k
                              : IVec3{-mode.k[0], -mode.k[1], -mode.k[2]};
    const auto frame = polarization_frame(kc);
    const Vec3& p = frame[mode.polarization];
    const double beta = 1.0 / std::sqrt(2.0 * grid.volume());

    CVec3 value;
    for (int c = 0; c < 3; ++c)
        value[c] = positive ? Complex{beta * p[c], 0.0}   // cosine profile
                            : Complex{0.0, -beta * p[c]}; // sine profile
    return BasisModeCoeff{kc, value};
}

FourierField basis_field(const ForcedMode& mode, const GridSpec& grid) {
    const BasisModeCoeff bc = basis_mode_coeff(mode, grid);
    FourierField field(grid);
    field.set_mode(bc.k_store, bc.value);
    return field;
}

double trace_covariance(const NoiseSpec& spec, double t) {
    const double s = spec.schedule.value(t);
    return s * s * spec.amplitude_sq_sum();
}

FourierField sample_noise_increment(const NoiseSpec& spec, const GridSpec& grid,
                                    double dt, RandomStream& rng, double t) {
    if (dt < 0.0) throw std::invalid_argument("sample_noise_increment: dt must be >= 0");
    FourierField field(grid);
    const double s = spec.schedule.value(t);
    const double root_dt = std::sqrt(dt);
    for (const ForcedMode& m : spec.modes) {
        const double dw = root_dt * rng.normal();
        const BasisModeCoeff bc = basis_mode_coeff(m, grid);
        CVec3 v = bc.value;
        const double a = s * m.amplitude * dw;
        for (int c = 0; c < 3; ++c) v[c] *= a;
        field.add_mode(bc.k_store, v);
    }
    return field;
}

double compute_G_sq(const NoiseSpec& spec, const GridSpec& grid, double t_end, double dt) {
    if (spec.schedule.constant()) return spec.amplitude_sq_sum() / grid.volume();
    if (!(t_end > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("compute_G: window and step must be positive");
    const long steps = std::lround(t_end / dt);
    double sum = 0.0;
    for (long j = 0; j < steps; ++j) sum += trace_covariance(spec, j * dt) * dt;
    return sum / (t_end * grid.volume());
}

double compute_trace_sq_avg(const NoiseSpec& spec, double t_end, double dt) {
    const double tr0 = spec.amplitude_sq_sum();
    if (spec.schedule.constant()) return tr0 * tr0;
    if (!(t_end > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("compute_trace_sq_avg: window and step must be positive");
    const long steps = std::lround(t_end / dt);
    double sum = 0.0;
    for (long j = 0; j < steps; ++j) {
        const double tr = trace_covariance(spec, j * dt);
        sum += tr * tr * dt;
    }
    return sum / t_end;
}

DeterministicForce compute_F_L(const FourierField& force, SpectralWorkspace& ws) {
    const GridSpec& g = force.grid();
    DeterministicForce out;
    out.field = force;
    out.amplitude = std::sqrt(l2_norm_sq(force) / g.volume());
    out.grad_rms = std::sqrt(grad_norm_sq(force) / g.volume());

    if (out.amplitude > 0.0) {
        const auto grad = gradient_physical(force, ws);
        double best = 0.0;
        for (std::size_t p = 0; p < g.points(); ++p) {
            double frob = 0.0;
            for (int e = 0; e < 9; ++e) frob += grad[e][p] * grad[e][p];
            if (frob > best) best = frob;
        }
        out.grad_sup = std::sqrt(best);
        out.length_scale = std::min({g.ell, out.amplitude / out.grad_rms,
                                     out.amplitude / out.grad_sup});
    } else {
        out.grad_sup = 0.0;
        out.length_scale = g.ell;
    }
    return out;
}

} // namespace sns
