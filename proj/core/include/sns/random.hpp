#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "sns/fourier_field.hpp"

namespace sns {

/// Deterministic random stream: std::mt19937_64 plus a self-contained
/// Box-Muller normal sampler (std::normal_distribution is not specified
/// bit-for-bit by the standard, so we do not use it).
class RandomStream {
public:
    RandomStream() : engine_(0) {}
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in (0, 1].
    double uniform() {
        const std::uint64_t bits = engine_();
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    bool operator==(const RandomStream&) const = default;

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Counter-based seed derivation: trajectory i draws its stream from
/// splitmix64(master + (i+1) * golden-gamma). Independent of execution order
/// and of the ensemble size.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Random Hermitian, mean-zero, divergence-free field whose pre-projection
/// L2 energy in each wavenumber shell matches the given amplitude exactly.
/// Shell s collects integer wavevectors with round(|k|) == s. Deterministic
/// for a fixed stream state; Nyquist planes are left empty.
FourierField random_divfree_field(const GridSpec& grid,
                                  const std::map<int, double>& shell_energy,
                                  RandomStream& rng);

} // namespace sns
