#include "sns/random.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sns {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

FourierField random_divfree_field(const GridSpec& grid,
                                  const std::map<int, double>& shell_energy,
                                  RandomStream& rng) {
    for (const auto& [shell, energy] : shell_energy) {
        if (!(std::isfinite(energy)) || energy < 0.0)
            throw std::invalid_argument("random_divfree_field: shell energy must be finite and >= 0");
        if (shell < 1) throw std::invalid_argument("random_divfree_field: shell must be >= 1");
    }

    FourierField field(grid);
    const int n = grid.n;
    const int half = n / 2;

    for (const auto& [shell, energy] : shell_energy) {
        if (energy == 0.0) continue;
        // Enumerate one representative per +/-k pair, in a fixed order.
        std::vector<IVec3> reps;
        for (int kx = -half + 1; kx < half; ++kx)
            for (int ky = -half + 1; ky < half; ++ky)
                for (int kz = 0; kz < half; ++kz) {
                    if (kz == 0 && (kx < 0 || (kx == 0 && ky <= 0))) continue;
                    const double r = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
                    if (static_cast<int>(std::floor(r + 0.5)) == shell)
                        reps.push_back({kx, ky, kz});
                }
        if (reps.empty()) continue;

        std::vector<CVec3> draws(reps.size());
        double raw = 0.0; // pre-scaling sum of 2|c|^2 over pairs
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (int c = 0; c < 3; ++c)
                draws[i][c] = Complex{rng.normal(), rng.normal()};
            for (int c = 0; c < 3; ++c) raw += 2.0 * std::norm(draws[i][c]);
        }
        const double scale = std::sqrt(energy / (grid.volume() * raw));
        for (std::size_t i = 0; i < reps.size(); ++i) {
            CVec3 v = draws[i];
            for (int c = 0; c < 3; ++c) v[c] *= scale;
            field.set_mode(reps[i], v);
        }
    }

    hermitian_repair(field);
    leray_project_inplace(field);
    return field;
}

} // namespace sns
