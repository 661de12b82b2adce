#pragma once

#include <cstddef>
#include <stdexcept>

namespace sns {

/// Periodic box [0, ell]^3 discretized with n collocation points per axis.
///
/// Spectral data lives on integer wavevectors k with components in
/// {-n/2+1, ..., n/2}; the physical wavevector is 2*pi*k/ell.
struct GridSpec {
    int n = 0;
    double ell = 0.0;

    GridSpec() = default;
    GridSpec(int n_, double ell_) : n(n_), ell(ell_) {
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid: n must be even >= 4");
        if (!(ell > 0.0)) throw std::invalid_argument("grid: ell must be positive");
    }

    double volume() const { return ell * ell * ell; }
    double dx() const { return ell / n; }

    /// Half-spectrum extent along the last axis (r2c layout).
    int nz_half() const { return n / 2 + 1; }
    std::size_t modes_per_component() const {
        return static_cast<std::size_t>(n) * n * nz_half();
    }
    std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }

    /// Signed integer frequency for a storage index m in [0, n).
    int freq(int m) const { return m <= n / 2 ? m : m - n; }
    /// Storage index for a signed frequency in (-n/2, n/2].
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    bool operator==(const GridSpec&) const = default;
};

} // namespace sns
