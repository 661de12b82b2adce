#pragma once

#include <array>
#include <complex>
#include <vector>

#include "sns/grid.hpp"

namespace sns {

using Complex = std::complex<double>;
using IVec3 = std::array<int, 3>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

/// Truncated velocity field in Fourier coefficients on a periodic box.
///
/// Convention: u(x) = sum_k coeff(k) exp(i kt.x) with kt = 2*pi*k/ell and no
/// grid-size factors stored in the coefficients. Storage is the r2c
/// half-spectrum (kz index 0..n/2); the kz>0 interior planes stand for the
/// conjugate pair +/-k, and Hermitian symmetry on the kz=0 and kz=n/2 planes
/// is an invariant maintained by hermitian_repair().
class FourierField {
public:
    FourierField() = default;
    explicit FourierField(GridSpec grid)
        : grid_(grid), coeffs_(3 * grid.modes_per_component(), Complex{0.0, 0.0}) {}

    const GridSpec& grid() const { return grid_; }

    std::size_t index(int comp, int mx, int my, int mz) const {
        const std::size_t nzh = grid_.nz_half();
        return ((static_cast<std::size_t>(comp) * grid_.n + mx) * grid_.n + my) * nzh + mz;
    }
    Complex& at(int comp, int mx, int my, int mz) { return coeffs_[index(comp, mx, my, mz)]; }
    const Complex& at(int comp, int mx, int my, int mz) const {
        return coeffs_[index(comp, mx, my, mz)];
    }

    /// Coefficient 3-vector at a signed integer wavevector (full-spectrum
    /// semantics; reads through the implied conjugate for kz < 0).
    CVec3 mode(const IVec3& k) const;
    /// Assigns the coefficient at a signed wavevector, writing the conjugate
    /// slot as well where the storage keeps both (kz = 0 or n/2 planes).
    void set_mode(const IVec3& k, const CVec3& value);
    /// Adds into the coefficient at a signed wavevector (conjugate-slot aware).
    void add_mode(const IVec3& k, const CVec3& value);

    std::vector<Complex>& raw() { return coeffs_; }
    const std::vector<Complex>& raw() const { return coeffs_; }

    bool operator==(const FourierField&) const = default;

private:
    GridSpec grid_{};
    std::vector<Complex> coeffs_;
};

/// Real-space samples on the collocation grid, one contiguous n^3 block per
/// component (z fastest).
struct PhysicalField {
    GridSpec grid{};
    std::vector<double> data; // 3 * n^3

    PhysicalField() = default;
    explicit PhysicalField(GridSpec g) : grid(g), data(3 * g.points(), 0.0) {}
    double& at(int comp, std::size_t point) { return data[comp * grid.points() + point]; }
    double at(int comp, std::size_t point) const { return data[comp * grid.points() + point]; }
};

/// Parseval weight of a stored mode: interior kz planes represent a +/-k pair.
inline double spectral_weight(const GridSpec& g, int mz) {
    return (mz == 0 || mz == g.n / 2) ? 1.0 : 2.0;
}

/// Helmholtz-Leray projection: removes the component along the wavevector and
/// zeroes the mean mode. Iterated per mode to a floating-point fixed point, so
/// project(project(v)) == project(v) bitwise.
FourierField leray_project(const FourierField& field);
void leray_project_inplace(FourierField& field);

/// ||u||^2_{L2(D)} = |D| * sum_k |coeff(k)|^2.
double l2_norm_sq(const FourierField& field);

/// ||grad u||^2 = |D| * sum_k |kt|^2 |coeff(k)|^2.
double grad_norm_sq(const FourierField& field);

/// L2(D) inner product (a, b) via the Parseval pairing; real for real fields.
double inner_product(const FourierField& a, const FourierField& b);

/// Restores exact Hermitian symmetry on the self-conjugate kz planes by
/// averaging conjugate pairs, and zeroes the mean mode.
void hermitian_repair(FourierField& field);

/// Zeroes every mode with any |k_i| > n/3 (2/3-rule truncation mask).
void dealias_inplace(FourierField& field);
bool survives_dealias(const GridSpec& g, const IVec3& k);

bool all_finite(const FourierField& field);

/// Pointwise physical-space maximum of |u(x)| (Euclidean norm).
double max_pointwise_norm(const PhysicalField& phys);

} // namespace sns
