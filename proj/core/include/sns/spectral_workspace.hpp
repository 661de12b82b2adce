#pragma once

#include "sns/fourier_field.hpp"

namespace sns {

/// FFT plans and scratch buffers for one grid size.
///
/// Not shareable across threads: each trajectory worker owns its own
/// workspace. Plan creation and destruction are serialized internally behind
/// a global mutex (the FFTW planner is not thread-safe); executing transforms
/// on distinct workspaces is safe concurrently.
class SpectralWorkspace {
public:
    explicit SpectralWorkspace(GridSpec grid);
    ~SpectralWorkspace();

    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    const GridSpec& grid() const { return grid_; }

    /// Unnormalized inverse transform of one component: physical(x) =
    /// sum_k coeff(k) exp(i kt.x) on the collocation grid.
    void backward(const Complex* spectral, double* physical);
    /// Forward transform producing coefficients in the stated convention
    /// (includes the 1/n^3 normalization).
    void forward(const double* physical, Complex* spectral);

private:
    GridSpec grid_;
    void* plan_backward_ = nullptr;
    void* plan_forward_ = nullptr;
    double* real_buf_ = nullptr;
    Complex* cplx_buf_ = nullptr;
};

PhysicalField to_physical(const FourierField& field, SpectralWorkspace& ws);
FourierField to_spectral(const PhysicalField& phys, SpectralWorkspace& ws);

/// Physical-space velocity gradient: returns the nine scalar fields
/// d u_i / d x_j laid out as grad[3*i + j].
std::array<std::vector<double>, 9> gradient_physical(const FourierField& field,
                                                     SpectralWorkspace& ws);

} // namespace sns
