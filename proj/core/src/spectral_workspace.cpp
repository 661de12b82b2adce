#include "sns/spectral_workspace.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <numbers>

namespace sns {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralWorkspace::SpectralWorkspace(GridSpec grid) : grid_(grid) {
    const int n = grid_.n;
    std::lock_guard<std::mutex> lock(planner_mutex());
    real_buf_ = fftw_alloc_real(grid_.points());
    cplx_buf_ = reinterpret_cast<Complex*>(fftw_alloc_complex(grid_.modes_per_component()));
    // FFTW_ESTIMATE keeps plan selection deterministic run-to-run.
    plan_backward_ = fftw_plan_dft_c2r_3d(n, n, n,
                                          reinterpret_cast<fftw_complex*>(cplx_buf_),
                                          real_buf_, FFTW_ESTIMATE);
    plan_forward_ = fftw_plan_dft_r2c_3d(n, n, n, real_buf_,
                                         reinterpret_cast<fftw_complex*>(cplx_buf_),
                                         FFTW_ESTIMATE);
    if (!plan_backward_ || !plan_forward_)
        throw std::runtime_error("fftw plan creation failed");
}

SpectralWorkspace::~SpectralWorkspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void SpectralWorkspace::backward(const Complex* spectral, double* physical) {
    std::memcpy(cplx_buf_, spectral, grid_.modes_per_component() * sizeof(Complex));
    fftw_execute(static_cast<fftw_plan>(plan_backward_));
    std::memcpy(physical, real_buf_, grid_.points() * sizeof(double));
}

void SpectralWorkspace::forward(const double* physical, Complex* spectral) {
    std::memcpy(real_buf_, physical, grid_.points() * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_forward_));
    const double scale = 1.0 / static_cast<double>(grid_.points());
    const std::size_t m = grid_.modes_per_component();
    for (std::size_t i = 0; i < m; ++i) spectral[i] = cplx_buf_[i] * scale;
}

PhysicalField to_physical(const FourierField& field, SpectralWorkspace& ws) {
    const GridSpec& g = field.grid();
    PhysicalField phys(g);
    const std::size_t m = g.modes_per_component();
    for (int c = 0; c < 3; ++c)
        ws.backward(field.raw().data() + c * m, phys.data.data() + c * g.points());
    return phys;
}

FourierField to_spectral(const PhysicalField& phys, SpectralWorkspace& ws) {
    const GridSpec& g = phys.grid;
    FourierField field(g);
    const std::size_t m = g.modes_per_component();
    for (int c = 0; c < 3; ++c)
        ws.forward(phys.data.data() + c * g.points(), field.raw().data() + c * m);
    return field;
}

std::array<std::vector<double>, 9> gradient_physical(const FourierField& field,
                                                     SpectralWorkspace& ws) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    const double scale = 2.0 * std::numbers::pi / g.ell;
    std::array<std::vector<double>, 9> grad;
    std::vector<Complex> deriv(g.modes_per_component());
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            std::size_t idx = 0;
            for (int mx = 0; mx < n; ++mx) {
                const double kx = g.freq(mx);
                for (int my = 0; my < n; ++my) {
                    const double ky = g.freq(my);
                    for (int mz = 0; mz < nzh; ++mz, ++idx) {
                        const double kj = scale * (j == 0 ? kx : j == 1 ? ky : mz);
                        const Complex v = field.at(i, mx, my, mz);
                        deriv[idx] = Complex{-kj * v.imag(), kj * v.real()};
                    }
                }
            }
            grad[3 * i + j].resize(g.points());
            ws.backward(deriv.data(), grad[3 * i + j].data());
        }
    }
    return grad;
}

} // namespace sns
