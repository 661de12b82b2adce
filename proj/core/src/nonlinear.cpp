#include "sns/nonlinear.hpp"

#include <cmath>
#include <numbers>

namespace sns {

FourierField nonlinear_term(const FourierField& field, SpectralWorkspace& ws,
                            double* max_velocity) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    const std::size_t np = g.points();
    const std::size_t nm = g.modes_per_component();
    const double kscale = 2.0 * std::numbers::pi / g.ell;

    FourierField masked = field;
    dealias_inplace(masked);

    // Velocity components on the grid.
    std::vector<double> u(3 * np);
    for (int c = 0; c < 3; ++c)
        ws.backward(masked.raw().data() + c * nm, u.data() + c * np);

    if (max_velocity) {
        double best = 0.0;
        for (std::size_t p = 0; p < np; ++p) {
            const double m = u[p] * u[p] + u[np + p] * u[np + p] + u[2 * np + p] * u[2 * np + p];
            if (m > best) best = m;
        }
        *max_velocity = std::sqrt(best);
    }

    // conv_i(x) = sum_j u_j d_j u_i, one derivative transform at a time.
    std::vector<double> conv(3 * np, 0.0);
    std::vector<Complex> deriv(nm);
    std::vector<double> dphys(np);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            std::size_t idx = 0;
            for (int mx = 0; mx < n; ++mx) {
                const double kx = g.freq(mx);
                for (int my = 0; my < n; ++my) {
                    const double ky = g.freq(my);
                    for (int mz = 0; mz < nzh; ++mz, ++idx) {
                        const double kj = kscale * (j == 0 ? kx : j == 1 ? ky : mz);
                        const Complex v = masked.at(i, mx, my, mz);
                        deriv[idx] = Complex{-kj * v.imag(), kj * v.real()};
                    }
                }
            }
            ws.backward(deriv.data(), dphys.data());
            const double* uj = u.data() + j * np;
            double* ci = conv.data() + i * np;
            for (std::size_t p = 0; p < np; ++p) ci[p] += uj[p] * dphys[p];
        }
    }

    FourierField out(g);
    for (int c = 0; c < 3; ++c)
        ws.forward(conv.data() + c * np, out.raw().data() + c * nm);
    dealias_inplace(out);
    for (Complex& v : out.raw()) v = -v;
    leray_project_inplace(out);
    return out;
}

} // namespace sns
