#include "sns/fourier_field.hpp"

#include <cmath>
#include <numbers>

namespace sns {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Storage location of a signed wavevector: the slot holding either k itself
// (kz >= 0) or its conjugate -k (kz < 0).
struct Slot {
    int mx, my, mz;
    bool conjugated;
};

Slot locate(const GridSpec& g, const IVec3& k) {
    IVec3 q = k;
    bool conj = false;
    if (q[2] < 0) {
        q = {-q[0], -q[1], -q[2]};
        conj = true;
    }
    return Slot{g.index_of(q[0]), g.index_of(q[1]), q[2], conj};
}

// The kz = 0 and kz = n/2 planes store both members of each +/-k pair.
bool on_self_conjugate_plane(const GridSpec& g, int mz) {
    return mz == 0 || mz == g.n / 2;
}

} // namespace

CVec3 FourierField::mode(const IVec3& k) const {
    const Slot s = locate(grid_, k);
    CVec3 out;
    for (int c = 0; c < 3; ++c) {
        Complex v = at(c, s.mx, s.my, s.mz);
        out[c] = s.conjugated ? std::conj(v) : v;
    }
    return out;
}

void FourierField::set_mode(const IVec3& k, const CVec3& value) {
    const Slot s = locate(grid_, k);
    for (int c = 0; c < 3; ++c)
        at(c, s.mx, s.my, s.mz) = s.conjugated ? std::conj(value[c]) : value[c];
    if (on_self_conjugate_plane(grid_, s.mz)) {
        const int px = grid_.index_of(-grid_.freq(s.mx));
        const int py = grid_.index_of(-grid_.freq(s.my));
        if (px != s.mx || py != s.my) {
            for (int c = 0; c < 3; ++c)
                at(c, px, py, s.mz) =
                    std::conj(s.conjugated ? std::conj(value[c]) : value[c]);
        }
    }
}

void FourierField::add_mode(const IVec3& k, const CVec3& value) {
    const Slot s = locate(grid_, k);
    for (int c = 0; c < 3; ++c)
        at(c, s.mx, s.my, s.mz) += s.conjugated ? std::conj(value[c]) : value[c];
    if (on_self_conjugate_plane(grid_, s.mz)) {
        const int px = grid_.index_of(-grid_.freq(s.mx));
        const int py = grid_.index_of(-grid_.freq(s.my));
        if (px != s.mx || py != s.my) {
            for (int c = 0; c < 3; ++c)
                at(c, px, py, s.mz) +=
                    std::conj(s.conjugated ? std::conj(value[c]) : value[c]);
        }
    }
}

void leray_project_inplace(FourierField& field) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    for (int mx = 0; mx < n; ++mx) {
        const double kx = g.freq(mx);
        for (int my = 0; my < n; ++my) {
            const double ky = g.freq(my);
            for (int mz = 0; mz < nzh; ++mz) {
                const double kz = mz;
                const double ksq = kx * kx + ky * ky + kz * kz;
                Complex& cx = field.at(0, mx, my, mz);
                Complex& cy = field.at(1, mx, my, mz);
                Complex& cz = field.at(2, mx, my, mz);
                if (ksq == 0.0) {
                    cx = cy = cz = Complex{0.0, 0.0};
                    continue;
                }
                // Iterate to a bitwise fixed point so the projection is
                // exactly idempotent.
                for (int pass = 0; pass < 8; ++pass) {
                    const Complex dot = kx * cx + ky * cy + kz * cz;
                    const Complex scale = dot / ksq;
                    const Complex nx = cx - kx * scale;
                    const Complex ny = cy - ky * scale;
                    const Complex nz = cz - kz * scale;
                    if (nx == cx && ny == cy && nz == cz) break;
                    cx = nx;
                    cy = ny;
                    cz = nz;
                }
            }
        }
    }
}

FourierField leray_project(const FourierField& field) {
    FourierField out = field;
    leray_project_inplace(out);
    return out;
}

double l2_norm_sq(const FourierField& field) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int mx = 0; mx < n; ++mx)
            for (int my = 0; my < n; ++my)
                for (int mz = 0; mz < nzh; ++mz)
                    sum += spectral_weight(g, mz) * std::norm(field.at(c, mx, my, mz));
    return g.volume() * sum;
}

double grad_norm_sq(const FourierField& field) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    const double scale = kTwoPi / g.ell;
    double sum = 0.0;
    for (int mx = 0; mx < n; ++mx) {
        const double kx = g.freq(mx);
        for (int my = 0; my < n; ++my) {
            const double ky = g.freq(my);
            for (int mz = 0; mz < nzh; ++mz) {
                const double ksq = kx * kx + ky * ky + static_cast<double>(mz) * mz;
                const double w = spectral_weight(g, mz) * ksq;
                double m = 0.0;
                for (int c = 0; c < 3; ++c) m += std::norm(field.at(c, mx, my, mz));
                sum += w * m;
            }
        }
    }
    return g.volume() * scale * scale * sum;
}

double inner_product(const FourierField& a, const FourierField& b) {
    const GridSpec& g = a.grid();
    if (!(g == b.grid())) throw std::invalid_argument("inner_product: grid mismatch");
    const int n = g.n;
    const int nzh = g.nz_half();
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int mx = 0; mx < n; ++mx)
            for (int my = 0; my < n; ++my)
                for (int mz = 0; mz < nzh; ++mz) {
                    const Complex p =
                        std::conj(a.at(c, mx, my, mz)) * b.at(c, mx, my, mz);
                    sum += spectral_weight(g, mz) * p.real();
                }
    return g.volume() * sum;
}

void hermitian_repair(FourierField& field) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    for (int mz : {0, n / 2}) {
        for (int mx = 0; mx < n; ++mx) {
            const int px = g.index_of(-g.freq(mx));
            for (int my = 0; my < n; ++my) {
                const int py = g.index_of(-g.freq(my));
                if (px == mx && py == my) {
                    for (int c = 0; c < 3; ++c) {
                        Complex& v = field.at(c, mx, my, mz);
                        v = Complex{v.real(), 0.0};
                    }
                    continue;
                }
                // Process each pair once.
                if (mx > px || (mx == px && my > py)) continue;
                for (int c = 0; c < 3; ++c) {
                    Complex& a = field.at(c, mx, my, mz);
                    Complex& b = field.at(c, px, py, mz);
                    const Complex avg = 0.5 * (a + std::conj(b));
                    a = avg;
                    b = std::conj(avg);
                }
            }
        }
    }
    for (int c = 0; c < 3; ++c) field.at(c, 0, 0, 0) = Complex{0.0, 0.0};
}

bool survives_dealias(const GridSpec& g, const IVec3& k) {
    const int cutoff = g.n / 3;
    return std::abs(k[0]) <= cutoff && std::abs(k[1]) <= cutoff && std::abs(k[2]) <= cutoff;
}

void dealias_inplace(FourierField& field) {
    const GridSpec& g = field.grid();
    const int n = g.n;
    const int nzh = g.nz_half();
    const int cutoff = n / 3;
    for (int mx = 0; mx < n; ++mx) {
        const bool kill_x = std::abs(g.freq(mx)) > cutoff;
        for (int my = 0; my < n; ++my) {
            const bool kill_xy = kill_x || std::abs(g.freq(my)) > cutoff;
            for (int mz = 0; mz < nzh; ++mz) {
                if (kill_xy || mz > cutoff)
                    for (int c = 0; c < 3; ++c)
                        field.at(c, mx, my, mz) = Complex{0.0, 0.0};
            }
        }
    }
}

bool all_finite(const FourierField& field) {
    for (const Complex& v : field.raw())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double max_pointwise_norm(const PhysicalField& phys) {
    const std::size_t np = phys.grid.points();
    const double* ux = phys.data.data();
    const double* uy = ux + np;
    const double* uz = uy + np;
    double best = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const double m = ux[i] * ux[i] + uy[i] * uy[i] + uz[i] * uz[i];
        if (m > best) best = m;
    }
    return std::sqrt(best);
}

} // namespace sns
