#pragma once

#include "sns/spectral_workspace.hpp"

namespace sns {

/// Dealiased convective term -P_L(u . grad u), computed pseudo-spectrally:
/// 2/3-rule mask on the input, physical-space product, forward transform,
/// 2/3-rule mask on the result, then Leray projection. Output is
/// divergence-free, Hermitian and mean-zero.
///
/// When max_velocity is non-null it receives the pointwise maximum of |u(x)|
/// over the collocation grid (of the dealiased field), which the integrator
/// reuses for its CFL advisory.
FourierField nonlinear_term(const FourierField& field, SpectralWorkspace& ws,
                            double* max_velocity = nullptr);

} // namespace sns
