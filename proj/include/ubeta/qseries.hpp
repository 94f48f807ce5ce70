#pragma once

#include "ubeta/types.hpp"

namespace ubeta {

/// (a; p)_inf = prod_{n>=0} (1 - a p^n), truncated once the geometric tail
/// bound drops below policy.product_tol in relative terms.
Flagged qpochhammer(cplx a, Base p, const PrecisionPolicy& policy);

/// theta(z; p) = (z; p)_inf (p/z; p)_inf. Vanishes exactly on z = p^m, m in Z.
Flagged theta(cplx z, Base p, const PrecisionPolicy& policy);

/// Standard Jacobi theta_1(u|tau), Im(tau) > 0, via the product relation
/// theta_1 = p^{1/8} i e^{-pi i u} (p;p)_inf theta(e^{2 pi i u}; p), p = e^{2 pi i tau}.
Flagged theta1(cplx u, cplx tau, const PrecisionPolicy& policy);

/// theta_1(u|tau) summed from its defining series; independent of the product
/// path, kept as a cross-check route.
cplx theta1_series(cplx u, cplx tau, const PrecisionPolicy& policy);

/// e^{pi i tau/12} (e^{2 pi i tau}; e^{2 pi i tau})_inf, the building block of
/// the Dedekind modular law eta(-1/tau) = sqrt(-i tau) eta(tau).
cplx eta_product(cplx tau, const PrecisionPolicy& policy);

}  // namespace ubeta
