#include <cmath>

#include "ubeta/kernels.hpp"

namespace ubeta::kernels {

long qpoch_terms(double amax, double base_abs, double tol) {
    if (amax == 0.0) return 0;
    if (base_abs <= 0.0) return 1;
    const double bound = amax / (1.0 - base_abs);
    if (bound <= tol) return 0;
    const double k = std::ceil(std::log(tol / bound) / std::log(base_abs));
    if (!(k < 9e18)) return std::numeric_limits<long>::max();
    return static_cast<long>(k) + 1;
}

void qpoch_batch_scalar(const cplx* a, std::size_t n, cplx base, long terms, cplx* out) {
    const double br = base.real(), bi = base.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double xr = a[i].real(), xi = a[i].imag();
        double pr = 1.0, pi = 0.0;
        for (long k = 0; k < terms; ++k) {
            const double fr = 1.0 - xr, fi = -xi;
            const double npr = pr * fr - pi * fi;
            const double npi = pr * fi + pi * fr;
            const double nxr = xr * br - xi * bi;
            const double nxi = xr * bi + xi * br;
            pr = npr;
            pi = npi;
            xr = nxr;
            xi = nxi;
        }
        out[i] = cplx{pr, pi};
    }
}

}  // namespace ubeta::kernels
