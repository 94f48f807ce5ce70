#ifdef UBETA_HAVE_AVX2

#include <immintrin.h>

#include "ubeta/kernels.hpp"

namespace ubeta::kernels {

namespace {

// Two complex doubles per register, interleaved [re0 im0 re1 im1].
inline __m256d cmul(__m256d x, __m256d y) {
    const __m256d yr = _mm256_movedup_pd(y);       // [yr0 yr0 yr1 yr1]
    const __m256d yi = _mm256_permute_pd(y, 0xF);  // [yi0 yi0 yi1 yi1]
    const __m256d xs = _mm256_permute_pd(x, 0x5);  // [xi0 xr0 xi1 xr1]
    return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

}  // namespace

void qpoch_batch_avx2(const cplx* a, std::size_t n, cplx base, long terms, cplx* out) {
    const __m256d vbase = _mm256_setr_pd(base.real(), base.imag(), base.real(), base.imag());
    const __m256d vone = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x0 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
        __m256d x1 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i + 2));
        __m256d p0 = vone, p1 = vone;
        for (long k = 0; k < terms; ++k) {
            p0 = cmul(p0, _mm256_sub_pd(vone, x0));
            p1 = cmul(p1, _mm256_sub_pd(vone, x1));
            x0 = cmul(x0, vbase);
            x1 = cmul(x1, vbase);
        }
        _mm256_storeu_pd(reinterpret_cast<double*>(out + i), p0);
        _mm256_storeu_pd(reinterpret_cast<double*>(out + i + 2), p1);
    }
    for (; i + 2 <= n; i += 2) {
        __m256d x0 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
        __m256d p0 = vone;
        for (long k = 0; k < terms; ++k) {
            p0 = cmul(p0, _mm256_sub_pd(vone, x0));
            x0 = cmul(x0, vbase);
        }
        _mm256_storeu_pd(reinterpret_cast<double*>(out + i), p0);
    }
    if (i < n) qpoch_batch_scalar(a + i, n - i, base, terms, out + i);
}

}  // namespace ubeta::kernels

#endif  // UBETA_HAVE_AVX2
