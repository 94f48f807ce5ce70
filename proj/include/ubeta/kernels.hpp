#pragma once

#include <cstddef>

#include "ubeta/types.hpp"

namespace ubeta::kernels {

/// Which batched-product kernel is running. Scalar is the reference; Avx2 is
/// the vectorized variant selected at runtime on capable x86-64 hosts.
enum class Impl { Scalar, Avx2 };

Impl active_impl();
bool impl_available(Impl);
/// Force a kernel (testing hook). Throws DomainError if unsupported on this host.
void set_impl(Impl);

/// Number of terms after which the tail of prod (1 - a q^n) is below tol in
/// relative terms, for |a| <= amax: smallest k with amax |q|^k / (1-|q|) <= tol.
long qpoch_terms(double amax, double base_abs, double tol);

/// out[i] = prod_{n=0}^{terms-1} (1 - a[i] * base^n).
/// All lanes share one base, which is what makes the loop data-parallel: the
/// gamma-family evaluators batch every partial product with a common base.
void qpoch_batch(const cplx* a, std::size_t n, cplx base, long terms, cplx* out);

void qpoch_batch_scalar(const cplx* a, std::size_t n, cplx base, long terms, cplx* out);
#ifdef UBETA_HAVE_AVX2
void qpoch_batch_avx2(const cplx* a, std::size_t n, cplx base, long terms, cplx* out);
#endif

}  // namespace ubeta::kernels
