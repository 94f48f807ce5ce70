#include <doctest.h>

#include <vector>

#include "ubeta/kernels.hpp"
#include "ubeta/sampling.hpp"

using namespace ubeta;

namespace {

// reference product, written independently of the kernel loop
cplx naive_qpoch(cplx a, cplx base, long terms) {
    cplx acc{1.0, 0.0};
    for (long n = 0; n < terms; ++n) {
        acc *= (1.0 - a);
        a *= base;
    }
    return acc;
}

}  // namespace

TEST_CASE("qpoch_terms bounds the geometric tail") {
    CHECK(kernels::qpoch_terms(0.0, 0.5, 1e-15) == 0);
    CHECK(kernels::qpoch_terms(1.0, 0.0, 1e-15) == 1);
    const long k = kernels::qpoch_terms(2.0, 0.5, 1e-12);
    CHECK(2.0 * std::pow(0.5, k) / 0.5 <= 1e-12);
    CHECK(k < 60);
}

TEST_CASE("scalar kernel matches the naive product") {
    Rng rng(11);
    for (int it = 0; it < 50; ++it) {
        const cplx a = rng.cbox(-2.0, 2.0, -2.0, 2.0);
        const cplx base = std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, kTwoPi));
        const long terms = kernels::qpoch_terms(std::abs(a), std::abs(base), 1e-16);
        cplx out;
        kernels::qpoch_batch_scalar(&a, 1, base, terms, &out);
        const cplx ref = naive_qpoch(a, base, terms);
        CHECK(std::abs(out - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

#ifdef UBETA_HAVE_AVX2
TEST_CASE("avx2 kernel is equivalent to the scalar reference") {
    if (!kernels::impl_available(kernels::Impl::Avx2)) return;
    Rng rng(17);
    for (int it = 0; it < 40; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 37.0));
        std::vector<cplx> a(n), out_s(n), out_v(n);
        for (auto& x : a) x = rng.cbox(-3.0, 3.0, -3.0, 3.0);
        const cplx base = std::polar(rng.uniform(0.0, 0.92), rng.uniform(0.0, kTwoPi));
        const long terms = kernels::qpoch_terms(3.0 * std::sqrt(2.0), std::abs(base), 1e-16);
        kernels::qpoch_batch_scalar(a.data(), n, base, terms, out_s.data());
        kernels::qpoch_batch_avx2(a.data(), n, base, terms, out_v.data());
        for (std::size_t i = 0; i < n; ++i) {
            const double scale = std::max(1.0, std::abs(out_s[i]));
            CHECK(std::abs(out_s[i] - out_v[i]) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("kernel selection can be forced") {
    const kernels::Impl before = kernels::active_impl();
    if (kernels::impl_available(kernels::Impl::Avx2)) {
        kernels::set_impl(kernels::Impl::Scalar);
        CHECK(kernels::active_impl() == kernels::Impl::Scalar);
        kernels::set_impl(kernels::Impl::Avx2);
        CHECK(kernels::active_impl() == kernels::Impl::Avx2);
    }
    kernels::set_impl(before);
}
#endif
