#include <cstdlib>
#include <cstring>

#include "ubeta/kernels.hpp"

namespace ubeta::kernels {

namespace {

using Fn = void (*)(const cplx*, std::size_t, cplx, long, cplx*);

bool avx2_supported() {
#ifdef UBETA_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Dispatch {
    Fn fn;
    Impl impl;
    Dispatch() {
        impl = avx2_supported() ? Impl::Avx2 : Impl::Scalar;
        if (const char* env = std::getenv("UBETA_KERNEL")) {
            if (std::strcmp(env, "scalar") == 0) impl = Impl::Scalar;
            if (std::strcmp(env, "avx2") == 0 && avx2_supported()) impl = Impl::Avx2;
        }
        fn = select(impl);
    }
    static Fn select(Impl which) {
#ifdef UBETA_HAVE_AVX2
        if (which == Impl::Avx2) return &qpoch_batch_avx2;
#endif
        return &qpoch_batch_scalar;
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

Impl active_impl() { return dispatch().impl; }

bool impl_available(Impl which) {
    return which == Impl::Scalar || (which == Impl::Avx2 && avx2_supported());
}

void set_impl(Impl which) {
    if (!impl_available(which)) throw DomainError("requested kernel not supported on this host");
    dispatch().impl = which;
    dispatch().fn = Dispatch::select(which);
}

void qpoch_batch(const cplx* a, std::size_t n, cplx base, long terms, cplx* out) {
    dispatch().fn(a, n, base, terms, out);
}

}  // namespace ubeta::kernels
