#include "ubeta/gammas.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ubeta/kernels.hpp"
#include "ubeta/qseries.hpp"

namespace ubeta {

namespace {

Flagged flag_small(Flagged f, double tol) {
    // a pole-flagged value of 0 is a placeholder, not a zero
    if (!f.at_pole && std::abs(f.value) < 10.0 * tol) f.at_zero = true;
    return f;
}

// Best rational approximation p/q with q <= max_den, by continued fractions.
bool near_small_rational(double x, long max_den, double tol) {
    double a = x;
    long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(a)), q1 = 1;
    for (int it = 0; it < 40; ++it) {
        if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < tol) return true;
        const double frac = a - std::floor(a);
        if (frac < 1e-15) break;
        a = 1.0 / frac;
        const long ai = static_cast<long>(std::floor(a));
        const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return false;
}

long checked_terms(double amax, double babs, const PrecisionPolicy& policy) {
    const long terms = kernels::qpoch_terms(amax, babs, policy.product_tol);
    if (terms > policy.max_terms)
        throw NonConvergence("q-product needs " + std::to_string(terms) +
                             " terms, over the max_terms budget");
    return terms;
}

}  // namespace

QuasiPeriods QuasiPeriods::derive(cplx w1, cplx w2, cplx w3) {
    if (w1 == cplx{} || w2 == cplx{} || w3 == cplx{})
        throw DomainError("derive_bases: zero quasiperiod");
    const cplx r31 = w3 / w1, r32 = w3 / w2, r12 = w1 / w2;
    if (!(r31.imag() > 0.0)) throw DomainError("derive_bases: Im(omega3/omega1) <= 0");
    if (!(r32.imag() > 0.0)) throw DomainError("derive_bases: Im(omega3/omega2) <= 0");

    QuasiPeriods w;
    w.omega1 = w1;
    w.omega2 = w2;
    w.omega3 = w3;
    const double eps = 1e-12 * (1.0 + std::abs(r12));
    if (r12.imag() > eps) {
        w.regime = Regime::StrictlyElliptic;
    } else if (r12.imag() >= -eps && r12.real() > 0.0) {
        w.regime = Regime::UnitCircle;
        w.commensurate = near_small_rational(r12.real(), 64, 1e-9);
    } else {
        throw DomainError("derive_bases: need Im(omega1/omega2) >= 0 with omega1/omega2 > 0 on the boundary");
    }
    w.q = cis2pi(r12);
    w.p = cis2pi(r32);
    w.r = cis2pi(r31);
    w.q_tilde = cis2pi(-w2 / w1);
    w.p_tilde = cis2pi(-w2 / w3);
    w.r_tilde = cis2pi(-w1 / w3);
    return w;
}

Flagged elliptic_gamma(cplx z, Base q, Base p, const PrecisionPolicy& policy) {
    policy.validate();
    if (z == cplx{}) throw DomainError("elliptic_gamma: z = 0 outside domain");
    const double qa = std::abs(q.value), pa = std::abs(p.value);
    const cplx num0 = q.value * p.value / z;

    long levels = 1;
    if (pa > 0.0) {
        const double amax0 = std::max(std::abs(z), std::abs(num0));
        levels = std::max<long>(kernels::qpoch_terms(amax0 / (1.0 - qa), pa, policy.product_tol), 1);
        if (levels > policy.max_terms)
            throw NonConvergence("elliptic_gamma: outer product over p does not fit the budget");
    }

    std::vector<cplx> args(2 * levels);
    cplx zn = num0, zd = z;
    double amax = 0.0;
    for (long k = 0; k < levels; ++k) {
        args[k] = zn;
        args[levels + k] = zd;
        amax = std::max(amax, std::max(std::abs(zn), std::abs(zd)));
        zn *= p.value;
        zd *= p.value;
    }
    const long terms = checked_terms(amax, qa, policy);
    std::vector<cplx> vals(2 * levels);
    kernels::qpoch_batch(args.data(), args.size(), q.value, terms, vals.data());

    Flagged num = Flagged::one(), den = Flagged::one();
    for (long k = 0; k < levels; ++k) {
        num = fmul(num, flag_small({vals[k], false, false}, policy.product_tol));
        den = fmul(den, flag_small({vals[levels + k], false, false}, policy.product_tol));
    }
    return flag_small(fdiv(num, den), policy.product_tol);
}

cplx b22(cplx u, cplx w1, cplx w2) {
    return u * u / (w1 * w2) - u / w1 - u / w2 + w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5;
}

cplx b22(cplx u, const QuasiPeriods& w) { return b22(u, w.omega1, w.omega2); }

cplx p_cubic(cplx u, const QuasiPeriods& w) {
    const cplx s = w.omega1 + w.omega2 + w.omega3;
    const cplx sp = 1.0 / w.omega1 + 1.0 / w.omega2 + 1.0 / w.omega3;
    const cplx w123 = w.omega1 * w.omega2 * w.omega3;
    return (u - 0.5 * s) * (u * u - u * s + 0.5 * w123 * sp) / (3.0 * w123);
}

Flagged modified_gamma_product(cplx u, const QuasiPeriods& w, const PrecisionPolicy& policy) {
    if (w.regime != Regime::StrictlyElliptic)
        throw DomainError("modified_gamma_product: diverges on |q| = 1, use modified_gamma");
    const Flagged g1 = elliptic_gamma(cis2pi(u / w.omega2), Base(w.q), Base(w.p), policy);
    const Flagged g2 =
        elliptic_gamma(w.r * cis2pi(-u / w.omega1), Base(w.q_tilde), Base(w.r), policy);
    return flag_small(fmul(g1, g2), policy.product_tol);
}

Flagged modified_gamma(cplx u, const QuasiPeriods& w, const PrecisionPolicy& policy) {
    const cplx pu = p_cubic(u, w);
    if (kPi * std::abs(pu.imag()) > 690.0)
        throw DomainError("modified_gamma: prefactor exponent overflows, u too deep");
    const Flagged g =
        elliptic_gamma(cis2pi(-u / w.omega3), Base(w.r_tilde), Base(w.p_tilde), policy);
    return fmul(g, cispi(-pu));
}

SinePair SinePair::make(cplx w1, cplx w2) {
    if (w1 == cplx{} || w2 == cplx{}) throw DomainError("SinePair: zero quasiperiod");
    const cplx ratio = w1 / w2;
    const double eps = 1e-12 * (1.0 + std::abs(ratio));
    SinePair pair;
    if (ratio.imag() > eps) {
        pair = {w1, w2, SineRegime::Product};
    } else if (ratio.imag() < -eps) {
        pair = {w2, w1, SineRegime::Product};  // S(u; w1, w2) = S(u; w2, w1)
    } else if (ratio.real() > 0.0) {
        pair = {w1, w2, SineRegime::RealRatio};
    } else {
        throw DomainError("SinePair: omega1/omega2 on the closed negative real axis");
    }
    return pair;
}

namespace {

Flagged double_sine_product(cplx u, cplx w1, cplx w2, const PrecisionPolicy& policy) {
    const cplx q = cis2pi(w1 / w2), qt = cis2pi(-w2 / w1);
    const cplx a1 = cis2pi(u / w2), a2 = cis2pi(u / w1) * qt;
    const cplx b1 = cis2pi(-u / w1), b2 = cis2pi(-u / w2) * q;
    if (std::max(std::abs(a1), std::abs(a2)) <= std::max(std::abs(b1), std::abs(b2))) {
        return fdiv(qpochhammer(a1, Base(q), policy), qpochhammer(a2, Base(qt), policy));
    }
    const Flagged f = fdiv(qpochhammer(b1, Base(qt), policy), qpochhammer(b2, Base(q), policy));
    return fmul(f, cispi(-b22(u, w1, w2)));
}

}  // namespace

Flagged double_sine_continued(cplx u, cplx w1, cplx w2, double t_scale,
                              const PrecisionPolicy& policy) {
    if (!(t_scale >= 1.0)) throw DomainError("double_sine_continued: t_scale < 1");
    const QuasiPeriods w = QuasiPeriods::derive(w1, w2, cplx{0.0, t_scale} * w2);
    return frecip(modified_gamma(u, w, policy));
}

Flagged double_sine(cplx u, const SinePair& pair, const PrecisionPolicy& policy) {
    if (pair.regime == SineRegime::Product) {
        return flag_small(double_sine_product(u, pair.omega1, pair.omega2, policy),
                          policy.product_tol);
    }
    // |q| = 1: regulate with omega3 = i t omega2; the dropped terms are
    // O(e^{-2 pi t}) + O(e^{-2 pi t Re(w2/w1)}), pushed below double rounding.
    const double c = std::min(1.0, (pair.omega2 / pair.omega1).real());
    const double t = 6.5 / c;
    return flag_small(double_sine_continued(u, pair.omega1, pair.omega2, t, policy),
                      policy.product_tol);
}

double double_sine_limit_check(cplx u, cplx w1, cplx w2, double t_scale,
                               const PrecisionPolicy& policy) {
    const SinePair pair = SinePair::make(w1, w2);
    if (pair.regime != SineRegime::Product || pair.omega1 != w1)
        throw DomainError("double_sine_limit_check: need Im(omega1/omega2) > 0");
    if (!(t_scale >= 1.0)) throw DomainError("double_sine_limit_check: t_scale < 1");
    const QuasiPeriods w = QuasiPeriods::derive(w1, w2, cplx{0.0, t_scale} * w2);
    const Flagged g = modified_gamma(u, w, policy);
    const Flagged s = double_sine(u, pair, policy);
    if (!g.finite_ok() || !s.finite_ok())
        throw PoleError("double_sine_limit_check: u on a pole lattice");
    return std::abs(g.value * s.value - 1.0);
}

}  // namespace ubeta
