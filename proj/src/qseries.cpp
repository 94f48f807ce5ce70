#include "ubeta/qseries.hpp"

#include <cmath>

#include "ubeta/kernels.hpp"

namespace ubeta {

void PrecisionPolicy::validate() const {
    if (!(product_tol > 0.0)) throw DomainError("policy: product_tol must be > 0");
    if (max_terms < 1) throw DomainError("policy: max_terms must be >= 1");
    if (!(quad_rel_tol > 0.0)) throw DomainError("policy: quad_rel_tol must be > 0");
    if (quad_max_panels < 1) throw DomainError("policy: quad_max_panels must be >= 1");
}

namespace {

Flagged flag_small(cplx v, double tol) {
    Flagged f{v, std::abs(v) < 10.0 * tol, false};
    return f;
}

long checked_terms(double amax, double babs, const PrecisionPolicy& policy) {
    const long terms = kernels::qpoch_terms(amax, babs, policy.product_tol);
    if (terms > policy.max_terms)
        throw NonConvergence("q-product needs " + std::to_string(terms) +
                             " terms, over the max_terms budget");
    return terms;
}

}  // namespace

Flagged qpochhammer(cplx a, Base p, const PrecisionPolicy& policy) {
    policy.validate();
    const long terms = checked_terms(std::abs(a), std::abs(p.value), policy);
    cplx out;
    kernels::qpoch_batch(&a, 1, p.value, terms, &out);
    return flag_small(out, policy.product_tol);
}

Flagged theta(cplx z, Base p, const PrecisionPolicy& policy) {
    if (z == cplx{0.0, 0.0}) throw DomainError("theta: z = 0 outside domain");
    const cplx args[2] = {z, p.value / z};
    const long terms =
        checked_terms(std::max(std::abs(args[0]), std::abs(args[1])), std::abs(p.value), policy);
    cplx out[2];
    kernels::qpoch_batch(args, 2, p.value, terms, out);
    return flag_small(out[0] * out[1], policy.product_tol);
}

Flagged theta1(cplx u, cplx tau, const PrecisionPolicy& policy) {
    if (!(tau.imag() > 0.0)) throw DomainError("theta1: Im(tau) <= 0 outside domain");
    const cplx p = cis2pi(tau);
    const cplx pref = cis2pi(tau / 8.0) * cplx{0.0, 1.0} * cispi(-u);
    const Flagged pp = qpochhammer(p, Base(p), policy);
    const Flagged th = theta(cis2pi(u), Base(p), policy);
    Flagged r = fmul(fmul(th, pp), pref);
    if (std::abs(r.value) < 10.0 * policy.product_tol) r.at_zero = true;
    return r;
}

cplx theta1_series(cplx u, cplx tau, const PrecisionPolicy& policy) {
    if (!(tau.imag() > 0.0)) throw DomainError("theta1_series: Im(tau) <= 0 outside domain");
    // 2 sum_{n>=0} (-1)^n p^{(2n+1)^2/8} sin((2n+1) pi u)
    cplx acc{0.0, 0.0};
    double sign = 1.0;
    for (long n = 0; n < policy.max_terms; ++n) {
        const double m = 2.0 * static_cast<double>(n) + 1.0;
        const cplx qn = cis2pi(tau * (m * m) / 8.0);
        const cplx term = sign * qn * std::sin(kPi * m * u);
        acc += 2.0 * term;
        // |p|^{(2n+1)^2/8} decays superexponentially; sin grows at most e^{pi m |Im u|}
        const double tail = std::exp(-kTwoPi * tau.imag() * m * m / 8.0 + kPi * m * std::abs(u.imag()));
        if (tail < policy.product_tol * (std::abs(acc) + policy.product_tol) && n >= 2) break;
        sign = -sign;
    }
    return acc;
}

cplx eta_product(cplx tau, const PrecisionPolicy& policy) {
    if (!(tau.imag() > 0.0)) throw DomainError("eta_product: Im(tau) <= 0 outside domain");
    const cplx q = cis2pi(tau);
    return cis2pi(tau / 24.0) * qpochhammer(q, Base(q), policy).value;
}

}  // namespace ubeta
