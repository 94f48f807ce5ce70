#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ubeta {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Stop criteria for infinite products and the adaptive quadrature engine.
struct PrecisionPolicy {
    double product_tol = 1e-15;  ///< relative tail bound at which q-products stop
    long max_terms = 1000000;    ///< per-product term budget
    double quad_rel_tol = 1e-10;
    double quad_abs_tol = 1e-13;  ///< absolute floor, needed when the integral itself vanishes
    int quad_max_panels = 4000;

    void validate() const;  // throws DomainError on a non-positive tolerance or empty budget
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when a product hits max_terms before its tail bound is met.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a value is requested at (or within resolution of) a pole.
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex function value carrying zero/pole proximity markers, so that
/// downstream reciprocals can detect poles instead of silently blowing up.
struct Flagged {
    cplx value{0.0, 0.0};
    bool at_zero = false;
    bool at_pole = false;

    static Flagged one() { return {cplx{1.0, 0.0}, false, false}; }
    bool finite_ok() const {
        return !at_pole && std::isfinite(value.real()) && std::isfinite(value.imag());
    }
};

inline Flagged fmul(const Flagged& a, const Flagged& b) {
    return {a.value * b.value, a.at_zero || b.at_zero, a.at_pole || b.at_pole};
}

inline Flagged fmul(const Flagged& a, cplx c) { return {a.value * c, a.at_zero, a.at_pole}; }

inline Flagged frecip(const Flagged& b) {
    Flagged r;
    r.at_zero = b.at_pole;
    r.at_pole = b.at_zero;
    if (b.value == cplx{0.0, 0.0}) {
        // cannot divide; the flags carry the information (exact pole <-> exact zero)
        r.at_pole = r.at_pole || !b.at_pole;
        r.value = cplx{0.0, 0.0};
    } else {
        r.value = 1.0 / b.value;
    }
    return r;
}

inline Flagged fdiv(const Flagged& a, const Flagged& b) { return fmul(a, frecip(b)); }

/// Unwraps a Flagged value, refusing pole-contaminated results.
inline cplx require_finite(const Flagged& f, const char* what) {
    if (!f.finite_ok()) throw PoleError(std::string(what) + ": evaluation hit a pole");
    return f.value;
}

/// e^{2 pi i w} with Re(w) reduced mod 1 before exponentiation, so large real
/// parts do not destroy the phase.
inline cplx cis2pi(cplx w) {
    const double x = w.real() - std::nearbyint(w.real());
    const double m = std::exp(-kTwoPi * w.imag());
    return {m * std::cos(kTwoPi * x), m * std::sin(kTwoPi * x)};
}

/// e^{pi i w}
inline cplx cispi(cplx w) { return cis2pi(0.5 * w); }

/// A base of an infinite q-product; must lie strictly inside the unit disc.
struct Base {
    explicit Base(cplx v) : value(v) {
        if (!(std::abs(v) < 1.0))
            throw DomainError("base with |value| >= 1 (need |base| < 1)");
    }
    cplx value;
};

}  // namespace ubeta
