#pragma once

#include <functional>

#include "ubeta/types.hpp"

namespace ubeta {

/// Integration path: a straight segment, the positively oriented unit circle,
/// or a truncated line t -> direction * t, t in [-halfwidth, halfwidth].
struct Contour {
    enum class Kind { Segment, UnitCircle, Line };
    Kind kind = Kind::Segment;
    cplx a{}, b{};       // segment endpoints
    cplx direction{};    // line direction
    double halfwidth = 0.0;

    static Contour segment(cplx a, cplx b);
    static Contour unit_circle();
    static Contour line(cplx direction, double halfwidth);

    double t0() const;
    double t1() const;
    void map(double t, cplx& z, cplx& dz) const;  // point and dz/dt
};

struct QuadResult {
    cplx value{};
    double error_estimate = 0.0;
    int panels_used = 0;
    long evaluations = 0;
};

/// Thrown when the pre-scan or a panel evaluation meets a pole-flagged or
/// non-finite integrand value on the contour.
struct PoleOnContour : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when the panel budget runs out; carries the best result so far.
struct ToleranceNotMet : std::runtime_error {
    QuadResult best;
    explicit ToleranceNotMet(const QuadResult& r)
        : std::runtime_error("quadrature tolerance not met within the panel budget"), best(r) {}
};

using Integrand = std::function<Flagged(cplx)>;
using Integrand2 = std::function<Flagged(cplx, cplx)>;

/// Globally adaptive Gauss-Kronrod (7,15) panels: the worst panel is bisected
/// until sum(err) <= max(quad_abs_tol, quad_rel_tol * |value|).
QuadResult integrate(const Integrand& f, const Contour& contour, const PrecisionPolicy& policy);

/// Tensor-product version on contour x contour for the N = 2 integrals;
/// rectangular panels split along their wider side.
QuadResult integrate2(const Integrand2& f, const Contour& contour, const PrecisionPolicy& policy);

/// Halfwidth X with e^{-decay_rate * X} below quad_rel_tol plus one safety
/// decade: X = (log(1/tol) + log 10) / decay_rate.
double line_truncation(double decay_rate, const PrecisionPolicy& policy);

}  // namespace ubeta
