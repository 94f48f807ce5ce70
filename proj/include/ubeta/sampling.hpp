#pragma once

#include <cstdint>
#include <random>

#include "ubeta/identities.hpp"

namespace ubeta {

/// Seeded generator with a fixed uniform mapping, so identical seeds give
/// byte-identical draws on every platform.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    cplx cbox(double rlo, double rhi, double ilo, double ihi) {
        const double re = uniform(rlo, rhi);
        return {re, uniform(ilo, ihi)};
    }
    std::mt19937_64 eng;
};

/// Rejection samplers drawing from the interior of each theorem's constraint
/// region, with slack so poles stay clear of the contours.
EllipticBetaParams sample_elliptic_beta(Rng& rng);
UnitCircleBetaParams sample_unit_circle_beta(Rng& rng, Regime regime);
MultiEllipticParams sample_multiple_elliptic(Rng& rng, int N);
MultiModifiedParams sample_multiple_modified(Rng& rng, int N, Regime regime);
HyperbolicParams sample_hyperbolic(Rng& rng, HypKind kind, int N);
AdditiveBetaParams sample_additive_beta(Rng& rng);

/// Strictly elliptic quasiperiod triple with |q| <= qmax.
QuasiPeriods sample_quasiperiods(Rng& rng, double qmax);

}  // namespace ubeta
