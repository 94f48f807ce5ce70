#include "ubeta/sampling.hpp"

#include <cmath>

namespace ubeta {

namespace {

cplx polar_draw(Rng& rng, double rlo, double rhi) {
    const double r = rng.uniform(rlo, rhi);
    const double phi = rng.uniform(0.0, kTwoPi);
    return std::polar(r, phi);
}

}  // namespace

QuasiPeriods sample_quasiperiods(Rng& rng, double qmax) {
    // |q| = e^{-2 pi Im(w1/w2)}; keep Im(w1/w2) >= ln(1/qmax)/(2 pi)
    const double dmin = std::log(1.0 / qmax) / kTwoPi;
    const double d = rng.uniform(dmin, 0.5);
    const cplx w1{rng.uniform(0.8, 1.2), d};
    const cplx w2{1.0, 0.0};
    const cplx w3{rng.uniform(-0.2, 0.2), rng.uniform(1.4, 2.4)};
    return QuasiPeriods::derive(w1, w2, w3);
}

EllipticBetaParams sample_elliptic_beta(Rng& rng) {
    for (int tries = 0; tries < 1000; ++tries) {
        EllipticBetaParams par;
        for (auto& tn : par.t) tn = polar_draw(rng, 0.60, 0.85);
        par.q = polar_draw(rng, 0.18, 0.32) * cplx{1.0, 0.0};
        par.p = polar_draw(rng, 0.12, 0.22);
        if (std::abs(par.p * par.q) < 0.9 * std::abs(par.A())) return par;
    }
    throw DomainError("sample_elliptic_beta: rejection sampling failed");
}

UnitCircleBetaParams sample_unit_circle_beta(Rng& rng, Regime regime) {
    UnitCircleBetaParams par;
    if (regime == Regime::UnitCircle) {
        par.omegas = QuasiPeriods::derive(cplx{1.0, 0.0}, cplx{rng.uniform(1.25, 1.65), 0.0},
                                          cplx{0.0, rng.uniform(0.9, 1.3)});
    } else {
        par.omegas = QuasiPeriods::derive(cplx{1.0, rng.uniform(0.25, 0.45)}, cplx{1.0, 0.0},
                                          cplx{rng.uniform(-0.1, 0.1), rng.uniform(1.6, 2.2)});
    }
    const double s12 = (par.omegas.omega1 + par.omegas.omega2).real();
    for (int tries = 0; tries < 1000; ++tries) {
        for (auto& gn : par.g) gn = rng.cbox(0.14, 0.30, -0.10, 0.10);
        bool ok = true;
        const cplx w3 = par.omegas.omega3;
        for (const auto& gn : par.g) ok = ok && (gn / w3).imag() < -0.02;
        ok = ok && ((par.A() - par.omegas.omega1 - par.omegas.omega2) / w3).imag() >
                       0.05 * std::abs(s12 / w3);
        if (ok) return par;
    }
    throw DomainError("sample_unit_circle_beta: rejection sampling failed");
}

MultiEllipticParams sample_multiple_elliptic(Rng& rng, int N) {
    for (int tries = 0; tries < 1000; ++tries) {
        MultiEllipticParams par;
        par.N = N;
        par.t = polar_draw(rng, 0.50, 0.70);
        for (auto& tn : par.tn) tn = polar_draw(rng, 0.70, 0.85);
        par.q = polar_draw(rng, 0.10, 0.16);
        par.p = polar_draw(rng, 0.10, 0.16);
        if (std::abs(par.p * par.q) < 0.9 * std::abs(par.B())) return par;
    }
    throw DomainError("sample_multiple_elliptic: rejection sampling failed");
}

MultiModifiedParams sample_multiple_modified(Rng& rng, int N, Regime regime) {
    MultiModifiedParams par;
    par.N = N;
    if (regime == Regime::UnitCircle) {
        par.omegas = QuasiPeriods::derive(cplx{1.0, 0.0}, cplx{rng.uniform(1.25, 1.65), 0.0},
                                          cplx{0.0, rng.uniform(0.9, 1.3)});
    } else {
        par.omegas = QuasiPeriods::derive(cplx{1.0, rng.uniform(0.25, 0.45)}, cplx{1.0, 0.0},
                                          cplx{rng.uniform(-0.1, 0.1), rng.uniform(1.6, 2.2)});
    }
    const cplx w3 = par.omegas.omega3;
    const double s12 = (par.omegas.omega1 + par.omegas.omega2).real();
    for (int tries = 0; tries < 1000; ++tries) {
        par.g = rng.cbox(0.10, 0.18, -0.05, 0.05);
        for (auto& gn : par.gn) gn = rng.cbox(0.12, 0.26, -0.08, 0.08);
        bool ok = (par.g / w3).imag() < -0.02;
        for (const auto& gn : par.gn) ok = ok && (gn / w3).imag() < -0.02;
        ok = ok && ((par.B() - par.omegas.omega1 - par.omegas.omega2) / w3).imag() >
                       0.05 * std::abs(s12 / w3);
        if (ok) return par;
    }
    throw DomainError("sample_multiple_modified: rejection sampling failed");
}

HyperbolicParams sample_hyperbolic(Rng& rng, HypKind kind, int N) {
    HyperbolicParams par;
    par.kind = kind;
    par.N = N;
    par.gn.resize(kind == HypKind::NassrallahRahman ? 5 : 4);
    for (int tries = 0; tries < 1000; ++tries) {
        par.pair = SinePair::make(cplx{1.0, rng.uniform(0.25, 0.45)}, cplx{1.0, 0.0});
        const cplx w1 = par.pair.omega1, w2 = par.pair.omega2;
        const double glo = N >= 2 ? 0.12 : 0.0, ghi = N >= 2 ? 0.22 : 0.0;
        par.g = N >= 2 ? rng.cbox(glo, ghi, -0.04, 0.04) : cplx{};
        const double span = kind == HypKind::NassrallahRahman ? 0.30 : 0.38;
        for (auto& gn : par.gn) gn = rng.cbox(0.18, span, -0.06, 0.06);
        bool ok = true;
        for (const auto& gn : par.gn) ok = ok && (gn / w2).real() > 0.02;
        if (N >= 2) ok = ok && (par.g / w1).real() > 0.02 && (par.g / w2).real() > 0.02;
        if (kind == HypKind::NassrallahRahman)
            ok = ok && ((par.B() - w1) / w2).real() < 0.9;
        else
            ok = ok && ((par.B() - w2) / w1).real() < 0.8 && par.decay_rate() > 0.8;
        if (ok) return par;
    }
    throw DomainError("sample_hyperbolic: rejection sampling failed");
}

AdditiveBetaParams sample_additive_beta(Rng& rng) {
    AdditiveBetaParams par;
    par.omegas = QuasiPeriods::derive(cplx{1.0, rng.uniform(0.25, 0.45)}, cplx{1.0, 0.0},
                                      cplx{rng.uniform(-0.1, 0.1), rng.uniform(1.6, 2.2)});
    for (auto& gn : par.g) gn = rng.cbox(0.05, 0.25, -0.15, 0.15);
    return par;
}

}  // namespace ubeta
