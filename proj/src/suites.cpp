#include "ubeta/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ubeta/qseries.hpp"
#include "ubeta/sampling.hpp"

namespace ubeta {

namespace {

double relerr(cplx a, cplx b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct Battery {
    std::vector<CaseResult> cases;
    Rng rng;
    const PrecisionPolicy& base;

    Battery(std::uint64_t seed, const PrecisionPolicy& pol) : rng(seed), base(pol) {}

    void add(const std::string& name, double metric, double threshold, std::string note = "") {
        cases.push_back({name, metric <= threshold, metric, threshold, std::move(note)});
    }
    void add_lower_bound(const std::string& name, double metric, double threshold) {
        cases.push_back({name, metric > threshold, metric, threshold, "lower bound"});
    }

    PrecisionPolicy quad_policy(double target, int max_panels = 0) const {
        PrecisionPolicy pol = base;
        pol.quad_rel_tol = target / 100.0;
        pol.quad_abs_tol = target * 1e-6;
        if (max_panels > 0) pol.quad_max_panels = max_panels;
        return pol;
    }
};

// --------------------------------------------------------------------------
// functions battery

void battery_theta(Battery& B) {
    const PrecisionPolicy& pol = B.base;
    double worst_quasi = 0.0, worst_inv = 0.0;
    for (int i = 0; i < 50; ++i) {
        const cplx z = std::polar(B.rng.uniform(0.1, 3.0), B.rng.uniform(0.0, kTwoPi));
        const Base p(std::polar(B.rng.uniform(0.05, 0.6), B.rng.uniform(0.0, kTwoPi)));
        const cplx t0 = theta(z, p, pol).value;
        worst_quasi = std::max(worst_quasi,
                               std::abs(theta(p.value * z, p, pol).value + t0 / z) / std::abs(t0));
        worst_inv = std::max(worst_inv,
                             std::abs(theta(1.0 / z, p, pol).value + t0 / z) / std::abs(t0));
    }
    B.add("theta-quasiperiodicity", worst_quasi, 1e-10);
    B.add("theta-inversion", worst_inv, 1e-10);

    double worst_shift = 0.0, worst_mod = 0.0, worst_dedekind = 0.0, worst_modform = 0.0;
    double worst_series = 0.0;
    for (int i = 0; i < 50; ++i) {
        const cplx tau{B.rng.uniform(-0.4, 0.4), B.rng.uniform(0.4, 1.5)};
        const cplx u = B.rng.cbox(-0.8, 0.8, -0.3, 0.3);
        const cplx t1 = theta1(u, tau, pol).value;
        worst_shift = std::max(worst_shift,
                               std::abs(theta1(u + 1.0, tau, pol).value + t1) / std::abs(t1));
        const cplx law2 = -cispi(-tau - 2.0 * u) * t1;
        worst_shift = std::max(worst_shift,
                               std::abs(theta1(u + tau, tau, pol).value - law2) / std::abs(t1));
        worst_mod = std::max(worst_mod, relerr(theta1(u, tau + 1.0, pol).value,
                                               cispi(0.25) * t1));
        const cplx lawS = -cplx{0.0, 1.0} * std::sqrt(-cplx{0.0, 1.0} * tau) *
                          cispi(u * u / tau) * t1;
        worst_mod = std::max(worst_mod, relerr(theta1(u / tau, -1.0 / tau, pol).value, lawS));
        worst_series = std::max(worst_series, relerr(t1, theta1_series(u, tau, pol)));
    }
    for (int i = 0; i < 50; ++i) {
        const cplx tau{B.rng.uniform(-0.4, 0.4), B.rng.uniform(0.5, 1.2)};
        worst_dedekind = std::max(
            worst_dedekind, relerr(eta_product(-1.0 / tau, pol),
                                   std::sqrt(-cplx{0.0, 1.0} * tau) * eta_product(tau, pol)));
        const cplx u = B.rng.cbox(-1.0, 1.0, -0.2, 0.2);
        const cplx lhs = theta(cis2pi(u / tau), Base(cis2pi(-1.0 / tau)), pol).value;
        const cplx rhs = -cplx{0.0, 1.0} *
                         cispi(u * u / tau + tau / 6.0 + 1.0 / (6.0 * tau) + u / tau - u) *
                         theta(cis2pi(u), Base(cis2pi(tau)), pol).value;
        worst_modform = std::max(worst_modform, relerr(lhs, rhs));
    }
    B.add("theta1-quasiperiodicity", worst_shift, 1e-10);
    B.add("theta1-modular", worst_mod, 1e-10);
    B.add("theta1-series-vs-product", worst_series, 1e-11);
    B.add("dedekind-modular-law", worst_dedekind, 1e-10);
    B.add("theta-modular-formula", worst_modform, 1e-10);
}

void battery_gamma_g(Battery& B) {
    const PrecisionPolicy& pol = B.base;
    double worst_diff = 0.0, worst_refl = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Base q(std::polar(B.rng.uniform(0.1, 0.5), B.rng.uniform(-0.4, 0.4)));
        const Base p(std::polar(B.rng.uniform(0.1, 0.4), B.rng.uniform(-0.4, 0.4)));
        const cplx z = std::polar(B.rng.uniform(0.3, 1.6), B.rng.uniform(0.0, kTwoPi));
        const cplx g0 = elliptic_gamma(z, q, p, pol).value;
        worst_diff = std::max(worst_diff,
                              relerr(elliptic_gamma(q.value * z, q, p, pol).value,
                                     theta(z, p, pol).value * g0));
        worst_diff = std::max(worst_diff,
                              relerr(elliptic_gamma(p.value * z, q, p, pol).value,
                                     theta(z, q, pol).value * g0));
        const cplx refl = g0 * elliptic_gamma(1.0 / z, q, p, pol).value *
                          theta(z, p, pol).value * theta(1.0 / z, q, pol).value;
        worst_refl = std::max(worst_refl, std::abs(refl - 1.0));
    }
    B.add("gamma-difference-equations", worst_diff, 1e-10);
    B.add("gamma-reflection", worst_refl, 1e-10);

    // all three difference equations of G, strict and unit-circle regimes
    double worst_g = 0.0, worst_grefl = 0.0;
    for (int i = 0; i < 50; ++i) {
        const bool strict = i % 2 == 0;
        const QuasiPeriods w =
            strict ? sample_quasiperiods(B.rng, 0.7)
                   : QuasiPeriods::derive(cplx{1.0, 0.0}, cplx{B.rng.uniform(1.2, 1.7), 0.0},
                                          cplx{0.0, B.rng.uniform(0.9, 1.4)});
        const cplx u = B.rng.cbox(-0.3, 0.3, -0.3, 0.3) + 0.13;
        const cplx g0 = modified_gamma(u, w, pol).value;
        worst_g = std::max(worst_g, relerr(modified_gamma(u + w.omega1, w, pol).value,
                                           theta(cis2pi(u / w.omega2), Base(w.p), pol).value * g0));
        worst_g = std::max(worst_g, relerr(modified_gamma(u + w.omega2, w, pol).value,
                                           theta(cis2pi(u / w.omega1), Base(w.r), pol).value * g0));
        worst_g = std::max(worst_g, relerr(modified_gamma(u + w.omega3, w, pol).value,
                                           cispi(-b22(u, w)) * g0));
        const cplx refl = g0 * modified_gamma(-u, w, pol).value *
                          theta(cis2pi(-u / w.omega1), Base(w.r), pol).value *
                          theta(cis2pi(-u / w.omega2), Base(w.p), pol).value * cispi(-b22(u, w));
        worst_grefl = std::max(worst_grefl, std::abs(refl - 1.0));
    }
    B.add("g-difference-equations", worst_g, 1e-10);
    B.add("g-reflection", worst_grefl, 1e-10);

    double worst_cross = 0.0;
    for (int i = 0; i < 50; ++i) {
        const QuasiPeriods w = sample_quasiperiods(B.rng, 0.7);
        const cplx u = B.rng.cbox(-0.3, 0.4, -0.2, 0.2) + 0.17;
        worst_cross = std::max(worst_cross, relerr(modified_gamma_product(u, w, pol).value,
                                                   modified_gamma(u, w, pol).value));
    }
    B.add("g-product-vs-continuation", worst_cross, 1e-9);
}

void battery_sine(Battery& B) {
    const PrecisionPolicy& pol = B.base;
    double worst_fe = 0.0, worst_asym = 0.0, worst_swap = 0.0, worst_rr = 0.0;
    for (int i = 0; i < 50; ++i) {
        const SinePair pair =
            SinePair::make(cplx{B.rng.uniform(0.8, 1.2), B.rng.uniform(0.25, 0.6)}, cplx{1.0, 0.0});
        const cplx u = B.rng.cbox(-0.4, 0.6, -0.4, 0.4) + 0.21;
        const cplx s0 = double_sine(u, pair, pol).value;
        worst_fe = std::max(worst_fe,
                            relerr(double_sine(u + pair.omega1, pair, pol).value,
                                   s0 / (1.0 - cis2pi(u / pair.omega2))));
        worst_fe = std::max(worst_fe,
                            relerr(double_sine(u + pair.omega2, pair, pol).value,
                                   s0 / (1.0 - cis2pi(u / pair.omega1))));
    }
    B.add("s-functional-equations", worst_fe, 1e-10);

    for (int i = 0; i < 10; ++i) {
        const cplx w1{B.rng.uniform(0.8, 1.2), B.rng.uniform(0.3, 0.5)};
        const cplx w2{1.0, 0.0};
        const SinePair pair = SinePair::make(w1, w2);
        const cplx up = cplx{0.0, 10.0} * (w1 + w2);
        worst_asym = std::max(worst_asym, std::abs(double_sine(up, pair, pol).value - 1.0));
        const cplx dn = -up;
        const cplx prod = cispi(b22(dn, w1, w2)) * double_sine(dn, pair, pol).value;
        worst_asym = std::max(worst_asym, std::abs(prod - 1.0));
    }
    B.add("s-asymptotics", worst_asym, 1e-8);

    // real-ratio continuation: functional equations plus the omega-swap, each
    // computed through two independent regulator routes
    for (int i = 0; i < 10; ++i) {
        const cplx w1{B.rng.uniform(1.2, 1.7), 0.0};
        const cplx w2{1.0, 0.0};
        const SinePair pair = SinePair::make(w1, w2);
        const cplx u = B.rng.cbox(0.2, 1.0, -0.3, 0.3);
        const cplx s0 = double_sine(u, pair, pol).value;
        worst_rr = std::max(worst_rr, relerr(double_sine(u + w1, pair, pol).value,
                                             s0 / (1.0 - cis2pi(u / w2))));
        worst_rr = std::max(worst_rr, relerr(double_sine(u + w2, pair, pol).value,
                                             s0 / (1.0 - cis2pi(u / w1))));
        worst_swap =
            std::max(worst_swap, relerr(s0, double_sine(u, SinePair::make(w2, w1), pol).value));
        worst_swap = std::max(worst_swap,
                              relerr(s0, double_sine_continued(u, w1, w2, 9.5, pol).value));
    }
    B.add("s-realratio-functional-equations", worst_rr, 1e-10);
    B.add("s-omega-swap", worst_swap, 1e-10);

    // continuity of the real-ratio route against the product form
    double worst_cont = 0.0;
    for (double eps : {1e-3, 1e-4}) {
        const cplx w1{1.41421356, eps};
        const SinePair pair = SinePair::make(w1, cplx{1.0, 0.0});
        const cplx u{0.45, 0.2};
        const cplx via_product = double_sine(u, pair, pol).value;
        const cplx via_cont =
            double_sine(u, SinePair::make(cplx{w1.real(), 0.0}, cplx{1.0, 0.0}), pol).value;
        worst_cont = std::max(worst_cont, relerr(via_product, via_cont) / eps);
    }
    B.add("s-realratio-continuity", worst_cont, 50.0, "scaled by 1/eps");

    double worst_lim = 0.0;
    for (int i = 0; i < 5; ++i) {
        const cplx w1{B.rng.uniform(0.9, 1.1), B.rng.uniform(0.3, 0.5)};
        const cplx w2{1.0, 0.0};
        const cplx u = B.rng.cbox(-0.2, 0.5, -0.2, 0.2);
        worst_lim = std::max(worst_lim, double_sine_limit_check(u, w1, w2, 40.0, pol));
    }
    B.add("g-double-sine-limit-t40", worst_lim, 1e-6);
}

void battery_kappa(Battery& B) {
    const PrecisionPolicy& pol = B.base;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const QuasiPeriods w = sample_quasiperiods(B.rng, 0.8);
        const cplx kd = kappa_direct(w, pol);
        worst = std::max(worst, relerr(kd, kappa_modular(w, pol)));
        worst = std::max(worst, relerr(kd, kappa_half_modular(w, pol)));
    }
    const QuasiPeriods uc =
        QuasiPeriods::derive(cplx{1.0, 0.0}, cplx{1.41421356237, 0.0}, cplx{0.0, 1.0});
    worst = std::max(worst, relerr(kappa_modular(uc, pol), kappa_half_modular(uc, pol)));
    const QuasiPeriods uc2 = QuasiPeriods::derive(2.0 * uc.omega1, 2.0 * uc.omega2, 2.0 * uc.omega3);
    worst = std::max(worst, relerr(kappa_modular(uc, pol), kappa_modular(uc2, pol)));
    B.add("kappa-form-consistency", worst, 1e-10);
}

// --------------------------------------------------------------------------
// identity batteries

void battery_identities_1d(Battery& B) {
    {
        const PrecisionPolicy pol = B.quad_policy(1e-8);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const VerificationReport rep = verify(sample_elliptic_beta(B.rng), pol);
            worst = std::max(worst, rep.error.empty() ? rep.rel_error : 1.0);
        }
        B.add("elliptic-beta-20-draws", worst, 1e-8);

        EllipticBetaParams rahman = sample_elliptic_beta(B.rng);
        rahman.p = 0.0;
        const Sides s = elliptic_beta_sides(rahman, pol);
        B.add("elliptic-beta-rahman-p0", relerr(s.lhs, s.rhs), 1e-9);
    }
    {
        const PrecisionPolicy pol = B.quad_policy(1e-6);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const VerificationReport rep = verify(sample_unit_circle_beta(B.rng, Regime::UnitCircle), pol);
            worst = std::max(worst, rep.error.empty() ? rep.rel_error : 1.0);
        }
        B.add("unit-circle-beta-20-draws", worst, 1e-6);
    }
    {
        const PrecisionPolicy pol = B.quad_policy(1e-8);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const VerificationReport rep =
                verify(sample_unit_circle_beta(B.rng, Regime::StrictlyElliptic), pol);
            worst = std::max(worst, rep.error.empty() ? rep.rel_error : 1.0);
        }
        B.add("unit-circle-beta-strict-20-draws", worst, 1e-8);
    }
    {
        const PrecisionPolicy pol = B.quad_policy(1e-6);
        double worst_nr = 0.0, worst_aw = 0.0;
        for (int i = 0; i < 20; ++i) {
            const VerificationReport rn = verify(sample_hyperbolic(B.rng, HypKind::NassrallahRahman, 1), pol);
            worst_nr = std::max(worst_nr, rn.error.empty() ? rn.rel_error : 1.0);
            const VerificationReport ra = verify(sample_hyperbolic(B.rng, HypKind::AskeyWilson, 1), pol);
            worst_aw = std::max(worst_aw, ra.error.empty() ? ra.rel_error : 1.0);
        }
        B.add("hyperbolic-nr-n1-20-draws", worst_nr, 1e-6);
        B.add("hyperbolic-aw-n1-20-draws", worst_aw, 1e-6);

        // Askey-Wilson single-variable form written out directly, away from the
        // generic N-fold machinery.
        const HyperbolicParams par = sample_hyperbolic(B.rng, HypKind::AskeyWilson, 1);
        const SinePair pair = par.pair;
        auto S = [&](cplx x) { return double_sine(x, pair, pol); };
        Integrand f = [&](cplx u) {
            Flagged den = Flagged::one();
            for (const cplx& gn : par.gn) den = fmul(den, fmul(S(gn + u), S(gn - u)));
            return fmul(fdiv(fmul(S(2.0 * u), S(-2.0 * u)), den), 1.0 / pair.omega2);
        };
        const double X = line_truncation(par.decay_rate(), pol);
        const QuadResult qr = integrate(f, Contour::line(cplx{0.0, 1.0} * pair.omega2, X), pol);
        const cplx q = cis2pi(pair.omega1 / pair.omega2), qt = cis2pi(-pair.omega2 / pair.omega1);
        Flagged rd = Flagged::one();
        for (int n = 0; n < 4; ++n)
            for (int m = n + 1; m < 4; ++m) rd = fmul(rd, S(par.gn[n] + par.gn[m]));
        const cplx pref = qpochhammer(qt, Base(qt), pol).value / qpochhammer(q, Base(q), pol).value;
        const cplx rhs = -2.0 * pref *
                         S(par.gn[0] + par.gn[1] + par.gn[2] + par.gn[3]).value /
                         require_finite(rd, "aw display");
        const double direct = relerr(qr.value, rhs);
        const Sides generic = hyperbolic_aw_sides(par, pol);
        B.add("aw-n1-display-direct", std::max(direct, relerr(qr.value, generic.lhs)), 1e-6);
    }
    {
        // NR with g4 pushed far up the cone degenerates to the AW form
        const PrecisionPolicy pol = B.quad_policy(1e-6);
        HyperbolicParams aw = sample_hyperbolic(B.rng, HypKind::AskeyWilson, 1);
        HyperbolicParams nr;
        nr.kind = HypKind::NassrallahRahman;
        nr.N = 1;
        nr.pair = aw.pair;
        nr.gn = aw.gn;
        nr.gn.push_back(cplx{0.4, 0.0} + cplx{0.0, 6.0} * aw.pair.omega2);
        const Sides sn = hyperbolic_nr_sides(nr, pol);
        const Sides sa = hyperbolic_aw_sides(aw, pol);
        B.add("nr-to-aw-degeneration", std::max(relerr(sn.lhs, sa.lhs), relerr(sn.rhs, sa.rhs)),
              1e-4);
    }
    {
        const PrecisionPolicy& pol = B.base;
        double worst = 0.0, neg = 1e9;
        for (int i = 0; i < 20; ++i) {
            const AdditiveBetaParams par = sample_additive_beta(B.rng);
            const cplx u = B.rng.cbox(-0.3, 0.3, -0.2, 0.2) + 0.11;
            worst = std::max(worst, ellipticity_residual(u, par, RatioBuilder::ThetaProducts, pol));
            worst = std::max(worst, ellipticity_residual(u, par, RatioBuilder::GDifference, pol));
            worst = std::max(worst, relerr(delta_shift_ratio(u, par, RatioBuilder::ThetaProducts, pol),
                                           delta_shift_ratio(u, par, RatioBuilder::GDifference, pol)));
            neg = std::min(neg, shift_residual(u, par.omegas.omega1, par,
                                               RatioBuilder::ThetaProducts, pol));
        }
        B.add("ellipticity-residual", worst, 1e-10);
        B.add_lower_bound("ellipticity-negative-control-w1", neg, 1e-3);
    }
}

void battery_identities_2d(Battery& B) {
    {
        const PrecisionPolicy pol = B.quad_policy(1e-4, 1500);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const VerificationReport rep = verify(sample_multiple_elliptic(B.rng, 2), pol);
            worst = std::max(worst, rep.error.empty() ? rep.rel_error : 1.0);
        }
        B.add("mult-elliptic-n2-5-draws", worst, 1e-4);
    }
    {
        const PrecisionPolicy pol = B.quad_policy(1e-3, 1500);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Regime reg = i % 2 == 0 ? Regime::UnitCircle : Regime::StrictlyElliptic;
            const VerificationReport rep = verify(sample_multiple_modified(B.rng, 2, reg), pol);
            worst = std::max(worst, rep.error.empty() ? rep.rel_error : 1.0);
        }
        B.add("mult-modified-n2-5-draws", worst, 1e-3);
    }
    {
        const PrecisionPolicy pol = B.quad_policy(1e-3, 1500);
        double worst_nr = 0.0, worst_aw = 0.0;
        for (int i = 0; i < 5; ++i) {
            const VerificationReport rn = verify(sample_hyperbolic(B.rng, HypKind::NassrallahRahman, 2), pol);
            worst_nr = std::max(worst_nr, rn.error.empty() ? rn.rel_error : 1.0);
            const VerificationReport ra = verify(sample_hyperbolic(B.rng, HypKind::AskeyWilson, 2), pol);
            worst_aw = std::max(worst_aw, ra.error.empty() ? ra.rel_error : 1.0);
        }
        B.add("hyperbolic-nr-n2-5-draws", worst_nr, 1e-3);
        B.add("hyperbolic-aw-n2-5-draws", worst_aw, 1e-3);
    }
    {
        // N = 1 reductions of the multiple builders against the single builders
        const PrecisionPolicy pol = B.quad_policy(1e-8);
        const EllipticBetaParams eb = sample_elliptic_beta(B.rng);
        MultiEllipticParams me;
        me.N = 1;
        me.t = 0.5;
        me.tn = eb.t;
        me.q = eb.q;
        me.p = eb.p;
        const Sides s1 = elliptic_beta_sides(eb, pol);
        const Sides sm = multiple_elliptic_sides(me, pol);
        double worst = std::max(relerr(s1.lhs, sm.lhs), relerr(s1.rhs, sm.rhs));

        const UnitCircleBetaParams ub = sample_unit_circle_beta(B.rng, Regime::UnitCircle);
        MultiModifiedParams mm;
        mm.N = 1;
        mm.g = cplx{0.1, -0.05};
        mm.gn = ub.g;
        mm.omegas = ub.omegas;
        const Sides u1 = unit_circle_beta_sides(ub, pol);
        const Sides um = multiple_modified_sides(mm, pol);
        worst = std::max(worst, std::max(relerr(u1.lhs, um.lhs), relerr(u1.rhs, um.rhs)));
        B.add("n1-reductions", worst, 1e-10);
    }
    {
        // g -> 0: the N = 2 product side approaches the square of the N = 1 side
        const PrecisionPolicy& pol = B.base;
        MultiModifiedParams par = sample_multiple_modified(B.rng, 2, Regime::UnitCircle);
        par.g = cplx{1.0, -1.0} * (1e-3 / std::sqrt(2.0));
        const cplx rhs2 = multiple_modified_rhs(par, pol);
        MultiModifiedParams par1 = par;
        par1.N = 1;
        const cplx rhs1 = multiple_modified_rhs(par1, pol);
        B.add("mod-rhs-g-to-zero", std::abs(rhs2 / (rhs1 * rhs1) - 1.0), 5e-2);
    }
}

// generic z draw kept away from the vanishing denominators 1 - z_i^{+-1} z_j^{+-1}
// and 1 - z_j^2, so the 2^N-term sums stay well conditioned
std::vector<cplx> draw_separated_z(Rng& rng, int N) {
    for (int tries = 0; tries < 200; ++tries) {
        std::vector<cplx> z(N);
        for (auto& x : z) x = std::polar(rng.uniform(0.55, 1.5), rng.uniform(0.3, 6.0));
        double sep = 1e9;
        for (int j = 0; j < N; ++j) {
            sep = std::min(sep, std::abs(1.0 - z[j] * z[j]));
            sep = std::min(sep, std::abs(1.0 - 1.0 / (z[j] * z[j])));
            for (int k = j + 1; k < N; ++k)
                for (const cplx zz : {z[j] * z[k], z[j] / z[k]})
                    sep = std::min(std::min(sep, std::abs(1.0 - zz)),
                                   std::abs(1.0 - 1.0 / zz));
        }
        if (sep > 0.3) return z;
    }
    throw DomainError("draw_separated_z: rejection sampling failed");
}

void battery_rho(Battery& B) {
    double worst = 0.0, worst_t = 0.0, worst_z = 0.0, worst_anti = 0.0;
    for (int N = 1; N <= 4; ++N) {
        for (int i = 0; i < 20; ++i) {
            const cplx t = B.rng.cbox(0.2, 0.5, -0.1, 0.1);
            std::array<cplx, 3> t3;
            for (auto& x : t3) x = B.rng.cbox(0.25, 0.55, -0.1, 0.1);
            std::vector<cplx> z = draw_separated_z(B.rng, N);
            worst = std::max(worst, std::abs(rho_brute(z, t, t3, N) - rho_closed(t, t3, N)) /
                                        std::abs(rho_closed(t, t3, N)));

            std::array<cplx, 5> tn;
            for (auto& x : tn) x = B.rng.cbox(0.25, 0.55, -0.1, 0.1);
            const cplx q = B.rng.cbox(0.2, 0.4, -0.05, 0.05);
            cplx Bv = tn[0] * tn[1] * tn[2] * tn[3] * tn[4];
            for (int j = 0; j < 2 * (N - 1); ++j) Bv *= t;
            worst_t = std::max(worst_t,
                               std::abs(rho_tilde_brute(z, t, tn, Bv, q, N) -
                                        rho_tilde_closed(t, tn, Bv, q, N)) /
                                   std::abs(rho_tilde_closed(t, tn, Bv, q, N)));
        }
    }
    B.add("rho-closed-form-n1-4", worst, 1e-11);
    B.add("rho-tilde-closed-form-n1-4", worst_t, 1e-11);

    for (int N = 2; N <= 4; ++N) {
        const cplx t = B.rng.cbox(0.2, 0.5, -0.1, 0.1);
        std::array<cplx, 3> t3;
        for (auto& x : t3) x = B.rng.cbox(0.25, 0.55, -0.1, 0.1);
        std::vector<cplx> vals;
        for (int rep = 0; rep < 5; ++rep)
            vals.push_back(rho_brute(draw_separated_z(B.rng, N), t, t3, N));
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b)
                worst_z = std::max(worst_z, std::abs(vals[a] - vals[b]) / std::abs(vals[a]));
    }
    B.add("rho-z-independence", worst_z, 1e-11);

    {
        // antisymmetry of rho times the Laurent factor under swap and inversion
        const int N = 3;
        const cplx t = cplx{0.31, 0.08};
        const std::array<cplx, 3> t3{cplx{0.3, 0.02}, cplx{0.4, -0.05}, cplx{0.5, 0.1}};
        const std::vector<cplx> z = draw_separated_z(B.rng, N);
        auto A = [&](const std::vector<cplx>& zz) {
            return rho_brute(zz, t, t3, N) * rho_antisym_factor(zz, N);
        };
        const cplx base = A(z);
        std::vector<cplx> swapped = z;
        std::swap(swapped[0], swapped[2]);
        worst_anti = std::max(worst_anti, std::abs(A(swapped) + base) / std::abs(base));
        std::vector<cplx> inverted = z;
        inverted[1] = 1.0 / inverted[1];
        worst_anti = std::max(worst_anti, std::abs(A(inverted) + base) / std::abs(base));
        B.add("rho-antisymmetry", worst_anti, 1e-11);
    }
}

}  // namespace

int SuiteResult::n_passed() const {
    int n = 0;
    for (const auto& c : cases) n += c.passed ? 1 : 0;
    return n;
}

bool SuiteResult::all_passed() const { return n_passed() == static_cast<int>(cases.size()); }

std::vector<std::string> suite_names() {
    return {"functions", "identities-1d", "identities-2d", "rho", "all"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, const PrecisionPolicy& policy) {
    const auto start = std::chrono::steady_clock::now();
    Battery B(seed, policy);
    const bool all = name == "all";
    if (all || name == "functions") {
        battery_theta(B);
        battery_gamma_g(B);
        battery_sine(B);
        battery_kappa(B);
    }
    if (all || name == "identities-1d") battery_identities_1d(B);
    if (all || name == "identities-2d") battery_identities_2d(B);
    if (all || name == "rho") battery_rho(B);
    if (B.cases.empty()) throw DomainError("unknown suite '" + name + "'");
    SuiteResult res;
    res.suite = name;
    res.cases = std::move(B.cases);
    res.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return res;
}

}  // namespace ubeta
