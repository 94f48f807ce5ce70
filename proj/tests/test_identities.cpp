#include <doctest.h>

#include "ubeta/identities.hpp"
#include "ubeta/qseries.hpp"
#include "ubeta/sampling.hpp"

using namespace ubeta;

namespace {

const PrecisionPolicy pol;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

EllipticBetaParams spec_eb_params() {
    EllipticBetaParams par;
    par.t = {cplx{0.8, 0.0}, cplx{0.75, 0.0}, cplx{0.7, 0.1}, cplx{0.65, 0.0}, cplx{0.78, 0.0}};
    par.q = 0.3;
    par.p = 0.2;
    return par;
}

}  // namespace

TEST_CASE("rho: closed-form product evaluations") {
    // N = 1: value is (1 - t0 t1)(1 - t0 t2)(1 - t1 t2) for any generic z
    const std::array<cplx, 3> t3{cplx{0.3, 0.0}, cplx{0.4, 0.0}, cplx{0.5, 0.0}};
    const cplx z1[1] = {cplx{0.7, 0.2}};
    const cplx v = rho_brute(z1, 0.31, t3, 1);
    CHECK(std::abs(v - (1.0 - 0.12) * (1.0 - 0.15) * (1.0 - 0.2)) < 1e-14);

    Rng rng(9);
    for (int N = 1; N <= 4; ++N) {
        for (int it = 0; it < 10; ++it) {
            const cplx t = rng.cbox(0.2, 0.5, -0.1, 0.1);
            std::array<cplx, 3> ts;
            for (auto& x : ts) x = rng.cbox(0.25, 0.55, -0.1, 0.1);
            std::vector<cplx> z(N);
            for (auto& x : z) x = std::polar(rng.uniform(0.5, 1.6), rng.uniform(0.3, 6.0));
            CHECK(std::abs(rho_brute(z, t, ts, N) - rho_closed(t, ts, N)) <
                  1e-12 * std::abs(rho_closed(t, ts, N)));
        }
    }
}

TEST_CASE("rho: z_j = t0 t^{N-j} leaves the single all-plus term") {
    const cplx t{0.4, 0.05};
    const std::array<cplx, 3> t3{cplx{0.45, 0.0}, cplx{0.35, 0.1}, cplx{0.5, -0.05}};
    const int N = 3;
    std::vector<cplx> z(N);
    for (int j = 1; j <= N; ++j) z[j - 1] = t3[0] * std::pow(t, N - j);
    CHECK(std::abs(rho_brute(z, t, t3, N) - rho_closed(t, t3, N)) <
          1e-12 * std::abs(rho_closed(t, t3, N)));
}

TEST_CASE("rho tilde: closed form and z-independence") {
    Rng rng(10);
    for (int N = 1; N <= 3; ++N) {
        const cplx t = rng.cbox(0.2, 0.5, -0.1, 0.1);
        std::array<cplx, 5> tn;
        for (auto& x : tn) x = rng.cbox(0.25, 0.55, -0.1, 0.1);
        const cplx q = rng.cbox(0.25, 0.4, -0.05, 0.05);
        cplx B = tn[0] * tn[1] * tn[2] * tn[3] * tn[4];
        for (int j = 0; j < 2 * (N - 1); ++j) B *= t;
        std::vector<cplx> z(N), z2(N);
        for (auto& x : z) x = std::polar(rng.uniform(0.5, 1.6), rng.uniform(0.3, 6.0));
        for (auto& x : z2) x = std::polar(rng.uniform(0.5, 1.6), rng.uniform(0.3, 6.0));
        const cplx closed = rho_tilde_closed(t, tn, B, q, N);
        CHECK(std::abs(rho_tilde_brute(z, t, tn, B, q, N) - closed) < 1e-12 * std::abs(closed));
        CHECK(std::abs(rho_tilde_brute(z, t, tn, B, q, N) - rho_tilde_brute(z2, t, tn, B, q, N)) <
              1e-12 * std::abs(closed));
    }
    // vanishing denominator guard
    const std::array<cplx, 3> t3{cplx{0.3, 0.0}, cplx{0.4, 0.0}, cplx{0.5, 0.0}};
    const cplx bad[1] = {cplx{1.0, 0.0}};
    CHECK_THROWS_AS(rho_brute(bad, 0.3, t3, 1), DomainError);
}

TEST_CASE("rho antisymmetrized by the Laurent factor") {
    Rng rng(12);
    const int N = 3;
    const cplx t{0.31, 0.08};
    const std::array<cplx, 3> t3{cplx{0.3, 0.02}, cplx{0.4, -0.05}, cplx{0.5, 0.1}};
    std::vector<cplx> z(N);
    for (auto& x : z) x = std::polar(rng.uniform(0.6, 1.5), rng.uniform(0.3, 6.0));
    auto A = [&](const std::vector<cplx>& zz) {
        return rho_brute(zz, t, t3, N) * rho_antisym_factor(zz, N);
    };
    const cplx base = A(z);
    auto sw = z;
    std::swap(sw[0], sw[1]);
    CHECK(std::abs(A(sw) + base) < 1e-11 * std::abs(base));
    auto inv = z;
    inv[2] = 1.0 / inv[2];
    CHECK(std::abs(A(inv) + base) < 1e-11 * std::abs(base));
}

TEST_CASE("kappa forms agree") {
    const QuasiPeriods se = QuasiPeriods::derive(cplx{1.0, 0.4}, 1.0, cplx{0.0, 2.0});
    const cplx kd = kappa_direct(se, pol);
    CHECK(rel(kd, kappa_modular(se, pol)) < 1e-10);
    CHECK(rel(kd, kappa_half_modular(se, pol)) < 1e-10);
    CHECK(rel(kd, kappa_constant(se, pol)) < 1e-15);

    const QuasiPeriods uc = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    const cplx km = kappa_modular(uc, pol);
    CHECK(std::isfinite(km.real()));
    CHECK(rel(km, kappa_half_modular(uc, pol)) < 1e-10);
    const QuasiPeriods uc2 =
        QuasiPeriods::derive(2.0 * uc.omega1, 2.0 * uc.omega2, 2.0 * uc.omega3);
    CHECK(rel(km, kappa_modular(uc2, pol)) < 1e-13);  // scale invariance
}

TEST_CASE("elliptic beta integral at the documented sample point") {
    PrecisionPolicy tight = pol;
    tight.quad_rel_tol = 1e-10;
    const Sides s = elliptic_beta_sides(spec_eb_params(), tight);
    CHECK(rel(s.lhs, s.rhs) < 1e-8);

    // permutation invariance of both sides
    EllipticBetaParams perm = spec_eb_params();
    std::swap(perm.t[0], perm.t[3]);
    std::swap(perm.t[1], perm.t[4]);
    const Sides s2 = elliptic_beta_sides(perm, tight);
    CHECK(rel(s.lhs, s2.lhs) < 1e-12);
    CHECK(rel(s.rhs, s2.rhs) < 1e-12);

    // p = 0 specialization still balances
    EllipticBetaParams rahman = spec_eb_params();
    rahman.p = 0.0;
    const Sides s3 = elliptic_beta_sides(rahman, tight);
    CHECK(rel(s3.lhs, s3.rhs) < 1e-9);
}

TEST_CASE("elliptic beta parameter validation") {
    EllipticBetaParams bad = spec_eb_params();
    bad.t[0] = 1.2;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    EllipticBetaParams bad2 = spec_eb_params();
    bad2.q = 0.9;
    bad2.p = 0.8;  // |pq| = 0.72 > |A|
    CHECK_THROWS_AS(bad2.validate(), DomainError);
}

TEST_CASE("unit-circle beta integral on |q| = 1 and in the strict regime") {
    PrecisionPolicy tight = pol;
    tight.quad_rel_tol = 1e-9;
    UnitCircleBetaParams par;
    par.omegas = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    par.g = {cplx{0.3, 0.0}, cplx{0.3, 0.0}, cplx{0.3, 0.0}, cplx{0.3, 0.0}, cplx{0.3, 0.0}};
    const Sides s = unit_circle_beta_sides(par, tight);
    CHECK(rel(s.lhs, s.rhs) < 1e-6);
    // frozen high-precision value of the integral itself
    CHECK(std::abs(s.lhs - cplx{0.03326542808, -0.02616205228}) < 1e-9);

    Rng rng(31);
    const UnitCircleBetaParams strict = sample_unit_circle_beta(rng, Regime::StrictlyElliptic);
    const Sides s2 = unit_circle_beta_sides(strict, tight);
    CHECK(rel(s2.lhs, s2.rhs) < 1e-8);

    UnitCircleBetaParams perm = par;
    std::swap(perm.g[0], perm.g[4]);
    const Sides s3 = unit_circle_beta_sides(perm, tight);
    CHECK(rel(s.rhs, s3.rhs) < 1e-12);

    UnitCircleBetaParams bad = par;
    bad.g[0] = cplx{-0.2, 0.0};  // Im(g0/omega3) = +0.2
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("hyperbolic integrals at N = 1") {
    PrecisionPolicy tight = pol;
    tight.quad_rel_tol = 1e-8;
    HyperbolicParams nr;
    nr.kind = HypKind::NassrallahRahman;
    nr.N = 1;
    nr.pair = SinePair::make(cplx{1.0, 0.3}, 1.0);
    nr.gn.assign(5, cplx{0.35, 0.0});
    const Sides s = hyperbolic_nr_sides(nr, tight);
    CHECK(rel(s.lhs, s.rhs) < 1e-6);

    // integrand vanishes at u = 0 through the double zero of S(+-2u)
    auto S = [&](cplx x) { return double_sine(x, nr.pair, pol); };
    Flagged den = Flagged::one();
    for (const cplx& gn : nr.gn) den = fmul(den, fmul(S(gn), S(gn)));
    const cplx A5 = 5.0 * cplx{0.35, 0.0};
    const Flagged delta0 =
        fdiv(fmul(fmul(S(0.0), S(0.0)), fmul(S(A5), S(A5))), den);
    CHECK(std::abs(delta0.value) < 1e-8);
    CHECK(delta0.at_zero);

    HyperbolicParams aw;
    aw.kind = HypKind::AskeyWilson;
    aw.N = 1;
    aw.pair = nr.pair;
    aw.gn.assign(4, cplx{0.4, 0.0});
    const Sides sa = hyperbolic_aw_sides(aw, tight);
    CHECK(rel(sa.lhs, sa.rhs) < 1e-6);

    HyperbolicParams bad = aw;
    bad.gn.assign(4, cplx{0.8, 0.0});  // B too large: decay exponent <= 0
    CHECK_THROWS_AS(bad.validate(), TruncationError);
}

TEST_CASE("verify reports") {
    PrecisionPolicy tight = pol;
    tight.quad_rel_tol = 1e-10;
    const VerificationReport rep = verify(spec_eb_params(), tight);
    CHECK(rep.passed);
    CHECK(rep.rel_error < 1e-8);
    CHECK(rep.evaluations > 0);
    CHECK(rep.wall_time_ms > 0.0);
    CHECK(rep.identity == "elliptic-beta");

    UnitCircleBetaParams bad;
    bad.omegas = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    bad.g = {cplx{-0.2, 0.0}, cplx{0.3, 0.0}, cplx{0.3, 0.0}, cplx{0.3, 0.0}, cplx{0.3, 0.0}};
    const VerificationReport bad_rep = verify(bad, pol);
    CHECK(!bad_rep.passed);
    CHECK(bad_rep.invalid_input);
    CHECK(!bad_rep.error.empty());
}

TEST_CASE("ellipticity of the shift ratio") {
    Rng rng(41);
    const AdditiveBetaParams par = sample_additive_beta(rng);
    double worst = 0.0, control = 1e9;
    for (int i = 0; i < 10; ++i) {
        const cplx u = rng.cbox(-0.3, 0.3, -0.2, 0.2) + 0.11;
        worst = std::max(worst, ellipticity_residual(u, par, RatioBuilder::ThetaProducts, pol));
        worst = std::max(worst, ellipticity_residual(u, par, RatioBuilder::GDifference, pol));
        worst = std::max(worst, rel(delta_shift_ratio(u, par, RatioBuilder::ThetaProducts, pol),
                                    delta_shift_ratio(u, par, RatioBuilder::GDifference, pol)));
        control = std::min(control, shift_residual(u, par.omegas.omega1, par,
                                                   RatioBuilder::ThetaProducts, pol));
    }
    CHECK(worst < 1e-10);
    CHECK(control > 1e-3);  // R is not omega1-periodic
}

TEST_CASE("multiple integrals reduce to the single ones at N = 1") {
    PrecisionPolicy tight = pol;
    tight.quad_rel_tol = 1e-10;
    const EllipticBetaParams eb = spec_eb_params();
    MultiEllipticParams me;
    me.N = 1;
    me.t = 0.5;
    me.tn = eb.t;
    me.q = eb.q;
    me.p = eb.p;
    const Sides s1 = elliptic_beta_sides(eb, tight);
    const Sides sm = multiple_elliptic_sides(me, tight);
    CHECK(rel(s1.lhs, sm.lhs) < 1e-10);
    CHECK(rel(s1.rhs, sm.rhs) < 1e-10);

    UnitCircleBetaParams ub;
    ub.omegas = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    ub.g = {cplx{0.3, 0.0}, cplx{0.25, 0.05}, cplx{0.3, -0.04}, cplx{0.28, 0.0}, cplx{0.33, 0.0}};
    MultiModifiedParams mm;
    mm.N = 1;
    mm.g = cplx{0.1, -0.02};
    mm.gn = ub.g;
    mm.omegas = ub.omegas;
    PrecisionPolicy t9 = pol;
    t9.quad_rel_tol = 1e-9;
    const Sides u1 = unit_circle_beta_sides(ub, t9);
    const Sides um = multiple_modified_sides(mm, t9);
    CHECK(rel(u1.lhs, um.lhs) < 1e-10);
    CHECK(rel(u1.rhs, um.rhs) < 1e-10);
}

TEST_CASE("modified multiple product side: g -> 0 consistency") {
    Rng rng(55);
    MultiModifiedParams par = sample_multiple_modified(rng, 2, Regime::UnitCircle);
    par.g = cplx{1.0, -1.0} * (1e-3 / std::sqrt(2.0));
    const cplx rhs2 = multiple_modified_rhs(par, pol);
    MultiModifiedParams par1 = par;
    par1.N = 1;
    const cplx rhs1 = multiple_modified_rhs(par1, pol);
    CHECK(std::abs(rhs2 / (rhs1 * rhs1) - 1.0) < 5e-2);
}

TEST_CASE("integrand weights are even under z -> 1/z resp. u -> -u") {
    Rng rng(77);
    double worst = 0.0;
    auto bump = [&](Flagged a, Flagged b) {
        worst = std::max(worst, std::abs(a.value - b.value) /
                                    std::max(std::abs(a.value), std::abs(b.value)));
    };
    for (int i = 0; i < 5; ++i) {
        const EllipticBetaParams eb = sample_elliptic_beta(rng);
        const cplx z = std::polar(1.0, rng.uniform(0.1, 6.0));
        bump(elliptic_beta_weight(eb, z, pol), elliptic_beta_weight(eb, 1.0 / z, pol));

        const UnitCircleBetaParams ub = sample_unit_circle_beta(rng, Regime::UnitCircle);
        const cplx u = rng.uniform(-0.45, 0.45) * ub.omegas.omega3;
        bump(unit_circle_beta_weight(ub, u, pol), unit_circle_beta_weight(ub, -u, pol));

        const MultiEllipticParams me = sample_multiple_elliptic(rng, 2);
        const cplx zs[2] = {std::polar(1.0, rng.uniform(0.1, 6.0)),
                            std::polar(1.0, rng.uniform(0.1, 6.0))};
        const cplx zf[2] = {zs[0], 1.0 / zs[1]};
        bump(multiple_elliptic_weight(me, zs, pol), multiple_elliptic_weight(me, zf, pol));

        const MultiModifiedParams mm = sample_multiple_modified(rng, 2, Regime::StrictlyElliptic);
        const cplx us[2] = {rng.uniform(-0.4, 0.4) * mm.omegas.omega3,
                            rng.uniform(-0.4, 0.4) * mm.omegas.omega3};
        const cplx uf[2] = {-us[0], us[1]};
        bump(multiple_modified_weight(mm, us, pol), multiple_modified_weight(mm, uf, pol));

        const HyperbolicParams hy = sample_hyperbolic(rng, HypKind::NassrallahRahman, 2);
        const cplx hs[2] = {cplx{0.0, rng.uniform(-0.8, 0.8)} * hy.pair.omega2,
                            cplx{0.0, rng.uniform(-0.8, 0.8)} * hy.pair.omega2};
        const cplx hf[2] = {hs[0], -hs[1]};
        bump(hyperbolic_weight(hy, hs, pol), hyperbolic_weight(hy, hf, pol));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("hyperbolic weight vanishes at the origin") {
    Rng rng(78);
    const HyperbolicParams par = sample_hyperbolic(rng, HypKind::NassrallahRahman, 1);
    const cplx zero[1] = {cplx{}};
    const Flagged delta0 = hyperbolic_weight(par, zero, pol);
    CHECK(std::abs(delta0.value) < 1e-8);
    CHECK(delta0.at_zero);
}

TEST_CASE("policy invariants are enforced") {
    PrecisionPolicy bad;
    bad.product_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = PrecisionPolicy{};
    bad.max_terms = 0;
    CHECK_THROWS_AS(qpochhammer(0.5, Base(0.5), bad), DomainError);
}

TEST_CASE("spec's N = 2 elliptic sample violates |pq| < |B|") {
    // with t = 0.5 and the five t_n below, |B| ~ 0.0532 < |pq| = 0.06
    MultiEllipticParams par;
    par.N = 2;
    par.t = 0.5;
    par.tn = {cplx{0.8, 0.0}, cplx{0.75, 0.0}, cplx{0.7, 0.0}, cplx{0.65, 0.0}, cplx{0.78, 0.0}};
    par.q = 0.3;
    par.p = 0.2;
    CHECK_THROWS_AS(par.validate(), DomainError);
    par.q = 0.2;
    par.p = 0.15;
    CHECK_NOTHROW(par.validate());
}
