#include <doctest.h>

#include "ubeta/gammas.hpp"
#include "ubeta/qseries.hpp"
#include "ubeta/sampling.hpp"

using namespace ubeta;

namespace {

const PrecisionPolicy pol;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("derive_bases") {
    const QuasiPeriods uc = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    CHECK(uc.regime == Regime::UnitCircle);
    CHECK(std::abs(uc.r_tilde - std::exp(-kTwoPi)) < 1e-15);
    CHECK(std::abs(std::abs(uc.q) - 1.0) < 1e-15);
    CHECK(!uc.commensurate);

    const QuasiPeriods se = QuasiPeriods::derive(cplx{1.0, 0.3}, 1.0, cplx{0.0, 2.0});
    CHECK(se.regime == Regime::StrictlyElliptic);
    CHECK(std::abs(std::abs(se.q) - std::exp(-0.6 * kPi)) < 1e-15);

    const QuasiPeriods deg = QuasiPeriods::derive(1.0, 1.0, cplx{0.0, 1.0});
    CHECK(deg.commensurate);  // ratio 1 is formally allowed, flagged only

    CHECK_THROWS_AS(QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, -1.0}), DomainError);
    CHECK_THROWS_AS(QuasiPeriods::derive(cplx{1.0, -0.2}, 1.0, cplx{0.0, 1.0}), DomainError);
}

TEST_CASE("elliptic gamma at p = 0 and frozen value") {
    const cplx v = elliptic_gamma(0.5, Base(0.4), Base(0.0), pol).value;
    CHECK(rel(v, 1.0 / qpochhammer(0.5, Base(0.4), pol).value) < 1e-14);
    CHECK(std::abs(v - 2.8680350492695974131) < 1e-12);
    const cplx w = elliptic_gamma(cplx{0.3, 0.2}, Base(0.35), Base(0.25), pol).value;
    CHECK(std::abs(w - cplx{0.84561278550868463502, 0.90130886082325841774}) < 1e-12);
    CHECK_THROWS_AS(elliptic_gamma(cplx{}, Base(0.3), Base(0.2), pol), DomainError);
}

TEST_CASE("elliptic gamma difference equations and reflection") {
    const cplx z{0.3, 0.2};
    const Base q(0.35), p(0.25);
    const cplx g0 = elliptic_gamma(z, q, p, pol).value;
    CHECK(rel(elliptic_gamma(q.value * z, q, p, pol).value,
              theta(z, p, pol).value * g0) < 1e-11);
    CHECK(rel(elliptic_gamma(p.value * z, q, p, pol).value,
              theta(z, q, pol).value * g0) < 1e-11);
    // symmetry in the two bases
    CHECK(rel(g0, elliptic_gamma(z, Base(0.25), Base(0.35), pol).value) < 1e-12);

    const cplx z2 = 0.6 * cis2pi(cplx{0.7 / kTwoPi, 0.0});
    const Base q2(0.3), p2(0.2);
    const cplx refl = elliptic_gamma(z2, q2, p2, pol).value *
                      elliptic_gamma(1.0 / z2, q2, p2, pol).value *
                      theta(z2, p2, pol).value * theta(1.0 / z2, q2, pol).value;
    CHECK(std::abs(refl - 1.0) < 1e-11);
}

TEST_CASE("elliptic gamma pole flag") {
    const Flagged at_pole = elliptic_gamma(1.0, Base(0.3), Base(0.2), pol);
    CHECK(at_pole.at_pole);
    const Flagged near_pole = elliptic_gamma(cplx{1.0, 1e-16}, Base(0.3), Base(0.2), pol);
    CHECK(near_pole.at_pole);
}

TEST_CASE("b22 values") {
    CHECK(std::abs(b22(1.0, 1.0, 1.0) - (-1.0 / 6.0)) < 1e-15);
    CHECK(std::abs(b22(0.0, 1.0, 2.0) - 11.0 / 12.0) < 1e-15);
    const cplx u{0.4, 0.1};
    const cplx w1 = 1.0, w2 = std::sqrt(2.0);
    // independent evaluation, expanded over a common denominator
    const cplx direct =
        (6.0 * u * u - 6.0 * u * (w1 + w2) + w1 * w1 + w2 * w2 + 3.0 * w1 * w2) / (6.0 * w1 * w2);
    CHECK(std::abs(b22(u, w1, w2) - direct) < 1e-15);
    CHECK(std::abs(b22(u, w1, w2) - cplx{0.2767766952966368811, -0.11414213562373095049}) < 1e-14);
}

TEST_CASE("p_cubic values and the omega3 shift") {
    const QuasiPeriods w = QuasiPeriods::derive(1.0, 2.0, cplx{0.0, 3.0});
    const cplx half = 0.5 * (w.omega1 + w.omega2 + w.omega3);
    CHECK(std::abs(p_cubic(half, w)) < 1e-15);
    CHECK(std::abs(p_cubic(0.0, w) - cplx{-0.45833333333333333333, -0.29166666666666666667}) <
          1e-14);
    // e^{-pi i (P(u+w3) - P(u))} = e^{-pi i B22(u)}
    Rng rng(3);
    const QuasiPeriods ws = QuasiPeriods::derive(cplx{1.0, 0.3}, 1.0, cplx{0.1, 1.8});
    for (int i = 0; i < 10; ++i) {
        const cplx u = rng.cbox(-0.5, 0.5, -0.5, 0.5);
        const cplx lhs = cispi(-(p_cubic(u + ws.omega3, ws) - p_cubic(u, ws)));
        CHECK(rel(lhs, cispi(-b22(u, ws))) < 1e-12);
    }
}

TEST_CASE("modified gamma: half-sum normalization in both regimes") {
    const QuasiPeriods se = QuasiPeriods::derive(cplx{1.0, 0.3}, 1.0, cplx{0.0, 2.0});
    const cplx half_se = 0.5 * (se.omega1 + se.omega2 + se.omega3);
    CHECK(std::abs(modified_gamma_product(half_se, se, pol).value - 1.0) < 1e-12);
    CHECK(std::abs(modified_gamma(half_se, se, pol).value - 1.0) < 1e-12);

    const QuasiPeriods uc = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    const cplx half_uc = 0.5 * (uc.omega1 + uc.omega2 + uc.omega3);
    CHECK(std::abs(modified_gamma(half_uc, uc, pol).value - 1.0) < 1e-12);
    CHECK_THROWS_AS(modified_gamma_product(half_uc, uc, pol), DomainError);

    const cplx frozen = modified_gamma(cplx{0.4, 0.1}, uc, pol).value;
    CHECK(std::abs(frozen - cplx{0.83024247229078549341, 0.28655698139807533657}) < 1e-12);
}

TEST_CASE("modified gamma difference equations") {
    const QuasiPeriods se = QuasiPeriods::derive(cplx{1.0, 0.4}, 1.0, cplx{0.0, 2.0});
    const cplx u{0.2, 0.1};
    const cplx g0 = modified_gamma_product(u, se, pol).value;
    CHECK(rel(modified_gamma_product(u + se.omega1, se, pol).value,
              theta(cis2pi(u / se.omega2), Base(se.p), pol).value * g0) < 1e-11);
    CHECK(rel(modified_gamma_product(u + se.omega2, se, pol).value,
              theta(cis2pi(u / se.omega1), Base(se.r), pol).value * g0) < 1e-11);
    CHECK(rel(modified_gamma_product(u + se.omega3, se, pol).value, cispi(-b22(u, se)) * g0) <
          1e-11);
    // strict-regime agreement of the two representations
    CHECK(rel(modified_gamma(cplx{0.3, 0.05}, se, pol).value,
              modified_gamma_product(cplx{0.3, 0.05}, se, pol).value) < 1e-9);
    // reflection
    const cplx refl = g0 * modified_gamma_product(-u, se, pol).value *
                      theta(cis2pi(-u / se.omega1), Base(se.r), pol).value *
                      theta(cis2pi(-u / se.omega2), Base(se.p), pol).value * cispi(-b22(u, se));
    CHECK(std::abs(refl - 1.0) < 1e-10);

    // unit-circle regime: omega3 shift law through the continuation
    const QuasiPeriods uc = QuasiPeriods::derive(1.0, std::sqrt(2.0), cplx{0.0, 1.0});
    const cplx u2{0.2, -0.3};
    CHECK(rel(modified_gamma(u2 + uc.omega3, uc, pol).value,
              cispi(-b22(u2, uc)) * modified_gamma(u2, uc, pol).value) < 1e-10);
    CHECK(rel(modified_gamma(u2 + uc.omega1, uc, pol).value,
              theta(cis2pi(u2 / uc.omega2), Base(uc.p), pol).value *
                  modified_gamma(u2, uc, pol).value) < 1e-10);
}

TEST_CASE("double sine: functional equations and representation switch") {
    const SinePair pair = SinePair::make(cplx{1.0, 0.5}, 1.0);
    const cplx u{0.3, 0.2};
    const cplx s0 = double_sine(u, pair, pol).value;
    CHECK(rel(double_sine(u + pair.omega1, pair, pol).value,
              s0 / (1.0 - cis2pi(u / pair.omega2))) < 1e-11);
    CHECK(rel(double_sine(u + pair.omega2, pair, pol).value,
              s0 / (1.0 - cis2pi(u / pair.omega1))) < 1e-11);

    // direct product form vs the modular-inverse form, assembled by hand
    const cplx u3{0.4, 0.3};
    const cplx w1{1.0, 0.5}, w2{1.0, 0.0};
    const cplx q = cis2pi(w1 / w2), qt = cis2pi(-w2 / w1);
    const cplx direct = qpochhammer(cis2pi(u3 / w2), Base(q), pol).value /
                        qpochhammer(cis2pi(u3 / w1) * qt, Base(qt), pol).value;
    const cplx inverse = cispi(-b22(u3, w1, w2)) *
                         qpochhammer(cis2pi(-u3 / w1), Base(qt), pol).value /
                         qpochhammer(cis2pi(-u3 / w2) * q, Base(q), pol).value;
    CHECK(rel(direct, inverse) < 1e-10);
    CHECK(rel(double_sine(u3, pair, pol).value, direct) < 1e-12);
    CHECK(std::abs(double_sine(u3, pair, pol).value -
                   cplx{1.0919365220691529861, -0.13518287907145202018}) < 1e-12);

    // zero lattice
    CHECK(double_sine(cplx{}, pair, pol).at_zero);
    CHECK(std::abs(double_sine(cplx{}, pair, pol).value) < 1e-12);
}

TEST_CASE("double sine asymptotics deep in the cones") {
    const cplx w1{1.0, 0.5}, w2{1.0, 0.0};
    const SinePair pair = SinePair::make(w1, w2);
    const cplx up = cplx{0.0, 10.0} * (w1 + w2);
    CHECK(std::abs(double_sine(up, pair, pol).value - 1.0) < 1e-8);
    const cplx dn = -up;
    CHECK(std::abs(cispi(b22(dn, w1, w2)) * double_sine(dn, pair, pol).value - 1.0) < 1e-8);
}

TEST_CASE("double sine on the real-ratio boundary") {
    const cplx w1{1.41421356237309515, 0.0}, w2{1.0, 0.0};
    const SinePair pair = SinePair::make(w1, w2);
    CHECK(pair.regime == SineRegime::RealRatio);
    const cplx u{0.45, 0.2};
    const cplx s0 = double_sine(u, pair, pol).value;
    CHECK(rel(double_sine(u + w1, pair, pol).value, s0 / (1.0 - cis2pi(u / w2))) < 1e-10);
    CHECK(rel(double_sine(u + w2, pair, pol).value, s0 / (1.0 - cis2pi(u / w1))) < 1e-10);
    // omega swap: same value through a genuinely different regulator route
    CHECK(rel(s0, double_sine(u, SinePair::make(w2, w1), pol).value) < 1e-10);
    CHECK(rel(s0, double_sine_continued(u, w1, w2, 9.25, pol).value) < 1e-10);
    // continuity against the product form as Im(w1/w2) comes down to zero
    for (double eps : {1e-3, 1e-4}) {
        const cplx near = double_sine(u, SinePair::make(cplx{w1.real(), eps}, w2), pol).value;
        CHECK(rel(near, s0) < 40.0 * eps);
    }
}

TEST_CASE("pair order canonicalization") {
    const SinePair swapped = SinePair::make(1.0, cplx{1.0, 0.5});
    CHECK(swapped.omega1 == cplx{1.0, 0.5});
    CHECK(swapped.regime == SineRegime::Product);
    CHECK_THROWS_AS(SinePair::make(-1.0, 1.0), DomainError);
}

TEST_CASE("double-sine limit of the modified gamma function") {
    const cplx w1{1.0, 0.4}, w2{1.0, 0.0};
    const cplx u{0.3, 0.1};
    const double r40 = double_sine_limit_check(u, w1, w2, 40.0, pol);
    CHECK(r40 < 1e-6);
    const double r80 = double_sine_limit_check(u, w1, w2, 80.0, pol);
    CHECK(r80 < std::max(r40, 1e-9));  // converged to the noise floor by t = 40
    // visible monotone range
    const double r3 = double_sine_limit_check(u, w1, w2, 3.0, pol);
    const double r6 = double_sine_limit_check(u, w1, w2, 6.0, pol);
    CHECK(r3 > r6);
    CHECK(r6 < 1e-10);
    // half-sum of the pair: both sides reduce to the same constant
    const cplx half = 0.5 * (w1 + w2);
    CHECK(double_sine_limit_check(half, w1, w2, 12.0, pol) < 1e-9);
    CHECK(double_sine_limit_check(half, w1, w2, 40.0, pol) < 1e-9);
    CHECK_THROWS_AS(double_sine_limit_check(u, w1, w2, 0.2, pol), DomainError);
}
