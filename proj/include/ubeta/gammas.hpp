#pragma once

#include "ubeta/types.hpp"

namespace ubeta {

enum class Regime { StrictlyElliptic, UnitCircle };

/// The quasiperiod triple (omega1, omega2, omega3) with the six derived bases
///   q  = e^{2 pi i w1/w2}   p  = e^{2 pi i w3/w2}   r  = e^{2 pi i w3/w1}
///   q~ = e^{-2 pi i w2/w1}  p~ = e^{-2 pi i w2/w3}  r~ = e^{-2 pi i w1/w3}
/// Valid input requires Im(w3/w1) > 0, Im(w3/w2) > 0 and Im(w1/w2) >= 0; the
/// boundary Im(w1/w2) = 0 (with w1/w2 > 0) is the unit-circle regime |q| = 1.
struct QuasiPeriods {
    cplx omega1, omega2, omega3;
    cplx q, p, r, q_tilde, p_tilde, r_tilde;
    Regime regime = Regime::StrictlyElliptic;
    bool commensurate = false;  ///< w1/w2 indistinguishable from a small rational (warning only)

    cplx tau() const { return omega3 / omega2; }
    static QuasiPeriods derive(cplx w1, cplx w2, cplx w3);
};

/// Elliptic gamma function Gamma(z; q, p) via its double product,
/// prod_{j,k>=0} (1 - q^{j+1} p^{k+1}/z) / (1 - z q^j p^k), evaluated as a
/// batch of q-base partial products, one per p-power level.
Flagged elliptic_gamma(cplx z, Base q, Base p, const PrecisionPolicy& policy);

/// B_{2,2}(u; w) = u^2/(w1 w2) - u/w1 - u/w2 + w1/(6 w2) + w2/(6 w1) + 1/2
cplx b22(cplx u, cplx w1, cplx w2);
cplx b22(cplx u, const QuasiPeriods& w);

/// Third-degree polynomial P(u) of the analytic-continuation representation:
/// (u - s/2)(u^2 - u s + w1 w2 w3 s'/2) / (3 w1 w2 w3), s = sum w_n, s' = sum 1/w_n.
cplx p_cubic(cplx u, const QuasiPeriods& w);

/// Modified elliptic gamma function G(u; w) as the product of two elliptic
/// gamma functions; converges only in the strictly elliptic regime.
Flagged modified_gamma_product(cplx u, const QuasiPeriods& w, const PrecisionPolicy& policy);

/// G(u; w) = e^{-pi i P(u)} Gamma(e^{-2 pi i u/w3}; r~, p~): single code path
/// valid in both regimes, including |q| = 1.
Flagged modified_gamma(cplx u, const QuasiPeriods& w, const PrecisionPolicy& policy);

enum class SineRegime { Product, RealRatio };

/// Quasiperiod pair for the double sine. S is symmetric in (w1, w2), so the
/// pair is stored with Im(w1/w2) >= 0; a pair given in the opposite order is
/// swapped on construction.
struct SinePair {
    cplx omega1, omega2;
    SineRegime regime = SineRegime::Product;
    static SinePair make(cplx w1, cplx w2);
};

/// Double sine S(u; w1, w2). In the product regime this is
/// (e^{2 pi i u/w2}; q)_inf / (e^{2 pi i u/w1} q~; q~)_inf, switching to the
/// modular-inverse product when that keeps argument magnitudes small. On the
/// boundary w1/w2 > 0 it continues through the |q|=1 representation of G.
Flagged double_sine(cplx u, const SinePair& pair, const PrecisionPolicy& policy);

/// The continuation route with an explicit regulator scale (exposed so tests
/// can compare two independent regulator choices).
Flagged double_sine_continued(cplx u, cplx w1, cplx w2, double t_scale,
                              const PrecisionPolicy& policy);

/// Relative residual |G(u; w1, w2, i t w2) S(u; w1, w2) - 1| of the double-sine
/// degeneration of G; decays exponentially in t_scale.
double double_sine_limit_check(cplx u, cplx w1, cplx w2, double t_scale,
                               const PrecisionPolicy& policy);

}  // namespace ubeta
