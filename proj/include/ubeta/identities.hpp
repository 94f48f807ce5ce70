#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ubeta/gammas.hpp"
#include "ubeta/quadrature.hpp"

namespace ubeta {

/// Thrown when an exponential decay estimate comes out non-positive, so a
/// truncated-line integral cannot be trusted to converge.
struct TruncationError : DomainError {
    using DomainError::DomainError;
};

/// Five parameters t_n of the elliptic beta integral: |t_n| < 1, |pq| < |A|
/// with A = prod t_n.
struct EllipticBetaParams {
    std::array<cplx, 5> t{};
    cplx q{}, p{};
    cplx A() const;
    void validate() const;
};

/// Five parameters g_n of the unit-circle beta integral:
/// Im(g_n/w3) < 0 and Im((A - w1 - w2)/w3) > 0 with A = sum g_n.
struct UnitCircleBetaParams {
    std::array<cplx, 5> g{};
    QuasiPeriods omegas;
    cplx A() const;
    void validate() const;
};

/// Coupling t plus five t_n of the multiple elliptic beta integral;
/// B = t^{2N-2} prod t_n, constraints |t|, |t_n| < 1 and |pq| < |B|.
struct MultiEllipticParams {
    cplx t{};
    std::array<cplx, 5> tn{};
    cplx q{}, p{};
    int N = 1;
    cplx B() const;
    void validate() const;
};

/// Coupling g plus five g_n of the modified multiple integral;
/// B = (2N-2) g + sum g_n.
struct MultiModifiedParams {
    cplx g{};
    std::array<cplx, 5> gn{};
    QuasiPeriods omegas;
    int N = 1;
    cplx B() const;
    void validate() const;
};

enum class HypKind { NassrallahRahman, AskeyWilson };

/// Parameters of the hyperbolic (double-sine level) integrals: five g_n for
/// the Nassrallah-Rahman form, four for the Askey-Wilson form.
struct HyperbolicParams {
    HypKind kind = HypKind::NassrallahRahman;
    cplx g{};  // unused at N = 1
    std::vector<cplx> gn;
    SinePair pair{};
    int N = 1;
    cplx B() const;
    void validate() const;
    /// Binding per-axis decay exponent of the integrand along i w2 R.
    double decay_rate() const;
};

struct Sides {
    cplx lhs{}, rhs{};
    long evaluations = 0;
    int panels = 0;
};

Sides elliptic_beta_sides(const EllipticBetaParams& par, const PrecisionPolicy& policy);
Sides unit_circle_beta_sides(const UnitCircleBetaParams& par, const PrecisionPolicy& policy);
Sides multiple_elliptic_sides(const MultiEllipticParams& par, const PrecisionPolicy& policy);
Sides multiple_modified_sides(const MultiModifiedParams& par, const PrecisionPolicy& policy);
Sides hyperbolic_nr_sides(const HyperbolicParams& par, const PrecisionPolicy& policy);
Sides hyperbolic_aw_sides(const HyperbolicParams& par, const PrecisionPolicy& policy);

/// The bare integrand weights (no contour measure), even under z -> 1/z
/// resp. u_j -> -u_j by the +- pairings.
Flagged elliptic_beta_weight(const EllipticBetaParams& par, cplx z, const PrecisionPolicy& policy);
Flagged unit_circle_beta_weight(const UnitCircleBetaParams& par, cplx u,
                                const PrecisionPolicy& policy);
Flagged multiple_elliptic_weight(const MultiEllipticParams& par, std::span<const cplx> z,
                                 const PrecisionPolicy& policy);
Flagged multiple_modified_weight(const MultiModifiedParams& par, std::span<const cplx> u,
                                 const PrecisionPolicy& policy);
Flagged hyperbolic_weight(const HyperbolicParams& par, std::span<const cplx> u,
                          const PrecisionPolicy& policy);

/// Closed-form product side of the modified multiple integral alone (used by
/// the g -> 0 consistency probe, which needs no quadrature).
cplx multiple_modified_rhs(const MultiModifiedParams& par, const PrecisionPolicy& policy);

/// kappa = -2 (q~;q~)_inf / [(q;q)_inf (p;p)_inf (r;r)_inf]; on |q| = 1 the
/// equivalent pre-modular form with (r~;r~)_inf (p~;p~)_inf is used.
cplx kappa_constant(const QuasiPeriods& w, const PrecisionPolicy& policy);
cplx kappa_direct(const QuasiPeriods& w, const PrecisionPolicy& policy);
cplx kappa_modular(const QuasiPeriods& w, const PrecisionPolicy& policy);
cplx kappa_half_modular(const QuasiPeriods& w, const PrecisionPolicy& policy);

/// Additive form of the elliptic beta integrand (for the ellipticity check of
/// the shift ratio Delta(u + w1)/Delta(u)).
struct AdditiveBetaParams {
    std::array<cplx, 5> g{};
    QuasiPeriods omegas;
    cplx A() const;
};

enum class RatioBuilder { ThetaProducts, GDifference };

/// Delta(u + w1)/Delta(u) built either from the displayed theta-function
/// product or from the w1 difference equation of the modified gamma function.
cplx delta_shift_ratio(cplx u, const AdditiveBetaParams& par, RatioBuilder builder,
                       const PrecisionPolicy& policy);
/// |R(u + shift) - R(u)| / |R(u)|
double shift_residual(cplx u, cplx shift, const AdditiveBetaParams& par, RatioBuilder builder,
                      const PrecisionPolicy& policy);
/// max of the w2- and w3-shift residuals (both should vanish: R is elliptic).
double ellipticity_residual(cplx u, const AdditiveBetaParams& par, RatioBuilder builder,
                            const PrecisionPolicy& policy);

/// 2^N-term sign-flip sum rho and its closed-form product evaluation.
cplx rho_brute(std::span<const cplx> z, cplx t, const std::array<cplx, 3>& t3, int N);
cplx rho_closed(cplx t, const std::array<cplx, 3>& t3, int N);
/// The shifted-parameter companion sum; B should equal t^{2N-2} prod t_n.
cplx rho_tilde_brute(std::span<const cplx> z, cplx t, const std::array<cplx, 5>& tn, cplx B,
                     cplx q, int N);
cplx rho_tilde_closed(cplx t, const std::array<cplx, 5>& tn, cplx B, cplx q, int N);
/// The Laurent factor whose product with rho is antisymmetric under
/// permutations and inversions of the z_j.
cplx rho_antisym_factor(std::span<const cplx> z, int N);

enum class IdentityId {
    EllipticBeta,
    UnitCircleBeta,
    MultipleElliptic,
    MultipleModified,
    HyperbolicNR,
    HyperbolicAW,
};

const char* identity_name(IdentityId id);

struct VerificationReport {
    std::string identity;
    cplx lhs{}, rhs{};
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    long evaluations = 0;
    double wall_time_ms = 0.0;
    std::string error;         // nonempty when the run aborted
    bool invalid_input = false;  // true when the abort was a domain/validation failure
};

VerificationReport verify(const EllipticBetaParams& par, const PrecisionPolicy& policy);
VerificationReport verify(const UnitCircleBetaParams& par, const PrecisionPolicy& policy);
VerificationReport verify(const MultiEllipticParams& par, const PrecisionPolicy& policy);
VerificationReport verify(const MultiModifiedParams& par, const PrecisionPolicy& policy);
VerificationReport verify(const HyperbolicParams& par, const PrecisionPolicy& policy);

/// Per-identity pass thresholds: 1e-8 for 1-D strict-regime identities, 1e-6
/// on the unit circle and at the hyperbolic level, 1e-4 / 1e-3 for the N = 2
/// elliptic / modified+hyperbolic integrals.
double tolerance_for(IdentityId id, int N, bool strict_regime);

}  // namespace ubeta
