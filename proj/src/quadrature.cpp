#include "ubeta/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ubeta {

namespace {

// Gauss-Kronrod (7,15) on [-1,1]; the 7-point Gauss rule sits on the
// odd-indexed Kronrod abscissae.
constexpr int kNk = 15;
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void kronrod_nodes(double lo, double hi, double* t) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int j = 0; j < 7; ++j) {
        t[j] = mid - half * kXgk[j];
        t[14 - j] = mid + half * kXgk[j];
    }
    t[7] = mid;
}

// Kronrod/Gauss weights per node index 0..14.
double wk_of(int j) { return kWgk[j < 8 ? j : 14 - j]; }
double wg_of(int j) {
    if (j % 2 == 0) return 0.0;
    const int i = j < 8 ? j : 14 - j;  // odd i in {1,3,5,7}
    return kWg[(i - 1) / 2];
}

struct Panel {
    double lo, hi;
    cplx value;
    double err;
    long id;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.id > b.id;  // deterministic tie-break
    }
};

struct Evaluator {
    const Integrand& f;
    const Contour& c;
    long evals = 0;

    cplx weighted(double t) {
        cplx z, dz;
        c.map(t, z, dz);
        const Flagged v = f(z);
        ++evals;
        if (!v.finite_ok())
            throw PoleOnContour("pole-flagged integrand value on the contour at t = " +
                                std::to_string(t));
        return v.value * dz;
    }

    Panel eval(double lo, double hi, long id) {
        double t[kNk];
        kronrod_nodes(lo, hi, t);
        cplx resk{}, resg{};
        for (int j = 0; j < kNk; ++j) {
            const cplx v = weighted(t[j]);
            resk += wk_of(j) * v;
            resg += wg_of(j) * v;
        }
        const double half = 0.5 * (hi - lo);
        resk *= half;
        resg *= half;
        return {lo, hi, resk, std::abs(resk - resg), id};
    }
};

struct Panel2 {
    double xlo, xhi, ylo, yhi;
    cplx value;
    double err;
    long id;
};

struct Panel2Worse {
    bool operator()(const Panel2& a, const Panel2& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.id > b.id;
    }
};

struct Evaluator2 {
    const Integrand2& f;
    const Contour& c;
    long evals = 0;

    Panel2 eval(double xlo, double xhi, double ylo, double yhi, long id) {
        double tx[kNk], ty[kNk];
        kronrod_nodes(xlo, xhi, tx);
        kronrod_nodes(ylo, yhi, ty);
        cplx zx[kNk], dzx[kNk], zy[kNk], dzy[kNk];
        for (int j = 0; j < kNk; ++j) {
            c.map(tx[j], zx[j], dzx[j]);
            c.map(ty[j], zy[j], dzy[j]);
        }
        cplx resk{}, resg{};
        for (int jy = 0; jy < kNk; ++jy) {
            cplx rowk{}, rowg{};
            for (int jx = 0; jx < kNk; ++jx) {
                const Flagged v = f(zx[jx], zy[jy]);
                ++evals;
                if (!v.finite_ok())
                    throw PoleOnContour("pole-flagged integrand value on the product contour");
                const cplx w = v.value * dzx[jx];
                rowk += wk_of(jx) * w;
                rowg += wg_of(jx) * w;
            }
            resk += wk_of(jy) * rowk * dzy[jy];
            resg += wg_of(jy) * rowg * dzy[jy];
        }
        const double hx = 0.5 * (xhi - xlo), hy = 0.5 * (yhi - ylo);
        resk *= hx * hy;
        resg *= hx * hy;
        return {xlo, xhi, ylo, yhi, resk, std::abs(resk - resg), id};
    }
};

void prescan(const Integrand& f, const Contour& c, int n) {
    const double t0 = c.t0(), t1 = c.t1();
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * (i + 0.5) / n;
        cplx z, dz;
        c.map(t, z, dz);
        const Flagged v = f(z);
        if (!v.finite_ok())
            throw PoleOnContour("pre-scan: pole within resolution of the contour at t = " +
                                std::to_string(t));
    }
}

void prescan2(const Integrand2& f, const Contour& c, int n) {
    const double t0 = c.t0(), t1 = c.t1();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx z1, z2, dz;
            c.map(t0 + (t1 - t0) * (i + 0.5) / n, z1, dz);
            c.map(t0 + (t1 - t0) * (j + 0.5) / n, z2, dz);
            if (!f(z1, z2).finite_ok())
                throw PoleOnContour("pre-scan: pole within resolution of the product contour");
        }
    }
}

}  // namespace

Contour Contour::segment(cplx a, cplx b) {
    if (a == b) throw DomainError("Contour::segment: endpoints coincide");
    Contour c;
    c.kind = Kind::Segment;
    c.a = a;
    c.b = b;
    return c;
}

Contour Contour::unit_circle() {
    Contour c;
    c.kind = Kind::UnitCircle;
    return c;
}

Contour Contour::line(cplx direction, double halfwidth) {
    if (direction == cplx{} || !(halfwidth > 0.0))
        throw DomainError("Contour::line: need a direction and halfwidth > 0");
    Contour c;
    c.kind = Kind::Line;
    c.direction = direction;
    c.halfwidth = halfwidth;
    return c;
}

double Contour::t0() const {
    switch (kind) {
        case Kind::Segment: return 0.0;
        case Kind::UnitCircle: return 0.0;
        default: return -halfwidth;
    }
}

double Contour::t1() const {
    switch (kind) {
        case Kind::Segment: return 1.0;
        case Kind::UnitCircle: return kTwoPi;
        default: return halfwidth;
    }
}

void Contour::map(double t, cplx& z, cplx& dz) const {
    switch (kind) {
        case Kind::Segment:
            z = a + (b - a) * t;
            dz = b - a;
            return;
        case Kind::UnitCircle:
            z = cplx{std::cos(t), std::sin(t)};
            dz = cplx{0.0, 1.0} * z;
            return;
        default:
            z = direction * t;
            dz = direction;
            return;
    }
}

QuadResult integrate(const Integrand& f, const Contour& contour, const PrecisionPolicy& policy) {
    policy.validate();
    Evaluator ev{f, contour};
    prescan(f, contour, 512);

    constexpr int kInit = 8;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    long next_id = 0;
    const double t0 = contour.t0(), t1 = contour.t1();
    cplx total{};
    double toterr = 0.0;
    for (int i = 0; i < kInit; ++i) {
        Panel pan = ev.eval(t0 + (t1 - t0) * i / kInit, t0 + (t1 - t0) * (i + 1) / kInit, next_id++);
        total += pan.value;
        toterr += pan.err;
        heap.push(pan);
    }

    int panels = kInit;
    auto done = [&] {
        return toterr <= std::max(policy.quad_abs_tol, policy.quad_rel_tol * std::abs(total));
    };
    while (!done() && panels + 1 <= policy.quad_max_panels) {
        const Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        toterr -= worst.err;
        const double mid = 0.5 * (worst.lo + worst.hi);
        for (const Panel& half : {ev.eval(worst.lo, mid, next_id++), ev.eval(mid, worst.hi, next_id++)}) {
            total += half.value;
            toterr += half.err;
            heap.push(half);
        }
        ++panels;
    }
    QuadResult res{total, toterr, panels, ev.evals};
    if (!done()) throw ToleranceNotMet(res);
    return res;
}

QuadResult integrate2(const Integrand2& f, const Contour& contour, const PrecisionPolicy& policy) {
    policy.validate();
    Evaluator2 ev{f, contour};
    prescan2(f, contour, 32);

    constexpr int kInit = 4;  // 4 x 4 starting grid
    std::priority_queue<Panel2, std::vector<Panel2>, Panel2Worse> heap;
    long next_id = 0;
    const double t0 = contour.t0(), t1 = contour.t1();
    auto edge = [&](int i) { return t0 + (t1 - t0) * i / kInit; };
    cplx total{};
    double toterr = 0.0;
    for (int i = 0; i < kInit; ++i) {
        for (int j = 0; j < kInit; ++j) {
            Panel2 pan = ev.eval(edge(i), edge(i + 1), edge(j), edge(j + 1), next_id++);
            total += pan.value;
            toterr += pan.err;
            heap.push(pan);
        }
    }

    int panels = kInit * kInit;
    auto done = [&] {
        return toterr <= std::max(policy.quad_abs_tol, policy.quad_rel_tol * std::abs(total));
    };
    while (!done() && panels + 1 <= policy.quad_max_panels) {
        const Panel2 worst = heap.top();
        heap.pop();
        total -= worst.value;
        toterr -= worst.err;
        std::vector<Panel2> halves;
        if (worst.xhi - worst.xlo >= worst.yhi - worst.ylo) {
            const double mid = 0.5 * (worst.xlo + worst.xhi);
            halves.push_back(ev.eval(worst.xlo, mid, worst.ylo, worst.yhi, next_id++));
            halves.push_back(ev.eval(mid, worst.xhi, worst.ylo, worst.yhi, next_id++));
        } else {
            const double mid = 0.5 * (worst.ylo + worst.yhi);
            halves.push_back(ev.eval(worst.xlo, worst.xhi, worst.ylo, mid, next_id++));
            halves.push_back(ev.eval(worst.xlo, worst.xhi, mid, worst.yhi, next_id++));
        }
        for (const Panel2& half : halves) {
            total += half.value;
            toterr += half.err;
            heap.push(half);
        }
        ++panels;
    }
    QuadResult res{total, toterr, panels, ev.evals};
    if (!done()) throw ToleranceNotMet(res);
    return res;
}

double line_truncation(double decay_rate, const PrecisionPolicy& policy) {
    if (!(decay_rate > 0.0))
        throw DomainError("line_truncation: decay rate <= 0, the integral may not converge");
    return (std::log(1.0 / policy.quad_rel_tol) + std::log(10.0)) / decay_rate;
}

}  // namespace ubeta
