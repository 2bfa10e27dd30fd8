// Jacobi elliptic functions sn, cn, dn, the Legendre integrals F, E, Pi and
// their complete values, the u-representation Z(u;k) = E(sn(u;k);k), and the
// closed differentiation rules of the whole family in all arguments.
//
// Everything is complex binary64 with principal square roots.  Z is computed
// as the line integral of dn^2 along the straight path from 0 to u, which is
// the analytic continuation of E(sn(u;k);k) across quarter periods.
#ifndef THETABAND_ELLIPTIC_HPP
#define THETABAND_ELLIPTIC_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "thetaband/errors.hpp"
#include "thetaband/quadrature.hpp"

namespace thetaband {

// Elliptic modulus k.  The closed differentiation rules exclude k in
// {-1, 0, 1}; evaluation routines accept any k away from +-1.
struct Modulus {
    cplx k;
};

struct JacobiSCD {
    cplx sn, cn, dn;
};

// F, E, Pi_alpha evaluated at a common (x; k, alpha).
struct LegendreTriple {
    cplx F, E, Pi;
};

namespace detail {

inline bool near(cplx a, cplx b, double tol = 1e-14) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

} // namespace detail

// sn, cn, dn by descending Landen transformation down to the trigonometric
// base case (DLMF 22.7.1-22.7.4 run in reverse).  Throws PoleError when a
// recovery denominator underflows, i.e. u is at/near a pole of the functions.
inline JacobiSCD jacobi_scd(cplx u, Modulus mod) {
    const cplx k = mod.k;
    if (detail::near(k * k, 1.0)) {
        // k = +-1 degeneration: sn = tanh, cn = dn = sech
        const cplx c = std::cosh(u);
        if (std::abs(c) < 1e-150)
            throw PoleError("jacobi_scd: pole of sech at k = 1");
        return {std::tanh(u), 1.0 / c, 1.0 / c};
    }

    std::vector<cplx> landen;
    cplx kc = k;
    cplx uc = u;
    for (int it = 0; std::abs(kc) > 1e-15; ++it) {
        if (it >= 64)
            throw NonConvergent("jacobi_scd: Landen sequence stalled");
        const cplx kp = std::sqrt(1.0 - kc * kc);
        const cplx k1 = (1.0 - kp) / (1.0 + kp);
        landen.push_back(k1);
        uc /= 1.0 + k1;
        kc = k1;
    }

    cplx s = std::sin(uc), c = std::cos(uc), d = 1.0;
    for (auto it = landen.rbegin(); it != landen.rend(); ++it) {
        const cplx k1 = *it;
        const cplx s2 = s * s;
        const cplx denom = 1.0 + k1 * s2;
        if (std::abs(denom) < 1e-12 * (1.0 + std::abs(k1 * s2)))
            throw PoleError("jacobi_scd: pole encountered in Landen recovery");
        const cplx sn = (1.0 + k1) * s / denom;
        const cplx cn = c * d / denom;
        const cplx dn = (1.0 - k1 * s2) / denom;
        s = sn; c = cn; d = dn;
    }
    if (!std::isfinite(std::abs(s)) || !std::isfinite(std::abs(c)) ||
        !std::isfinite(std::abs(d)))
        throw PoleError("jacobi_scd: non-finite result (pole)");
    return {s, c, d};
}

// Arithmetic-geometric mean with the standard right-choice of square root
// branch, valid for complex arguments off the negative real ray.
inline cplx agm(cplx a, cplx b) {
    for (int it = 0; it < 64; ++it) {
        if (std::abs(a - b) <= 4e-16 * std::abs(a))
            return 0.5 * (a + b);
        const cplx an = 0.5 * (a + b);
        cplx bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn))
            bn = -bn;
        a = an;
        b = bn;
    }
    return 0.5 * (a + b);
}

// Complete integral K(k) = pi / (2 agm(1, k')).
inline cplx complete_K(Modulus mod) {
    const cplx k = mod.k;
    if (detail::near(k * k, 1.0))
        throw SingularParameter("complete_K diverges at k = +-1");
    return pi / (2.0 * agm(1.0, std::sqrt(1.0 - k * k)));
}

// Complete integral E(k) from the AGM scale: E = K (1 - sum 2^{n-1} c_n^2).
inline cplx complete_E(Modulus mod) {
    const cplx k = mod.k;
    if (detail::near(k * k, 1.0))
        return 1.0;   // E(+-1) = 1 (the K-side is the divergent one)
    cplx a = 1.0, b = std::sqrt(1.0 - k * k), c = k;
    cplx csum = 0.5 * c * c;
    double p = 1.0;
    for (int it = 0; it < 64 && std::abs(c) > 1e-18; ++it) {
        const cplx an = 0.5 * (a + b);
        cplx bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn))
            bn = -bn;
        c = c * c / (4.0 * an);   // = (a-b)/2 without the cancellation
        a = an;
        b = bn;
        csum += p * c * c;
        p *= 2.0;
    }
    const cplx K = pi / (2.0 * a);
    return K * (1.0 - csum);
}

namespace detail {

// Distance from point p to the segment [0, x].
inline double dist_to_segment(cplx p, cplx x) {
    const double L2 = std::norm(x);
    if (L2 == 0.0)
        return std::abs(p);
    double t = (p.real() * x.real() + p.imag() * x.imag()) / L2;
    t = std::min(1.0, std::max(0.0, t));
    return std::abs(p - t * x);
}

inline void check_branch_points(cplx x, cplx k, cplx alpha, double path_tol) {
    const cplx pts2[2] = {cplx(1.0), cplx(-1.0)};
    for (cplx p : pts2)
        if (dist_to_segment(p, x) < path_tol)
            throw BranchPointOnPath("legendre_integrals: +-1 on path");
    if (std::abs(k) > 1e-14) {
        const cplx bk = 1.0 / k;
        if (dist_to_segment(bk, x) < path_tol || dist_to_segment(-bk, x) < path_tol)
            throw BranchPointOnPath("legendre_integrals: +-1/k on path");
    }
    if (std::abs(alpha) > 1e-14) {
        const cplx ba = 1.0 / std::sqrt(alpha);
        if (dist_to_segment(ba, x) < path_tol || dist_to_segment(-ba, x) < path_tol)
            throw BranchPointOnPath("legendre_integrals: +-1/sqrt(alpha) on path");
    }
}

} // namespace detail

// Incomplete Legendre integrals along the straight segment from 0 to x.
// x = 1 switches F and E to the complete AGM values and Pi to quadrature in
// the amplitude variable (regular at the endpoint).  The caller must keep the
// branch points +-1, +-1/k and the poles +-1/sqrt(alpha) off the open path.
inline LegendreTriple legendre_integrals(cplx x, Modulus mod, cplx alpha,
                                         double tol = 1e-12) {
    const cplx k = mod.k;
    LegendreTriple out;

    if (detail::near(x, 1.0)) {
        out.F = complete_K(mod);
        out.E = complete_E(mod);
        // third kind: s = sin(theta) removes the endpoint singularity
        out.Pi = integrate_segment(
            [&](cplx th) {
                const cplx s = std::sin(th);
                return 1.0 / ((1.0 - alpha * s * s) *
                              std::sqrt(1.0 - k * k * s * s));
            },
            0.0, pi / 2.0, tol);
        return out;
    }

    detail::check_branch_points(x, k, alpha, 1e-10);

    auto w = [&](cplx s) { return std::sqrt((1.0 - s * s) * (1.0 - k * k * s * s)); };
    out.F = integrate_segment([&](cplx s) { return 1.0 / w(s); }, 0.0, x, tol);
    out.E = integrate_segment([&](cplx s) { return (1.0 - k * k * s * s) / w(s); },
                              0.0, x, tol);
    out.Pi = integrate_segment(
        [&](cplx s) { return 1.0 / ((1.0 - alpha * s * s) * w(s)); }, 0.0, x, tol);
    return out;
}

// Z(u;k) = E(sn(u;k);k) continued analytically along the path from 0 to u,
// computed as the integral of dn^2 over that path (dZ/du = dn^2).
inline cplx jacobi_Z(cplx u, Modulus mod, double tol = 1e-12) {
    if (u == cplx(0.0))
        return 0.0;
    jacobi_scd(u, mod);   // endpoint pole check
    try {
        return integrate_segment(
            [&](cplx v) {
                const cplx dn = jacobi_scd(v, mod).dn;
                return dn * dn;
            },
            0.0, u, tol);
    } catch (const NonConvergent&) {
        throw PoleError("jacobi_Z: pole of sn on the integration path");
    }
}

// ---------------------------------------------------------------------------
// Closed differentiation rules.  y := sqrt((1-x^2)(1-k^2 x^2)) (principal).
// Each rule checks only its own excluded parameter set; degenerate limits
// with a finite value are evaluated explicitly.
// ---------------------------------------------------------------------------

namespace detail {

inline cplx legendre_y(cplx x, cplx k) {
    const cplx y2 = (1.0 - x * x) * (1.0 - k * k * x * x);
    if (std::abs(y2) < 1e-28)
        throw BranchError("legendre partials: y^2 = (1-x^2)(1-k^2x^2) vanishes");
    return std::sqrt(y2);
}

} // namespace detail

inline cplx legendre_dF_dx(cplx x, Modulus mod) {
    return 1.0 / detail::legendre_y(x, mod.k);
}

inline cplx legendre_dE_dx(cplx x, Modulus mod) {
    const cplx k = mod.k;
    return (1.0 - k * k * x * x) / detail::legendre_y(x, k);
}

inline cplx legendre_dPi_dx(cplx x, Modulus mod, cplx alpha) {
    const cplx k = mod.k;
    const cplx pole = 1.0 - alpha * x * x;
    if (std::abs(pole) < 1e-14)
        throw BranchError("dPi/dx: evaluation point at the pole 1 - alpha x^2 = 0");
    return 1.0 / (pole * detail::legendre_y(x, k));
}

inline cplx legendre_dF_dk(cplx x, Modulus mod, cplx F, cplx E) {
    const cplx k = mod.k;
    if (std::abs(k) < 1e-14)
        return 0.0;   // removable: F - E = O(k^2)
    if (detail::near(k * k, 1.0))
        throw SingularParameter("dF/dk: k = +-1 excluded");
    const cplx y = detail::legendre_y(x, k);
    return -F / k - E / (k * (k * k - 1.0)) +
           k / (k * k - 1.0) * x * y / (1.0 - k * k * x * x);
}

inline cplx legendre_dE_dk(cplx x, Modulus mod, cplx F, cplx E) {
    const cplx k = mod.k;
    (void)x;
    if (std::abs(k) < 1e-14)
        return 0.0;
    return (E - F) / k;
}

inline cplx legendre_dPi_dk(cplx x, Modulus mod, cplx alpha, cplx E, cplx Pi) {
    const cplx k = mod.k;
    if (detail::near(k * k, 1.0))
        throw SingularParameter("dPi/dk: k = +-1 excluded");
    if (detail::near(alpha, k * k))
        throw SingularParameter("dPi/dk: alpha = k^2 excluded");
    const cplx y = detail::legendre_y(x, k);
    return -k / ((k * k - alpha) * (k * k - 1.0)) *
           (E + (k * k - 1.0) * Pi - k * k * x * y / (1.0 - k * k * x * x));
}

inline cplx legendre_dPi_dalpha(cplx x, Modulus mod, cplx alpha, cplx F, cplx E,
                                cplx Pi) {
    const cplx k = mod.k;
    if (std::abs(alpha) < 1e-14) {
        // Pi_0 = F; the limit is int s^2/w ds = (F - E)/k^2.
        if (std::abs(k) < 1e-14)
            return 0.5 * (std::asin(x) - x * std::sqrt(1.0 - x * x));
        return (F - E) / (k * k);
    }
    if (detail::near(alpha, 1.0))
        throw SingularParameter("dPi/dalpha: alpha = 1 excluded");
    if (detail::near(alpha, k * k))
        throw SingularParameter("dPi/dalpha: alpha = k^2 excluded");
    const cplx y = detail::legendre_y(x, k);
    return 1.0 / (2.0 * alpha * (alpha - 1.0) * (k * k - alpha)) *
           ((k * k - alpha) * F + alpha * E - (k * k - alpha * alpha) * Pi -
            alpha * alpha * x * y / (1.0 - alpha * x * x));
}

// All seven partials of (F, E, Pi) at a common point, never by numerical
// differentiation.  Requires the full excluded set empty: k not in {0,+-1},
// alpha not in {0, 1, k^2}; use the individual rules above for the
// degenerate combinations that stay finite.
struct LegendrePartials {
    cplx dF_dx, dF_dk;
    cplx dE_dx, dE_dk;
    cplx dPi_dx, dPi_dk, dPi_dalpha;
};

inline LegendrePartials legendre_partials(cplx x, Modulus mod, cplx alpha,
                                          double tol = 1e-12) {
    const cplx k = mod.k;
    if (std::abs(k) < 1e-14 || detail::near(k * k, 1.0))
        throw SingularParameter("legendre_partials: k in {0, +-1} excluded");
    if (std::abs(alpha) < 1e-14 || detail::near(alpha, 1.0) ||
        detail::near(alpha, k * k))
        throw SingularParameter("legendre_partials: alpha in {0, 1, k^2} excluded");
    const LegendreTriple v = legendre_integrals(x, mod, alpha, tol);
    LegendrePartials p;
    p.dF_dx = legendre_dF_dx(x, mod);
    p.dF_dk = legendre_dF_dk(x, mod, v.F, v.E);
    p.dE_dx = legendre_dE_dx(x, mod);
    p.dE_dk = legendre_dE_dk(x, mod, v.F, v.E);
    p.dPi_dx = legendre_dPi_dx(x, mod, alpha);
    p.dPi_dk = legendre_dPi_dk(x, mod, alpha, v.E, v.Pi);
    p.dPi_dalpha = legendre_dPi_dalpha(x, mod, alpha, v.F, v.E, v.Pi);
    return p;
}

// Partials of Z(u;k):
//   dZ/du = 1 - k^2 sn^2,
//   dZ/dk = k/(k^2-1) (Z cn^2 - (k^2-1) u sn^2 - sn cn dn).
struct ZetaPartials {
    cplx dZ_du, dZ_dk;
};

inline ZetaPartials zeta_partials(cplx u, Modulus mod, double tol = 1e-12) {
    const cplx k = mod.k;
    if (detail::near(k * k, 1.0))
        throw SingularParameter("zeta_partials: k = +-1 excluded");
    const JacobiSCD f = jacobi_scd(u, mod);
    const cplx Z = jacobi_Z(u, mod, tol);
    ZetaPartials zp;
    zp.dZ_du = 1.0 - k * k * f.sn * f.sn;
    zp.dZ_dk = k / (k * k - 1.0) *
               (Z * f.cn * f.cn - (k * k - 1.0) * u * f.sn * f.sn -
                f.sn * f.cn * f.dn);
    return zp;
}

} // namespace thetaband

#endif
