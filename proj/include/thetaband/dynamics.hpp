// The three vector fields of the theta dynamics (the full five-component
// theta system, its polynomial form, and the 4D subsystem), the coordinate
// change between them, the linear embedding onto the Euler rigid-body
// variables, and the sn/cn/dn closed-form solution of the 4D subsystem.
#ifndef THETABAND_DYNAMICS_HPP
#define THETABAND_DYNAMICS_HPP

#include <array>
#include <cmath>

#include "thetaband/elliptic.hpp"
#include "thetaband/errors.hpp"
#include "thetaband/ode.hpp"
#include "thetaband/theta.hpp"

namespace thetaband {

// (theta_1..theta_4, theta_1') at time t.  The field divides by theta_1
// everywhere, so theta_1 = 0 is a pole of the dynamics.
struct ThetaState {
    cplx th1, th2, th3, th4, dth1;
    double t = 0.0;
};

// Polynomial coordinates (x, y, z, xi, u).  The 4D subsystem ignores u.
struct PolyState {
    cplx x, y, z, xi;
    cplx u = 1.0;
};

// Principal moments of inertia of a full asymmetric top.
struct InertiaParams {
    double A, B, C;
};

// Free constants (k, alpha, K0; eps) of the closed-form solution.
struct SolutionParams {
    Modulus k;
    cplx alpha;
    cplx K0;
    cplx eps;
};

// Lambda(v, eta) = 4 eta + (pi^2/3)(v3^4 + v4^4): the exponent coefficient
// that makes the transformed system polynomial.
inline cplx lambda_of(const ThetaConstants& c) {
    return 4.0 * c.eta +
           pi * pi / 3.0 * (c.v3 * c.v3 * c.v3 * c.v3 + c.v4 * c.v4 * c.v4 * c.v4);
}

namespace detail {

inline void require_th1(const ThetaState& s) {
    const double scale =
        1.0 + std::abs(s.th2) + std::abs(s.th3) + std::abs(s.th4);
    if (std::abs(s.th1) < 1e-12 * scale)
        throw PoleState("theta field: theta_1 = 0 is a pole of the dynamics");
}

} // namespace detail

// Time derivative of the five theta components.  Returns the tangent in the
// same layout (the .t member of the result is meaningless).
inline ThetaState rhs_theta(const ThetaState& s, const ThetaConstants& c) {
    detail::require_th1(s);
    const cplx r = s.dth1 / s.th1;
    ThetaState d;
    d.th1 = s.dth1;
    d.th2 = r * s.th2 - pi * c.v2 * c.v2 * s.th3 * s.th4 / s.th1;
    d.th3 = r * s.th3 - pi * c.v3 * c.v3 * s.th2 * s.th4 / s.th1;
    d.th4 = r * s.th4 - pi * c.v4 * c.v4 * s.th2 * s.th3 / s.th1;
    d.dth1 = s.dth1 * s.dth1 / s.th1 -
             pi * pi * c.v3 * c.v3 * c.v4 * c.v4 * s.th2 * s.th2 / s.th1 -
             lambda_of(c) * s.th1;
    return d;
}

// Tangent of the polynomial system: (yz, xz, xy, -x^2, xi u); dim = 4 drops
// the u row (derivative zero).
inline PolyState rhs_poly(const PolyState& s, int dim) {
    PolyState d;
    d.x = s.y * s.z;
    d.y = s.x * s.z;
    d.z = s.x * s.y;
    d.xi = -s.x * s.x;
    d.u = (dim == 5) ? s.xi * s.u : cplx(0.0);
    return d;
}

// Forward coordinate change theta -> polynomial at time t.
inline PolyState theta_to_poly(const ThetaState& s, const ThetaConstants& c,
                               double t) {
    detail::require_th1(s);
    const cplx lam = lambda_of(c);
    PolyState p;
    p.x = -pi * c.v3 * c.v4 * s.th2 / s.th1;
    p.y = -pi * c.v2 * c.v4 * s.th3 / s.th1;
    p.z = -pi * c.v2 * c.v3 * s.th4 / s.th1;
    p.u = std::exp(0.5 * lam * t * t) * s.th1;
    p.xi = s.dth1 / s.th1 + lam * t;
    return p;
}

// Inverse coordinate change polynomial -> theta at time t.
inline ThetaState poly_to_theta(const PolyState& p, const ThetaConstants& c,
                                double t) {
    if (std::abs(p.u) < 1e-300)
        throw DegenerateState("inverse map needs u != 0");
    if (std::abs(p.x) + std::abs(p.y) + std::abs(p.z) == 0.0)
        throw DegenerateState("inverse map needs (x, y, z) != 0");
    const cplx lam = lambda_of(c);
    ThetaState s;
    s.t = t;
    s.th1 = std::exp(-0.5 * lam * t * t) * p.u;
    s.th2 = -p.x * s.th1 / (pi * c.v3 * c.v4);
    s.th3 = -p.y * s.th1 / (pi * c.v2 * c.v4);
    s.th4 = -p.z * s.th1 / (pi * c.v2 * c.v3);
    s.dth1 = (p.xi - lam * t) * s.th1;
    return s;
}

// Sample the five theta components (and theta_1') from the Fourier series.
inline ThetaState theta_state_from_series(double t, LatticeParam lat,
                                          double tol = 1e-12) {
    ThetaState s;
    s.t = t;
    s.th1 = theta_series(1, t, lat, tol);
    s.th2 = theta_series(2, t, lat, tol);
    s.th3 = theta_series(3, t, lat, tol);
    s.th4 = theta_series(4, t, lat, tol);
    s.dth1 = theta_series_deriv(1, t, lat, 1, tol);
    return s;
}

namespace detail {

struct EulerCoeffs {
    cplx cx, cy, cz;
};

inline EulerCoeffs euler_coeffs(const InertiaParams& I) {
    const double A = I.A, B = I.B, C = I.C;
    const double scale = std::abs(A) + std::abs(B) + std::abs(C);
    if (std::abs(A - B) < 1e-12 * scale || std::abs(B - C) < 1e-12 * scale ||
        std::abs(A - C) < 1e-12 * scale)
        throw DegenerateInertia("euler embedding needs pairwise distinct A, B, C");
    const cplx den = std::sqrt(cplx((C - B) * (A - C) * (B - A)));
    EulerCoeffs e;
    e.cx = -A * std::sqrt(cplx(B * C * (C - B))) / den;
    e.cy = -B * std::sqrt(cplx(C * A * (A - C))) / den;
    e.cz = -C * std::sqrt(cplx(A * B * (B - A))) / den;
    return e;
}

} // namespace detail

// Linear embedding (x, y, z) -> (X, Y, Z) taking the parameter-free cubic
// system onto the Euler equations for inertia (A, B, C); principal branches
// of the square-root coefficients.
inline std::array<cplx, 3> euler_embedding(const std::array<cplx, 3>& p,
                                           const InertiaParams& I) {
    const auto e = detail::euler_coeffs(I);
    return {e.cx * p[0], e.cy * p[1], e.cz * p[2]};
}

inline std::array<cplx, 3> euler_embedding_inverse(const std::array<cplx, 3>& P,
                                                   const InertiaParams& I) {
    const auto e = detail::euler_coeffs(I);
    return {P[0] / e.cx, P[1] / e.cy, P[2] / e.cz};
}

// Closed-form solution of the 4D subsystem:
//   x = -k a sn(a t + eps; k),  y = i a dn(.),  z = i k a cn(.),
//   xi = K0 + a Z(a t + eps; k) - a^2 t.
// The u component is not part of the 4D solution and is returned as 1.
inline PolyState closed_solution(const SolutionParams& p, double t,
                                 double tol = 1e-12) {
    const cplx arg = p.alpha * t + p.eps;
    const JacobiSCD f = jacobi_scd(arg, p.k);
    PolyState s;
    s.x = -p.k.k * p.alpha * f.sn;
    s.y = cplx(0.0, 1.0) * p.alpha * f.dn;
    s.z = cplx(0.0, 1.0) * p.k.k * p.alpha * f.cn;
    s.xi = p.K0 + p.alpha * jacobi_Z(arg, p.k, tol) - p.alpha * p.alpha * t;
    s.u = 1.0;
    return s;
}

// --- adapters between the structured states and the flat integrator form ---

inline State<5> to_flat(const ThetaState& s) {
    return {s.th1, s.th2, s.th3, s.th4, s.dth1};
}
inline ThetaState theta_from_flat(const State<5>& a, double t) {
    return {a[0], a[1], a[2], a[3], a[4], t};
}
inline State<5> to_flat(const PolyState& s) {
    return {s.x, s.y, s.z, s.xi, s.u};
}
inline PolyState poly_from_flat(const State<5>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
}

// Integrate the theta field from a given state over [t0, t1].
inline Trajectory<5> integrate_theta(const ThetaState& s0,
                                     const ThetaConstants& c, double t0,
                                     double t1, double tol = 1e-10) {
    auto field = [&c](const State<5>& y) {
        const ThetaState d = rhs_theta(theta_from_flat(y, 0.0), c);
        return to_flat(d);
    };
    return integrate<5>(field, to_flat(s0), t0, t1, tol);
}

// Integrate the polynomial field (dim = 4 or 5) over [t0, t1].
inline Trajectory<5> integrate_poly(const PolyState& s0, int dim, double t0,
                                    double t1, double tol = 1e-10) {
    auto field = [dim](const State<5>& y) {
        return to_flat(rhs_poly(poly_from_flat(y), dim));
    };
    return integrate<5>(field, to_flat(s0), t0, t1, tol);
}

} // namespace thetaband

#endif
