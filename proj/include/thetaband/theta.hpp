// Jacobi theta-functions theta_1..theta_4(t|tau) by Fourier series, their
// t-derivatives, and the theta-constants (v2, v3, v4, eta).
//
// Conventions (argument t, e.g. theta_3(t|tau) = sum_k e^{k^2 pi i tau}
// e^{2 k pi i t}): the nome is q = e^{pi i tau}, the classical z-variable is
// z = pi t, so d/dt = pi d/dz against DLMF 20.2.
#ifndef THETABAND_THETA_HPP
#define THETABAND_THETA_HPP

#include <cmath>
#include <complex>

#include "thetaband/errors.hpp"
#include "thetaband/types.hpp"

namespace thetaband {

// Modular parameter tau; the series converge only for Im tau > 0.
struct LatticeParam {
    cplx tau;
};

// Coefficients (theta-constants) of the theta vector field.  Classically
// v_j = theta_j(0|tau); eta has no elementary closed form and is pinned
// through the ODE itself (see eta_from_ode).
struct ThetaConstants {
    cplx v2, v3, v4;
    cplx eta;
};

namespace detail {

inline const cplx imag_unit{0.0, 1.0};

// Summand of theta_j for index k, differentiated `order` times in t.
inline cplx theta_term(int j, int k, cplx z, cplx tau, int order) {
    const cplx ipi = imag_unit * pi;
    cplx term;
    switch (j) {
    case 1:
    case 2: {
        const double kk = static_cast<double>(k);
        term = std::exp((kk * kk + kk) * ipi * tau + (2.0 * kk + 1.0) * ipi * z);
        if (j == 1) {
            term *= -imag_unit;
            if (k & 1) term = -term;
        }
        term *= std::exp(0.25 * ipi * tau);
        for (int d = 0; d < order; ++d)
            term *= (2.0 * kk + 1.0) * ipi;
        return term;
    }
    case 3:
    case 4: {
        const double kk = static_cast<double>(k);
        term = std::exp(kk * kk * ipi * tau + 2.0 * kk * ipi * z);
        if (j == 4 && (k & 1)) term = -term;
        for (int d = 0; d < order; ++d)
            term *= 2.0 * kk * ipi;
        return term;
    }
    default:
        throw Error("theta index must be 1..4");
    }
}

} // namespace detail

// Partial sum of the theta_j series (t-derivative of the given order),
// truncated once two consecutive symmetric blocks fall below
// tol * |running sum|.  Throws NonConvergent for Im tau <= 0.
inline cplx theta_series_deriv(int j, cplx z, LatticeParam lat, int order,
                               double tol = 1e-12) {
    if (!(lat.tau.imag() > 0.0))
        throw NonConvergent("theta series requires Im tau > 0");
    if (!(tol > 0.0))
        throw Error("theta series tolerance must be positive");

    // Symmetric summation: blocks pair k = m with k = -m-1 (theta_1/2,
    // exponent k^2+k symmetric) or k = -m (theta_3/4).
    cplx sum = 0.0;
    int quiet = 0;
    for (int m = 0; m < 4000; ++m) {
        cplx block;
        if (j <= 2) {
            block = detail::theta_term(j, m, z, lat.tau, order) +
                    detail::theta_term(j, -m - 1, z, lat.tau, order);
        } else {
            block = detail::theta_term(j, m, z, lat.tau, order);
            if (m > 0)
                block += detail::theta_term(j, -m, z, lat.tau, order);
        }
        sum += block;
        if (std::abs(block) <= tol * std::abs(sum) + 1e-300) {
            if (++quiet >= 2)
                return sum;
        } else {
            quiet = 0;
        }
    }
    throw NonConvergent("theta series did not converge");
}

inline cplx theta_series(int j, cplx z, LatticeParam lat, double tol = 1e-12) {
    return theta_series_deriv(j, z, lat, 0, tol);
}

// eta pinned through the theta_1'' row of the theta vector field, evaluated
// with series data at one generic time and solved as a linear equation:
//   theta_1'' = theta_1'^2/theta_1 - pi^2 v3^2 v4^2 theta_2^2/theta_1
//               - {4 eta + (pi^2/3)(v3^4 + v4^4)} theta_1.
inline cplx eta_from_ode(LatticeParam lat, double tol = 1e-12) {
    double t0 = 0.3;                       // generic: away from zeros of theta_1
    cplx th1 = theta_series(1, t0, lat, tol);
    if (std::abs(th1) < 1e-8) {
        t0 = 0.37;
        th1 = theta_series(1, t0, lat, tol);
    }
    const cplx th2 = theta_series(2, t0, lat, tol);
    const cplx d1 = theta_series_deriv(1, t0, lat, 1, tol);
    const cplx dd1 = theta_series_deriv(1, t0, lat, 2, tol);
    const cplx v3 = theta_series(3, 0.0, lat, tol);
    const cplx v4 = theta_series(4, 0.0, lat, tol);
    const cplx lambda =
        (d1 * d1 / th1 - pi * pi * v3 * v3 * v4 * v4 * th2 * th2 / th1 - dd1) / th1;
    return 0.25 * (lambda - pi * pi / 3.0 * (v3 * v3 * v3 * v3 + v4 * v4 * v4 * v4));
}

// Theta-constants of a modular parameter: v_j = theta_j(0|tau), eta from the
// ODE oracle.  The Jacobi relation v3^4 = v2^4 + v4^4 holds within the
// evaluation tolerance and is exercised by the tests.
inline ThetaConstants theta_constants(LatticeParam lat, double tol = 1e-12) {
    ThetaConstants c;
    c.v2 = theta_series(2, 0.0, lat, tol);
    c.v3 = theta_series(3, 0.0, lat, tol);
    c.v4 = theta_series(4, 0.0, lat, tol);
    c.eta = eta_from_ode(lat, tol);
    return c;
}

} // namespace thetaband

#endif
