// Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)) for
// fixed-size complex state vectors over a real time interval.
#ifndef THETABAND_ODE_HPP
#define THETABAND_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "thetaband/errors.hpp"
#include "thetaband/types.hpp"

namespace thetaband {

template <std::size_t N>
using State = std::array<cplx, N>;

// Dense record of one adaptive integration: every accepted step plus the
// controller's bookkeeping.  Times are strictly increasing (or strictly
// decreasing for t1 < t0) and the trailing sample lands exactly on t1.
template <std::size_t N>
struct Trajectory {
    std::vector<double> times;
    std::vector<State<N>> states;
    std::vector<double> step_errors;   // scaled error estimate per accepted step
    int accepted = 0;
    int rejected = 0;

    const State<N>& back() const { return states.back(); }
};

namespace detail {

// Dormand-Prince coefficients (Hairer-Norsett-Wanner DOPRI5).
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_b5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0.0};
// b5 - b4: error estimator weights
inline constexpr double dp_e[7] = {71.0 / 57600,       0.0,         -71.0 / 16695,
                                   71.0 / 1920,        -17253.0 / 339200,
                                   22.0 / 525,         -1.0 / 40};

} // namespace detail

// Integrate dy/dt = f(y) from t0 to t1 with mixed absolute/relative error
// control at `tol` per step.  f may throw (field poles propagate).  Throws
// StepUnderflow when the controller collapses the step, e.g. on approach to
// a pole of the field.
template <std::size_t N, typename Field>
Trajectory<N> integrate(Field&& f, const State<N>& y0, double t0, double t1,
                        double tol = 1e-10, int max_steps = 2000000) {
    if (!(tol > 0.0))
        throw Error("integrate: tol must be positive");
    Trajectory<N> traj;
    traj.times.push_back(t0);
    traj.states.push_back(y0);
    traj.step_errors.push_back(0.0);
    if (t1 == t0)
        return traj;

    const double span = t1 - t0;
    const double dir = (span > 0.0) ? 1.0 : -1.0;
    double h = 0.01 * span;
    double t = t0;
    State<N> y = y0;

    for (int step = 0; step < max_steps; ++step) {
        if (dir * (t1 - t) <= 0.0)
            return traj;
        if (std::abs(h) > std::abs(t1 - t))
            h = t1 - t;
        if (std::abs(h) < 1e-14 * std::abs(span))
            throw StepUnderflow("integrate: step size collapsed");

        std::array<State<N>, 7> k;
        k[0] = f(y);
        for (int s = 1; s < 7; ++s) {
            State<N> ys = y;
            for (int j = 0; j < s; ++j) {
                if (detail::dp_a[s][j] == 0.0)
                    continue;
                for (std::size_t i = 0; i < N; ++i)
                    ys[i] += h * detail::dp_a[s][j] * k[j][i];
            }
            k[s] = f(ys);
        }

        State<N> ynew = y;
        for (int s = 0; s < 7; ++s) {
            if (detail::dp_b5[s] == 0.0)
                continue;
            for (std::size_t i = 0; i < N; ++i)
                ynew[i] += h * detail::dp_b5[s] * k[s][i];
        }

        double errnorm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            cplx e = 0.0;
            for (int s = 0; s < 7; ++s)
                e += detail::dp_e[s] * k[s][i];
            e *= h;
            const double scale =
                tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            errnorm = std::max(errnorm, std::abs(e) / scale);
        }

        if (errnorm <= 1.0) {
            t += h;
            y = ynew;
            traj.times.push_back(t);
            traj.states.push_back(y);
            traj.step_errors.push_back(errnorm * tol);
            ++traj.accepted;
        } else {
            ++traj.rejected;
        }
        const double factor =
            (errnorm == 0.0)
                ? 5.0
                : std::clamp(0.9 * std::pow(errnorm, -0.2), 0.2, 5.0);
        h *= factor;
    }
    throw NonConvergent("integrate: step budget exhausted");
}

} // namespace thetaband

#endif
