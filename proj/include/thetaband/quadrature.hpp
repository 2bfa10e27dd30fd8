// Adaptive Gauss-Kronrod quadrature along straight segments in the complex
// plane, plus a fixed composite rule whose evaluation points advance
// monotonically along the path (for integrands that carry continuation state).
#ifndef THETABAND_QUADRATURE_HPP
#define THETABAND_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <utility>

#include "thetaband/errors.hpp"
#include "thetaband/types.hpp"

namespace thetaband {

namespace detail {

// 15-point Kronrod nodes on [-1,1] (positive half; QUADPACK dqk15) and the
// embedded 7-point Gauss weights.
inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// One G7/K15 panel over the parameter interval [t0,t1] of the segment
// z(t) = a + t*(b-a).  Returns the Kronrod estimate and |K15-G7|.
template <typename F>
std::pair<cplx, double> gk15_panel(F&& f, cplx a, cplx b, double t0, double t1) {
    const cplx dir = b - a;
    const double mid = 0.5 * (t0 + t1);
    const double hw = 0.5 * (t1 - t0);
    cplx kres = 0.0, gres = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double xi = kronrod_x[i];
        cplx fsum;
        if (i == 7) {
            fsum = f(a + dir * mid);
        } else {
            fsum = f(a + dir * (mid - hw * xi)) + f(a + dir * (mid + hw * xi));
        }
        kres += kronrod_w[i] * fsum;
        if (i % 2 == 1)
            gres += gauss_w[i / 2] * fsum;   // odd Kronrod nodes are the G7 set
    }
    kres *= hw * dir;
    gres *= hw * dir;
    return {kres, std::abs(kres - gres)};
}

template <typename F>
cplx gk_adaptive(F&& f, cplx a, cplx b, double t0, double t1, double budget,
                 int depth) {
    auto [val, err] = gk15_panel(f, a, b, t0, t1);
    if (err <= budget || err <= 1e-17 * std::abs(val))
        return val;
    if (depth <= 0)
        throw NonConvergent("adaptive quadrature: refinement limit reached");
    const double tm = 0.5 * (t0 + t1);
    return gk_adaptive(f, a, b, t0, tm, 0.5 * budget, depth - 1) +
           gk_adaptive(f, a, b, tm, t1, 0.5 * budget, depth - 1);
}

} // namespace detail

// Integral of f along the straight segment from a to b.  tol is a relative
// tolerance against the magnitude of the first whole-segment estimate.
template <typename F>
cplx integrate_segment(F&& f, cplx a, cplx b, double tol = 1e-12,
                       int max_depth = 48) {
    if (a == b)
        return 0.0;
    auto [coarse, err0] = detail::gk15_panel(f, a, b, 0.0, 1.0);
    const double scale = std::max(std::abs(coarse), 1e-30);
    const double budget = tol * scale;
    if (err0 <= budget)
        return coarse;
    return detail::gk_adaptive(f, a, b, 0.0, 1.0, budget, max_depth);
}

// Fixed composite K15 rule with nodes visited in increasing path order, so
// the integrand may carry state (root continuation) from node to node.
// No adaptivity: panel count is the accuracy control.
template <typename F>
cplx integrate_segment_ordered(F&& f, cplx a, cplx b, int panels = 24) {
    const cplx dir = b - a;
    if (dir == cplx(0.0))
        return 0.0;
    cplx total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double t0 = static_cast<double>(p) / panels;
        const double t1 = static_cast<double>(p + 1) / panels;
        const double mid = 0.5 * (t0 + t1), hw = 0.5 * (t1 - t0);
        // ascending order of the 15 Kronrod abscissae
        double ts[15];
        for (int i = 0; i < 7; ++i)
            ts[i] = mid - hw * detail::kronrod_x[i];
        ts[7] = mid;
        for (int i = 0; i < 7; ++i)
            ts[14 - i] = mid + hw * detail::kronrod_x[i];
        cplx acc = 0.0;
        for (int i = 0; i < 15; ++i) {
            const int k = (i <= 7) ? (7 - i) : (i - 7);
            acc += detail::kronrod_w[k] * f(a + dir * ts[i]);
        }
        total += acc * hw * dir;
    }
    return total;
}

} // namespace thetaband

#endif
