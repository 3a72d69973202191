#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace horoxt {

namespace qk15 {
// Gauss-Kronrod 7-15 pair on [-1,1] (QUADPACK dqk15 constants).  Kronrod nodes; the
// embedded 7-point Gauss rule sits at the odd-index abscissae.
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
}

template <class F>
double gauss_kronrod_15(F&& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = qk15::wgk[7] * fc;
    double gauss = qk15::wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * qk15::xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += qk15::wgk[i] * fsum;
        if (i % 2 == 1) gauss += qk15::wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    err = std::fabs(kron - gauss);
    return kron;
}

namespace detail {
template <class F>
double integrate_rec(F&& f, double a, double b, double tol, int depth) {
    double err = 0.0;
    const double val = gauss_kronrod_15(f, a, b, err);
    if (err <= tol || depth <= 0) {
        if (depth <= 0 && err > 64.0 * tol)
            throw std::runtime_error("integrate: refinement limit reached");
        return val;
    }
    const double m = 0.5 * (a + b);
    return integrate_rec(f, a, m, 0.5 * tol, depth - 1) +
           integrate_rec(f, m, b, 0.5 * tol, depth - 1);
}
}

// Adaptive absolute-tolerance integration on a finite interval.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    return detail::integrate_rec(f, a, b, abs_tol, max_depth);
}

// Integration with forced splits at interior breakpoints (branch edges, kinks).
template <class F>
double integrate_segments(F&& f, const std::vector<double>& pts, double abs_tol = 1e-10) {
    if (pts.size() < 2) throw std::invalid_argument("integrate_segments: need >= 2 points");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], abs_tol / double(pts.size() - 1));
    return total;
}

}
