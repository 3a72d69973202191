#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

// Elements of SL(2,R) act on the upper half plane by Moebius transformations and on
// the unit tangent bundle by right multiplication.  Flows used throughout:
//   geodesic   phi_t : g -> g * diag(e^{t/2}, e^{-t/2})
//   unstable   h+_s  : g -> g * [[1,0],[-s,1]]
//   stable     h-_s  : g -> g * [[1,s],[0,1]]
// so that phi_t h+_s = h+_{s e^t} phi_t and phi_t h-_s = h-_{s e^{-t}} phi_t.

namespace horoxt {

struct GroupElement {
    double a{1}, b{0}, c{0}, d{1};   // [[a,b],[c,d]]

    GroupElement() = default;
    GroupElement(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        const double det = a * d - b * c;
        const double scale = std::max(1.0, std::fabs(a * d) + std::fabs(b * c));
        if (!(std::fabs(det - 1.0) <= 1e-12 * scale))
            throw std::invalid_argument("GroupElement: determinant must be 1");
    }

    static GroupElement identity() { return {}; }
    double det() const { return a * d - b * c; }
    GroupElement inverse() const { return {d, -b, -c, a}; }
};

inline GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

struct UpperHalfPoint {
    double x, y;
    UpperHalfPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw std::invalid_argument("UpperHalfPoint: y must be positive");
    }
};

// g = [[1,u],[0,1]] * diag(sqrt(v), 1/sqrt(v)) * [[cos th, -sin th],[sin th, cos th]]
struct IwasawaCoords {
    double u, v, theta;
    IwasawaCoords(double u_, double v_, double theta_) : u(u_), v(v_) {
        if (!(v > 0.0)) throw std::invalid_argument("IwasawaCoords: v must be positive");
        const double two_pi = 2.0 * std::numbers::pi;
        theta = std::fmod(theta_, two_pi);
        if (theta < 0.0) theta += two_pi;
        if (theta >= two_pi) theta = 0.0;
    }
};

// g = [[1,s],[0,1]] * diag(e^{t/2}, e^{-t/2}) * [[1,0],[r,1]]
struct ASZCoords {
    double r, s, t;
};

inline constexpr double flow_time_limit = 1400.0;   // e^{t/2} must stay in double range

inline GroupElement geodesic_flow(const GroupElement& g, double t) {
    if (!(std::fabs(t) <= flow_time_limit))
        throw std::range_error("geodesic_flow: |t| exceeds exponential range");
    const double e = std::exp(0.5 * t);
    return {g.a * e, g.b / e, g.c * e, g.d / e};
}

inline GroupElement horocycle_plus(const GroupElement& g, double s) {
    return {g.a - s * g.b, g.b, g.c - s * g.d, g.d};
}

inline GroupElement horocycle_minus(const GroupElement& g, double s) {
    return {g.a, g.a * s + g.b, g.c, g.c * s + g.d};
}

inline UpperHalfPoint mobius_apply(const GroupElement& g, const UpperHalfPoint& z) {
    const std::complex<double> w(z.x, z.y);
    const std::complex<double> r = (g.a * w + g.b) / (g.c * w + g.d);
    return {r.real(), r.imag()};
}

inline GroupElement asz_encode(const ASZCoords& cs) {
    if (!(std::fabs(cs.t) <= flow_time_limit))
        throw std::range_error("asz_encode: |t| exceeds exponential range");
    const double e = std::exp(0.5 * cs.t);
    const double f = 1.0 / e;
    return {e + cs.s * cs.r * f, cs.s * f, cs.r * f, f};
}

// Inverse chart.  g and -g decode identically (the surface sees PSL); the chart is
// singular where g22 vanishes.
inline ASZCoords asz_decode(const GroupElement& g) {
    double b = g.b, c = g.c, d = g.d;
    if (std::fabs(d) < 1e-14)
        throw std::domain_error("asz_decode: chart singular, |g22| < 1e-14");
    if (d < 0.0) { b = -b; c = -c; d = -d; }
    return {c / d, b / d, -2.0 * std::log(d)};
}

inline IwasawaCoords iwasawa_decompose(const GroupElement& g) {
    const double n2 = g.c * g.c + g.d * g.d;
    const double v = 1.0 / n2;
    const double u = (g.a * g.c + g.b * g.d) * v;
    return {u, v, std::atan2(g.c, g.d)};
}

inline GroupElement iwasawa_encode(const IwasawaCoords& ic) {
    const double sv = std::sqrt(ic.v);
    const double ct = std::cos(ic.theta), st = std::sin(ic.theta);
    return {sv * ct + ic.u * st / sv, -sv * st + ic.u * ct / sv, st / sv, ct / sv};
}

}
