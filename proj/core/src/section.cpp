#include "horoxt/section.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "horoxt/errors.hpp"

namespace horoxt {

double sejour(double t) {
    if (!(t >= 0.0)) throw std::domain_error("sejour: t must be >= 0");
    if (t == 0.0) return 0.0;
    return std::sqrt(std::expm1(t));
}

void OrbitSpec::validate() const {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("OrbitSpec: T must be positive and finite");
    if (!(std::fabs(R) <= 600.0))
        throw std::range_error("OrbitSpec: |R| exceeds exponential range");
    if (!(T * std::exp(-R) <= 1e9))
        throw capacity_error("OrbitSpec: aperture T e^{-R} exceeds 1e9");
}

namespace {

// Decode s and t of gamma g0 h+_xi without building the near-singular product as a
// GroupElement.  The second column of the product is the second column of P alone.
struct CrossingDecode {
    double s, t_abs;
};

CrossingDecode decode_column(double Pb, double Pd) {
    if (Pd < 0.0) { Pb = -Pb; Pd = -Pd; }
    if (!(Pd > 0.0)) throw std::logic_error("crossing decode: vanishing chart column");
    double s = Pb / Pd;
    s -= std::floor(s);
    if (s >= 1.0) s = 0.0;
    return {s, -2.0 * std::log(Pd)};
}

}

std::vector<HitEvent> hit_process(const OrbitSpec& spec, std::size_t cap) {
    spec.validate();
    const double X = spec.T * std::exp(-spec.R);
    const LatticeBasis M = LatticeBasis::from_group(spec.g0).deformed(spec.R);
    const std::vector<LatticePoint> pts = enumerate_in_triangle(M, TriangleRegion(X), cap);

    const double eR = std::exp(spec.R);
    const GroupElement& g = spec.g0;

    std::vector<HitEvent> out;
    out.reserve(pts.size());
    for (const LatticePoint& p : pts) {
        const double xi = eR * (p.u1 / p.u2);
        const double t = p.u2 == 1.0 ? 0.0 : -2.0 * std::log(p.u2);

        // Form only the needed entries of P = gamma g0 as raw doubles.  For deep
        // crossings gamma is large while P is small, so det(P) computed from the
        // rounded entries can drift past the group element tolerance even though
        // every entry is accurate in absolute terms.
        const GroupElement gamma = complete_coset(p.v);
        const double Pb = gamma.a * g.b + gamma.b * g.d;
        const double Pc = gamma.c * g.a + gamma.d * g.c;
        const double Pd = gamma.c * g.b + gamma.d * g.d;

        // The crossing residue P21 - xi P22 cancels exactly in exact arithmetic;
        // check it against a first-order rounding model of the inputs.
        const double residue = Pc - xi * Pd;
        const double ac = std::fabs(double(p.v.c)), ad = std::fabs(double(p.v.d));
        const double axi = std::fabs(xi);
        const double scale_r = ac * (std::fabs(g.a) + std::fabs(g.b) * axi)
                             + ad * (std::fabs(g.c) + std::fabs(g.d) * axi);
        if (!(std::fabs(residue) <= 1e-11 * (1.0 + scale_r)))
            throw std::logic_error("hit_process: crossing residue exceeds error bound");

        const CrossingDecode w = decode_column(Pb, Pd);
        const double scale_t = (ac * std::fabs(g.b) + ad * std::fabs(g.d)) / std::fabs(Pd);
        if (!(std::fabs(w.t_abs - (t + spec.R)) <= 1e-11 * (1.0 + scale_t)))
            throw std::logic_error("hit_process: peak height disagrees with chart decode");

        HitEvent ev;
        ev.j = out.size() + 1;
        ev.xi = xi;
        ev.s = w.s;
        ev.t = t;
        ev.delta = sejour(t);
        ev.xi_entry = xi - ev.delta;
        ev.vector = p.v;
        out.push_back(ev);
    }
    return out;
}

namespace {

double first_crossing_time(const GroupElement& g_start, double R, double cap_X, bool forward) {
    const LatticeBasis M = LatticeBasis::from_group(g_start).deformed(R);
    const double eR = std::exp(R);
    double X = 2.0;
    for (;;) {
        const auto pts = enumerate_in_triangle(M, TriangleRegion(forward ? X : -X));
        if (!pts.empty()) {
            const LatticePoint& p = forward ? pts.front() : pts.back();
            const double xi = eR * (p.u1 / p.u2);
            return forward ? xi : -xi;
        }
        if (X >= cap_X)
            throw horizon_error("return_time: no crossing within the aperture cap");
        X = std::min(2.0 * X, cap_X);
    }
}

}

double return_time_forward(double s, double t, double R, double cap_X) {
    if (!(cap_X >= 2.0)) throw std::invalid_argument("return_time: cap_X must be >= 2");
    return first_crossing_time(asz_encode({0.0, s, t + R}), R, cap_X, true);
}

double return_time_backward(double s, double t, double R, double cap_X) {
    if (!(cap_X >= 2.0)) throw std::invalid_argument("return_time: cap_X must be >= 2");
    return first_crossing_time(asz_encode({0.0, s, t + R}), R, cap_X, false);
}

HitEvent first_hit_event(const GroupElement& g0, double R, double cap_X) {
    if (!(cap_X >= 2.0)) throw std::invalid_argument("first_hit_event: cap_X must be >= 2");
    const double eR = std::exp(R);
    double X = 2.0;
    for (;;) {
        OrbitSpec spec;
        spec.g0 = g0;
        spec.R = R;
        spec.T = X * eR;
        const std::vector<HitEvent> events = hit_process(spec);
        if (!events.empty()) return events.front();
        if (X >= cap_X)
            throw horizon_error("first_hit_event: no crossing within the aperture cap");
        X = std::min(2.0 * X, cap_X);
    }
}

double height_at_time(const GroupElement& g0, double s) {
    const UpperHalfPoint z = mobius_apply(horocycle_plus(g0, s), {0.0, 1.0});
    const double q11 = z.x * z.x + z.y * z.y, q12 = z.x;

    // Minimise the positive form |c z + d|^2 over nonzero integer vectors by Lagrange
    // reduction; the minimiser is automatically primitive.
    auto form = [&](std::int64_t c, std::int64_t d) {
        return double(c) * c * q11 + 2.0 * double(c) * d * q12 + double(d) * d;
    };
    std::int64_t c1 = 1, d1 = 0, c2 = 0, d2 = 1;
    for (int it = 0; it < 64; ++it) {
        if (form(c1, d1) > form(c2, d2)) { std::swap(c1, c2); std::swap(d1, d2); }
        const double dot = double(c1) * c2 * q11 + (double(c1) * d2 + double(c2) * d1) * q12
                         + double(d1) * d2;
        const double mu = std::nearbyint(dot / form(c1, d1));
        if (mu == 0.0) break;
        if (!(std::fabs(mu) < 4e15))
            throw std::range_error("height_at_time: reduction step out of integer range");
        c2 -= std::int64_t(mu) * c1;
        d2 -= std::int64_t(mu) * d1;
    }
    const double qmin = std::min(form(c1, d1), form(c2, d2));
    return std::log(z.y) - std::log(qmin);
}

SupResult sup_excursion_height_detail(const GroupElement& g0, double T) {
    const double h0 = height_at_time(g0, 0.0);
    const double hT = height_at_time(g0, T);
    const double R_enum = std::max(h0, hT);

    // Every branch is unimodal, so a branch whose peak falls outside (0, T] stays
    // below the larger endpoint height on the whole segment.  Enumerating peaks
    // above R_enum therefore gives the supremum exactly.
    OrbitSpec probe;
    probe.g0 = g0;
    probe.R = R_enum;
    probe.T = T;
    SupResult best{R_enum, h0 >= hT ? 0.0 : T, false};
    for (const HitEvent& ev : hit_process(probe))
        if (R_enum + ev.t > best.value) best = {R_enum + ev.t, ev.xi, true};
    return best;
}

double sup_excursion_height(const OrbitSpec& spec) {
    spec.validate();
    if (spec.R != 0.0)
        throw std::invalid_argument("sup_excursion_height: spec.R must be 0");
    return sup_excursion_height_detail(spec.g0, spec.T).value;
}

std::vector<HitEvent> direct_crossing_oracle(const OrbitSpec& spec) {
    spec.validate();
    const double X = spec.T * std::exp(-spec.R);
    if (!(X <= 1e3))
        throw capacity_error("direct_crossing_oracle: aperture T e^{-R} exceeds 1e3");

    const GroupElement& g = spec.g0;
    const double emR = std::exp(-spec.R);

    // Candidate labels (c,d) from the capture criterion |c z(s) + d|^2 <= 4 y(s) e^{-R}
    // on a half-unit grid.  A peak reaching level R stays captured for at least
    // 2 sqrt(3) time units, so the grid cannot step over one.
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<PrimitiveVector> candidates;
    double budget = 0.0;
    for (double sk = -1.0; sk <= spec.T + 1.25; sk += 0.5) {
        const UpperHalfPoint z = mobius_apply(horocycle_plus(g, sk), {0.0, 1.0});
        const double cmax = 2.0 * std::sqrt(emR / z.y);
        const double dhw = 2.0 * std::sqrt(emR * z.y);
        budget += (cmax + 1.0) * (2.0 * dhw + 1.0);
        if (budget > 5e7)
            throw capacity_error("direct_crossing_oracle: candidate budget exceeded");
        for (std::int64_t c = 0; c <= std::int64_t(cmax); ++c) {
            const double center = -double(c) * z.x;
            const std::int64_t dlo = std::int64_t(std::ceil(center - dhw));
            const std::int64_t dhi = std::int64_t(std::floor(center + dhw));
            for (std::int64_t d = dlo; d <= dhi; ++d) {
                if (c == 0 && d <= 0) continue;
                if (!is_primitive(c, d)) continue;
                const double q = double(c) * g.b + double(d) * g.d;
                if (q == 0.0) continue;
                const std::int64_t nc = q < 0.0 ? -c : c;
                const std::int64_t nd = q < 0.0 ? -d : d;
                if (seen.insert({nc, nd}).second)
                    candidates.push_back(PrimitiveVector::unchecked(nc, nd));
            }
        }
    }

    std::vector<HitEvent> out;
    for (const PrimitiveVector& v : candidates) {
        const GroupElement gamma = complete_coset(v);
        auto depth = [&](double s) {
            const UpperHalfPoint z = mobius_apply(horocycle_plus(g, s), {0.0, 1.0});
            const UpperHalfPoint w = mobius_apply(gamma, z);
            return 1.0 / w.y;
        };

        // Golden-section bracket on the branch, then parabolic refinement; the depth
        // is exactly quadratic in s, so the refinement lands on the peak.
        double lo = -2.0, hi = spec.T + 2.0;
        constexpr double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = depth(x1), f2 = depth(x2);
        for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
            if (f1 <= f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = depth(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = depth(x2);
            }
        }
        double s_hat = 0.5 * (lo + hi);
        for (int pass = 0; pass < 2; ++pass) {
            const double e = 1e-3 * std::max(1.0, std::fabs(s_hat));
            const double fm = depth(s_hat - e), f0 = depth(s_hat), fp = depth(s_hat + e);
            const double curv = fp - 2.0 * f0 + fm;
            if (curv > 0.0) s_hat += e * (fm - fp) / (2.0 * curv);
        }

        const double h_hat = -std::log(depth(s_hat));
        if (!(s_hat > 1e-9 && s_hat <= spec.T * (1.0 + 1e-12) + 1e-12)) continue;
        if (!(h_hat >= spec.R - 1e-12)) continue;

        const double Pb = gamma.a * g.b + gamma.b * g.d;
        const double Pd = gamma.c * g.b + gamma.d * g.d;
        const CrossingDecode w = decode_column(Pb, Pd);
        double t_rel = w.t_abs - spec.R;
        if (t_rel < 0.0) t_rel = 0.0;

        HitEvent ev;
        ev.j = 0;
        ev.xi = s_hat;
        ev.s = w.s;
        ev.t = t_rel;
        ev.delta = sejour(t_rel);
        ev.xi_entry = s_hat - ev.delta;
        ev.vector = v;
        out.push_back(ev);
    }

    std::sort(out.begin(), out.end(), [](const HitEvent& x, const HitEvent& y) {
        if (x.xi != y.xi) return x.xi < y.xi;
        if (x.vector.c != y.vector.c) return x.vector.c < y.vector.c;
        return x.vector.d < y.vector.d;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].j = i + 1;
    return out;
}

}
