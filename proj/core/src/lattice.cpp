#include "horoxt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "horoxt/errors.hpp"

namespace horoxt {

bool is_primitive(std::int64_t c, std::int64_t d) {
    if (c == 0 && d == 0) throw std::invalid_argument("is_primitive: zero vector");
    const std::uint64_t ac = c < 0 ? std::uint64_t(-(c + 1)) + 1 : std::uint64_t(c);
    const std::uint64_t ad = d < 0 ? std::uint64_t(-(d + 1)) + 1 : std::uint64_t(d);
    return std::gcd(ac, ad) == 1;
}

PrimitiveVector::PrimitiveVector(std::int64_t c_, std::int64_t d_) : c(c_), d(d_) {
    if (!is_primitive(c_, d_))
        throw std::invalid_argument("PrimitiveVector: gcd(c,d) must be 1");
}

namespace {

// extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::int64_t t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    x = x0; y = y0;
    return a;
}

// mathematical mod: result in [0, |m|)
std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t am = m < 0 ? -m : m;
    std::int64_t r = a % am;
    if (r < 0) r += am;
    return r;
}

}

GroupElement complete_coset(const PrimitiveVector& v) {
    const std::int64_t c = v.c, d = v.d;
    constexpr std::int64_t lim = std::int64_t(1) << 52;   // keep entries exact in double
    if (std::llabs(c) > lim || std::llabs(d) > lim)
        throw std::overflow_error("complete_coset: vector too large");
    if (c == 0) return {double(d), 0.0, 0.0, double(d)};          // d = +-1
    if (d == 0) return {0.0, -double(c), double(c), 0.0};         // c = +-1
    std::int64_t x, y;
    ext_gcd(d, c, x, y);               // x d + y c = 1
    const std::int64_t a = mod_floor(x, c);
    // b = (a d - 1)/c exactly; use 128-bit for the product
    const __int128 num = __int128(a) * d - 1;
    const std::int64_t b = std::int64_t(num / c);
    if (__int128(a) * d - __int128(b) * c != 1)
        throw std::logic_error("complete_coset: completion failed");
    return {double(a), double(b), double(c), double(d)};
}

std::pair<GroupElement, GroupElement> reduce_fundamental(const GroupElement& g) {
    double zx, zy;
    {
        const UpperHalfPoint z0 = mobius_apply(g, {0.0, 1.0});
        zx = z0.x;
        zy = z0.y;
    }
    // gamma accumulated exactly in integers
    std::int64_t A = 1, B = 0, C = 0, D = 1;
    for (int iter = 0; iter < 1000000; ++iter) {
        const double n = std::nearbyint(zx);
        if (n != 0.0) {
            if (std::fabs(n) > 9e15) throw std::runtime_error("reduce_fundamental: overflow");
            const std::int64_t ni = std::int64_t(n);
            zx -= n;
            A -= ni * C;   // [[1,-n],[0,1]] * gamma
            B -= ni * D;
        }
        const double norm2 = zx * zx + zy * zy;
        if (norm2 >= 1.0 - 1e-9) {
            const GroupElement gamma{double(A), double(B), double(C), double(D)};
            return {gamma, gamma * g};
        }
        // inversion: z -> -1/z, gamma -> [[0,-1],[1,0]] gamma
        const double nx = -zx / norm2, ny = zy / norm2;
        zx = nx;
        zy = ny;
        const std::int64_t tA = A, tB = B;
        A = -C; B = -D; C = tA; D = tB;
        if (std::llabs(A) > (std::int64_t(1) << 60) || std::llabs(B) > (std::int64_t(1) << 60))
            throw std::runtime_error("reduce_fundamental: coefficient overflow");
    }
    throw std::runtime_error("reduce_fundamental: did not converge");
}

TriangleRegion::TriangleRegion(double X_) : X(X_) {
    if (!(X != 0.0) || !std::isfinite(X_))
        throw std::invalid_argument("TriangleRegion: aperture must be finite and nonzero");
}

LatticeBasis::LatticeBasis(double a, double b, double c, double d)
    : m11(a), m12(b), m21(c), m22(d) {
    const double det = a * d - b * c;
    const double scale = std::max(1.0, std::fabs(a * d) + std::fabs(b * c));
    if (!(std::fabs(std::fabs(det) - 1.0) <= 1e-10 * scale))
        throw std::invalid_argument("LatticeBasis: must be unimodular");
}

LatticeBasis LatticeBasis::deformed(double R) const {
    if (!(std::fabs(R) <= flow_time_limit))
        throw std::range_error("LatticeBasis::deformed: |R| exceeds exponential range");
    const double e = std::exp(0.5 * R);
    const double f = 1.0 / e;
    return {m11 * f, m12 * e, m21 * f, m22 * e};
}

namespace {

struct IMat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
};

// Lagrange reduction of the basis rows; returns U with (reduced rows) = U * M.
// A short near-orthogonal basis keeps the preimage bounding box close to the
// triangle's area even when M is strongly sheared by the geodesic deformation.
IMat2 gauss_reduce_rows(double& r11, double& r12, double& r21, double& r22) {
    IMat2 U;
    for (int iter = 0; iter < 64; ++iter) {
        double n1 = r11 * r11 + r12 * r12;
        double n2 = r21 * r21 + r22 * r22;
        if (n1 > n2) {
            std::swap(r11, r21); std::swap(r12, r22);
            std::swap(U.a, U.c); std::swap(U.b, U.d);
            std::swap(n1, n2);
        }
        const double mu = std::nearbyint((r11 * r21 + r12 * r22) / n1);
        if (mu == 0.0 || !(std::fabs(mu) < 9e15)) break;
        const std::int64_t m = std::int64_t(mu);
        r21 -= mu * r11;
        r22 -= mu * r12;
        U.c -= m * U.a;
        U.d -= m * U.b;
    }
    return U;
}

struct Box {
    std::int64_t cmin, cmax, dmin, dmax;
    std::size_t cells() const {
        return std::size_t(cmax - cmin + 1) * std::size_t(dmax - dmin + 1);
    }
};

// Integer bounding box of the corner preimages under the reduced basis, margin 1.
Box preimage_box(const double (*corners)[2], int ncorners,
                 double r11, double r12, double r21, double r22, std::size_t cap) {
    const double det = r11 * r22 - r12 * r21;
    // inverse of [[r11,r12],[r21,r22]] applied on the right: w = u * Minv
    const double i11 = r22 / det, i12 = -r12 / det, i21 = -r21 / det, i22 = r11 / det;
    double clo = 0, chi = 0, dlo = 0, dhi = 0;
    for (int k = 0; k < ncorners; ++k) {
        const double wc = corners[k][0] * i11 + corners[k][1] * i21;
        const double wd = corners[k][0] * i12 + corners[k][1] * i22;
        if (k == 0) { clo = chi = wc; dlo = dhi = wd; }
        clo = std::min(clo, wc); chi = std::max(chi, wc);
        dlo = std::min(dlo, wd); dhi = std::max(dhi, wd);
    }
    const double guard = 9e15;
    if (!(std::fabs(clo) < guard && std::fabs(chi) < guard &&
          std::fabs(dlo) < guard && std::fabs(dhi) < guard))
        throw capacity_error("lattice enumeration: preimage box out of range");
    Box box{std::int64_t(std::floor(clo)) - 1, std::int64_t(std::ceil(chi)) + 1,
            std::int64_t(std::floor(dlo)) - 1, std::int64_t(std::ceil(dhi)) + 1};
    const double cells = double(box.cmax - box.cmin + 1) * double(box.dmax - box.dmin + 1);
    if (cells > 64.0 * double(cap) + 1e6)
        throw capacity_error("lattice enumeration: bounding box exceeds capacity");
    return box;
}

}

std::vector<LatticePoint> enumerate_in_triangle(const LatticeBasis& M, const TriangleRegion& region,
                                                std::size_t cap) {
    if (0.152 * std::fabs(region.X) > double(cap))
        throw capacity_error("enumerate_in_triangle: expected count exceeds cap");
    double r11 = M.m11, r12 = M.m12, r21 = M.m21, r22 = M.m22;
    const IMat2 U = gauss_reduce_rows(r11, r12, r21, r22);
    const double corners[3][2] = {{0.0, 0.0}, {region.X, 1.0}, {0.0, 1.0}};
    const Box box = preimage_box(corners, 3, r11, r12, r21, r22, cap);

    std::vector<LatticePoint> out;
    for (std::int64_t cc = box.cmin; cc <= box.cmax; ++cc) {
        for (std::int64_t dd = box.dmin; dd <= box.dmax; ++dd) {
            if (cc == 0 && dd == 0) continue;
            const double u1 = double(cc) * r11 + double(dd) * r21;
            const double u2 = double(cc) * r12 + double(dd) * r22;
            if (!region.contains(u1, u2)) continue;
            if (!is_primitive(cc, dd)) continue;
            // back to original coordinates: v = v' * U
            const std::int64_t vc = cc * U.a + dd * U.c;
            const std::int64_t vd = cc * U.b + dd * U.d;
            out.push_back({PrimitiveVector::unchecked(vc, vd), u1, u2});
            if (out.size() > cap)
                throw capacity_error("enumerate_in_triangle: count exceeds cap");
        }
    }
    std::sort(out.begin(), out.end(), [](const LatticePoint& p, const LatticePoint& q) {
        const double rp = p.u1 / p.u2, rq = q.u1 / q.u2;
        if (rp != rq) return rp < rq;
        if (p.v.c != q.v.c) return p.v.c < q.v.c;
        return p.v.d < q.v.d;
    });
    return out;
}

Region Region::disk(double radius, double cx, double cy) {
    Region r;
    r.contains = [radius, cx, cy](double x, double y) {
        const double dx = x - cx, dy = y - cy;
        return dx * dx + dy * dy <= radius * radius;
    };
    r.xmin = cx - radius; r.xmax = cx + radius;
    r.ymin = cy - radius; r.ymax = cy + radius;
    r.area = std::numbers::pi * radius * radius;
    return r;
}

Region Region::triangle(double X) {
    Region r;
    TriangleRegion tri(X);
    r.contains = [tri](double x, double y) { return tri.contains(x, y); };
    r.xmin = std::min(0.0, X); r.xmax = std::max(0.0, X);
    r.ymin = 0.0; r.ymax = 1.0;
    r.area = 0.5 * std::fabs(X);
    return r;
}

long long count_in_dilate(const LatticeBasis& M, const Region& A, double T, std::size_t cap) {
    if (!(T > 0.0)) throw std::invalid_argument("count_in_dilate: T must be positive");
    double r11 = M.m11, r12 = M.m12, r21 = M.m21, r22 = M.m22;
    gauss_reduce_rows(r11, r12, r21, r22);
    const double corners[4][2] = {{T * A.xmin, T * A.ymin}, {T * A.xmax, T * A.ymin},
                                  {T * A.xmin, T * A.ymax}, {T * A.xmax, T * A.ymax}};
    const Box box = preimage_box(corners, 4, r11, r12, r21, r22, cap);
    long long count = 0;
    for (std::int64_t cc = box.cmin; cc <= box.cmax; ++cc) {
        for (std::int64_t dd = box.dmin; dd <= box.dmax; ++dd) {
            if (cc == 0 && dd == 0) continue;
            const double u1 = double(cc) * r11 + double(dd) * r21;
            const double u2 = double(cc) * r12 + double(dd) * r22;
            if (!A.contains(u1 / T, u2 / T)) continue;
            if (!is_primitive(cc, dd)) continue;
            ++count;
            if (std::size_t(count) > cap)
                throw capacity_error("count_in_dilate: count exceeds cap");
        }
    }
    return count;
}

}
