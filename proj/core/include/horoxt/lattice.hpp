#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "horoxt/sl2.hpp"

// Primitive vectors of Z^2 acting on the right of a unimodular basis: u = v * M.
// Hits of the cusp section along a horocycle orbit correspond to primitive vectors
// landing in the triangle {0 < u1 <= X u2, 0 < u2 <= 1}.

namespace horoxt {

bool is_primitive(std::int64_t c, std::int64_t d);

struct PrimitiveVector {
    std::int64_t c, d;

    PrimitiveVector(std::int64_t c_, std::int64_t d_);
    static PrimitiveVector unchecked(std::int64_t c_, std::int64_t d_) {
        PrimitiveVector v;
        v.c = c_;
        v.d = d_;
        return v;
    }
    friend bool operator==(const PrimitiveVector&, const PrimitiveVector&) = default;

    PrimitiveVector() : c(0), d(1) {}
};

// Integer matrix with bottom row (c,d) and determinant one; representatives differ by
// integer shifts of the top row, the returned one has 0 <= a < |c| when c != 0.
GroupElement complete_coset(const PrimitiveVector& v);

// Returns (gamma, gamma*g) with gamma integral and the base point of gamma*g inside
// the standard fundamental domain (|Re| <= 1/2, |z| >= 1, up to 1e-9 slack).
std::pair<GroupElement, GroupElement> reduce_fundamental(const GroupElement& g);

struct TriangleRegion {
    double X;   // signed aperture

    explicit TriangleRegion(double X_);
    // forward (X > 0): 0 < u1 <= X u2, 0 < u2 <= 1;  backward: X u2 <= u1 < 0
    bool contains(double u1, double u2) const {
        if (!(u2 > 0.0 && u2 <= 1.0)) return false;
        if (X > 0.0) return u1 > 0.0 && u1 <= X * u2;
        return u1 < 0.0 && u1 >= X * u2;
    }
};

struct LatticeBasis {
    double m11, m12, m21, m22;   // rows generate the lattice, u = v * M

    LatticeBasis(double a, double b, double c, double d);
    static LatticeBasis from_group(const GroupElement& g) { return {g.a, g.b, g.c, g.d}; }
    // rows of M * diag(e^{-R/2}, e^{R/2})
    LatticeBasis deformed(double R) const;
    void map(std::int64_t c, std::int64_t d, double& u1, double& u2) const {
        u1 = double(c) * m11 + double(d) * m21;
        u2 = double(c) * m12 + double(d) * m22;
    }
};

struct LatticePoint {
    PrimitiveVector v;
    double u1, u2;
};

inline constexpr std::size_t default_enumeration_cap = 100000000;

// All primitive v with v*M in the triangle, sorted by u1/u2 (hitting-time order),
// ties broken lexicographically in (c,d).
std::vector<LatticePoint> enumerate_in_triangle(const LatticeBasis& M, const TriangleRegion& region,
                                                std::size_t cap = default_enumeration_cap);

// Membership predicate with bounding box; area is used by the Siegel checks.
struct Region {
    std::function<bool(double, double)> contains;
    double xmin, xmax, ymin, ymax;
    double area = std::numeric_limits<double>::quiet_NaN();

    static Region disk(double radius, double cx = 0.0, double cy = 0.0);
    static Region triangle(double X);   // the standard aperture triangle as a Region
};

// Number of primitive v with v*M in the dilate T*A.
long long count_in_dilate(const LatticeBasis& M, const Region& A, double T,
                          std::size_t cap = default_enumeration_cap);

}
