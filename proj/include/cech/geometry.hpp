#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "cech/errors.hpp"

namespace cech {

inline constexpr int kMaxAmbientDim = 8;

// Tolerances used by the geometric predicates. All relative unless noted.
inline constexpr double kPivotRatioTol = 1e-10; // affine dependence in the circumsphere solve
inline constexpr double kInteriorTol = 1e-9;    // strict interiority of barycentric coordinates
inline constexpr double kContainTol = 1e-9;     // closed-ball membership slack
inline constexpr double kBoundaryTol = 1e-9;    // on-sphere detection for support sets
inline constexpr double kCocircularTol = 1e-7;  // general-position cocircularity flagging

// Coordinate vector in R^N, N <= kMaxAmbientDim. Fixed capacity, value type.
class Vec {
public:
    Vec() = default;
    Vec(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
        int i = 0;
        for (double v : xs) x_[i++] = v;
    }
    static Vec zero(int dim) {
        Vec v;
        v.dim_ = dim;
        return v;
    }

    int dim() const { return dim_; }
    double& operator[](int i) { return x_[static_cast<size_t>(i)]; }
    double operator[](int i) const { return x_[static_cast<size_t>(i)]; }

    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.dim_ != b.dim_) return false;
        for (int i = 0; i < a.dim_; ++i)
            if (a.x_[static_cast<size_t>(i)] != b.x_[static_cast<size_t>(i)]) return false;
        return true;
    }

private:
    std::array<double, kMaxAmbientDim> x_{};
    int dim_ = 0;
};

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] += b[i];
    return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] -= b[i];
    return r;
}
inline Vec operator*(double s, const Vec& a) {
    Vec r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] *= s;
    return r;
}
inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double dist2(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Finite point set in R^N. Indices 0..n-1 are stable identifiers for every
// structure derived from the cloud.
struct PointCloud {
    std::vector<Vec> points;
    int dimension = 0;

    int size() const { return static_cast<int>(points.size()); }
    const Vec& operator[](int i) const { return points[static_cast<size_t>(i)]; }
};

PointCloud make_cloud(std::vector<Vec> points);
PointCloud scaled(const PointCloud& cloud, double factor);

// Center C(alpha) and radius R(alpha) of a sphere, or of a minimal enclosing
// ball; radius >= 0 and center.dim() == N.
struct BallDescriptor {
    Vec center;
    double radius = 0.0;
};

// Minimal enclosing ball together with its boundary support set (indices into
// the input vertex list, sorted).
struct EnclosingBall {
    BallDescriptor ball;
    std::vector<int> support;
};

// Affine coordinates of a circumsphere center w.r.t. the simplex vertices.
// strictly_interior is true iff every coordinate exceeds kInteriorTol.
struct BarycentricReport {
    std::vector<double> coordinates;
    bool strictly_interior = false;
};

// Closed-ball membership predicate shared by every criticality/step test.
inline bool in_closed_ball(const Vec& p, const BallDescriptor& b) {
    double slack = 1.0 + 2.0 * kContainTol;
    return dist2(p, b.center) <= b.radius * b.radius * slack;
}

// Smallest sphere through k+1 affinely independent points (center in their
// affine hull). Throws DegenerateInput when the pivot ratio in the Gram solve
// falls below kPivotRatioTol.
BallDescriptor circumsphere(std::span<const Vec> vertices);

// Smallest closed ball containing all vertices, by enumeration of
// boundary-support subsets. Input sizes are expected to stay <= N+1.
EnclosingBall min_enclosing_ball(std::span<const Vec> vertices);

// Barycentric coordinates of the circumsphere center; houses the indicator
// h_k(sigma) as strictly_interior.
BarycentricReport circumcenter_in_open_hull(std::span<const Vec> vertices);

struct GeneralPositionViolation {
    enum class Kind { AffinelyDependent, Cocircular };
    Kind kind;
    std::vector<int> subset; // offending point subset
    int witness = -1;        // external point on the circumsphere (Cocircular only)
};

struct ValidationReport {
    std::vector<GeneralPositionViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks every subset of size <= N+1 for affine independence and for external
// points on its smallest circumsphere (|distance - radius| < kCocircularTol *
// (1 + radius)). Report-based; an empty report means general position.
ValidationReport general_position_check(const PointCloud& cloud);

namespace detail {

// Allocation-free circumsphere + barycentric solve. bary (may be null) gets
// k+1 affine coordinates. Returns false iff the vertex set is affinely
// dependent at the kPivotRatioTol threshold.
bool solve_circumsphere(std::span<const Vec> vertices, Vec* center, double* radius,
                        double* bary);

} // namespace detail

} // namespace cech
