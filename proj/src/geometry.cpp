#include "cech/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace cech {

PointCloud make_cloud(std::vector<Vec> points) {
    PointCloud cloud;
    cloud.points = std::move(points);
    cloud.dimension = cloud.points.empty() ? 0 : cloud.points.front().dim();
    for (const Vec& p : cloud.points)
        if (p.dim() != cloud.dimension)
            throw ParseError("point cloud mixes coordinate dimensions");
    return cloud;
}

PointCloud scaled(const PointCloud& cloud, double factor) {
    PointCloud out = cloud;
    for (Vec& p : out.points) p = factor * p;
    return out;
}

namespace detail {

// Center c = p0 + sum x_j (p_j - p0) from the Gram system G x = b,
// G_ij = u_i . u_j, b_i = |u_i|^2 / 2, solved by elimination with partial
// pivoting. Affine dependence is declared when a pivot drops below
// kPivotRatioTol relative to the largest squared edge length.
bool solve_circumsphere(std::span<const Vec> vertices, Vec* center, double* radius,
                        double* bary) {
    const int k = static_cast<int>(vertices.size()) - 1;
    const int dim = vertices[0].dim();

    if (k == 0) {
        if (center) *center = vertices[0];
        if (radius) *radius = 0.0;
        if (bary) bary[0] = 1.0;
        return true;
    }

    std::array<Vec, kMaxAmbientDim> u;
    double a[kMaxAmbientDim][kMaxAmbientDim + 1];
    double scale = 0.0;
    for (int i = 0; i < k; ++i) {
        u[static_cast<size_t>(i)] = vertices[static_cast<size_t>(i) + 1] - vertices[0];
        scale = std::max(scale, norm2(u[static_cast<size_t>(i)]));
    }
    if (scale == 0.0) return false;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j)
            a[i][j] = dot(u[static_cast<size_t>(i)], u[static_cast<size_t>(j)]);
        a[i][k] = 0.5 * a[i][i];
    }

    int perm[kMaxAmbientDim];
    for (int i = 0; i < k; ++i) perm[i] = i;
    for (int col = 0; col < k; ++col) {
        int best = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a[perm[r]][col]) > std::abs(a[perm[best]][col])) best = r;
        std::swap(perm[col], perm[best]);
        double pivot = a[perm[col]][col];
        if (std::abs(pivot) < kPivotRatioTol * scale) return false;
        for (int r = col + 1; r < k; ++r) {
            double f = a[perm[r]][col] / pivot;
            if (f == 0.0) continue;
            for (int c = col + 1; c <= k; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
            a[perm[r]][col] = 0.0;
        }
    }

    double x[kMaxAmbientDim];
    for (int row = k - 1; row >= 0; --row) {
        double s = a[perm[row]][k];
        for (int c = row + 1; c < k; ++c) s -= a[perm[row]][c] * x[c];
        x[row] = s / a[perm[row]][row];
    }

    Vec c = vertices[0];
    for (int j = 0; j < k; ++j)
        for (int d = 0; d < dim; ++d) c[d] += x[j] * u[static_cast<size_t>(j)][d];
    if (center) *center = c;
    if (radius) *radius = std::sqrt(dist2(c, vertices[0]));
    if (bary) {
        double lambda0 = 1.0;
        for (int j = 0; j < k; ++j) {
            bary[j + 1] = x[j];
            lambda0 -= x[j];
        }
        bary[0] = lambda0;
    }
    return true;
}

} // namespace detail

BallDescriptor circumsphere(std::span<const Vec> vertices) {
    BallDescriptor ball;
    if (!detail::solve_circumsphere(vertices, &ball.center, &ball.radius, nullptr))
        throw DegenerateInput("circumsphere: affinely dependent vertex set");
    return ball;
}

BarycentricReport circumcenter_in_open_hull(std::span<const Vec> vertices) {
    BarycentricReport report;
    report.coordinates.resize(vertices.size());
    Vec center;
    double radius = 0.0;
    if (!detail::solve_circumsphere(vertices, &center, &radius, report.coordinates.data()))
        throw DegenerateInput("circumcenter_in_open_hull: affinely dependent vertex set");
    report.strictly_interior = true;
    for (double lambda : report.coordinates)
        if (lambda <= kInteriorTol) report.strictly_interior = false;
    return report;
}

EnclosingBall min_enclosing_ball(std::span<const Vec> vertices) {
    const int m = static_cast<int>(vertices.size());
    if (m == 0) throw DegenerateInput("min_enclosing_ball: empty vertex list");

    EnclosingBall best;
    bool found = false;
    std::array<Vec, kMaxAmbientDim + 1> sub;
    std::array<int, kMaxAmbientDim + 1> idx;

    // All nonempty subsets in increasing mask order; the winning subset is the
    // boundary support of the minimal ball.
    const uint32_t full = (m >= 31) ? 0u : (1u << m);
    for (uint32_t mask = 1; mask < full; ++mask) {
        int cnt = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) {
                sub[static_cast<size_t>(cnt)] = vertices[static_cast<size_t>(i)];
                idx[static_cast<size_t>(cnt)] = i;
                ++cnt;
            }
        BallDescriptor cand;
        if (!detail::solve_circumsphere({sub.data(), static_cast<size_t>(cnt)}, &cand.center,
                                        &cand.radius, nullptr))
            continue;
        if (found && cand.radius >= best.ball.radius) continue;
        bool contains_all = true;
        for (int i = 0; i < m && contains_all; ++i) {
            if (mask & (1u << i)) continue;
            contains_all = in_closed_ball(vertices[static_cast<size_t>(i)], cand);
        }
        if (!contains_all) continue;
        best.ball = cand;
        best.support.assign(idx.begin(), idx.begin() + cnt);
        found = true;
    }
    if (!found) throw DegenerateInput("min_enclosing_ball: no valid support subset");
    return best;
}

ValidationReport general_position_check(const PointCloud& cloud) {
    ValidationReport report;
    const int n = cloud.size();
    const int max_size = std::min(n, cloud.dimension + 1);

    std::vector<int> subset;
    std::array<Vec, kMaxAmbientDim + 1> pts;

    // Lexicographic enumeration of subsets of each size 1..N+1.
    auto visit = [&](auto&& self, int start, int want) -> void {
        if (want == 0) {
            for (size_t i = 0; i < subset.size(); ++i)
                pts[i] = cloud[subset[i]];
            Vec center;
            double radius = 0.0;
            if (!detail::solve_circumsphere({pts.data(), subset.size()}, &center, &radius,
                                            nullptr)) {
                report.violations.push_back({GeneralPositionViolation::Kind::AffinelyDependent,
                                             subset, -1});
                return;
            }
            for (int x = 0; x < n; ++x) {
                if (std::binary_search(subset.begin(), subset.end(), x)) continue;
                double d = std::sqrt(dist2(cloud[x], center));
                if (std::abs(d - radius) < kCocircularTol * (1.0 + radius))
                    report.violations.push_back({GeneralPositionViolation::Kind::Cocircular,
                                                 subset, x});
            }
            return;
        }
        for (int i = start; i <= n - want; ++i) {
            subset.push_back(i);
            self(self, i + 1, want - 1);
            subset.pop_back();
        }
    };
    for (int size = 1; size <= max_size; ++size) visit(visit, 0, size);
    return report;
}

} // namespace cech
