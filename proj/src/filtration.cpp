#include "cech/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_map>

namespace cech {

namespace {

std::string simplex_str(const Simplex& s) {
    std::string out = "{";
    for (int i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

void gather(const PointCloud& cloud, const Simplex& s, std::array<Vec, Simplex::kMaxVerts>& buf) {
    for (int i = 0; i < s.size(); ++i) buf[static_cast<size_t>(i)] = cloud[s[i]];
}

// Uniform grid over the cloud's bounding box for neighbor queries at a fixed
// radius scale. Cell size equals the query scale so a ball of that radius
// touches at most 3^N cells.
class PointGrid {
public:
    PointGrid(const PointCloud& cloud, double cell) : cloud_(cloud), cell_(cell) {
        const int n = cloud.size();
        const int dim = cloud.dimension;
        lo_ = cloud[0];
        for (int i = 1; i < n; ++i)
            for (int d = 0; d < dim; ++d) lo_[d] = std::min(lo_[d], cloud[i][d]);
        cells_.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) cells_[key(cloud[i])].push_back(i);
    }

    // Indices of all points within `radius` of q (plus grid slop), ascending.
    void query(const Vec& q, double radius, std::vector<int>& out) const {
        out.clear();
        const int dim = cloud_.dimension;
        const double r2 = radius * radius;
        int lo_cell[kMaxAmbientDim], hi_cell[kMaxAmbientDim], cur[kMaxAmbientDim];
        for (int d = 0; d < dim; ++d) {
            lo_cell[d] = coord(q[d] - radius, d);
            hi_cell[d] = coord(q[d] + radius, d);
            cur[d] = lo_cell[d];
        }
        while (true) {
            uint64_t k = 0;
            for (int d = 0; d < dim; ++d)
                k = k * 0x9e3779b1ULL + static_cast<uint64_t>(cur[d] + (1 << 20));
            auto it = cells_.find(k);
            if (it != cells_.end())
                for (int i : it->second)
                    if (dist2(cloud_[i], q) <= r2) out.push_back(i);
            int d = 0;
            while (d < dim && ++cur[d] > hi_cell[d]) cur[d] = lo_cell[d], ++d;
            if (d == dim) break;
        }
        std::sort(out.begin(), out.end());
    }

private:
    int coord(double x, int d) const {
        return static_cast<int>(std::floor((x - lo_[d]) / cell_));
    }
    uint64_t key(const Vec& p) const {
        uint64_t k = 0;
        for (int d = 0; d < cloud_.dimension; ++d)
            k = k * 0x9e3779b1ULL + static_cast<uint64_t>(coord(p[d], d) + (1 << 20));
        return k;
    }

    const PointCloud& cloud_;
    double cell_;
    Vec lo_;
    std::unordered_map<uint64_t, std::vector<int>> cells_;
};

bool is_critical(const PointCloud& cloud, std::span<const Vec> pts, const Simplex& s,
                 std::optional<double> r_cut, const PointGrid* grid, std::vector<int>& scratch,
                 double* value_out) {
    Vec center;
    double radius = 0.0;
    double bary[Simplex::kMaxVerts];
    if (!detail::solve_circumsphere(pts, &center, &radius, bary))
        throw DegenerateInput("detect_critical_geometric: affinely dependent simplex " +
                              simplex_str(s));
    if (r_cut && radius > *r_cut) return false;
    for (int i = 0; i < s.size(); ++i)
        if (bary[i] <= kInteriorTol) return false;
    BallDescriptor ball{center, radius};
    if (grid) {
        grid->query(center, radius * (1.0 + 2.0 * kContainTol), scratch);
        for (int x : scratch)
            if (!s.contains(x)) return false;
    } else {
        for (int x = 0; x < cloud.size(); ++x)
            if (!s.contains(x) && in_closed_ball(cloud[x], ball)) return false;
    }
    *value_out = radius;
    return true;
}

} // namespace

void for_each_combination(int n, int k,
                          const std::function<void(std::span<const int32_t>)>& fn) {
    if (k > n || k <= 0) return;
    std::vector<int32_t> c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
    while (true) {
        fn(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
    }
}

double cech_value(const Simplex& simplex, const PointCloud& cloud) {
    if (simplex.size() == 1) return 0.0;
    std::array<Vec, Simplex::kMaxVerts> pts;
    gather(cloud, simplex, pts);
    return min_enclosing_ball({pts.data(), static_cast<size_t>(simplex.size())}).ball.radius;
}

StepPartition group_steps(std::span<const FiltrationEntry> entries, const PointCloud& cloud,
                          int max_dim) {
    StepPartition partition;
    size_t i = 0;

    // Vertex block: every vertex enters at t = 0.
    StepGroup vertex_block;
    vertex_block.tag = StepTag::Vertices;
    vertex_block.value = 0.0;
    while (i < entries.size() && entries[i].simplex.dim() == 0) {
        if (entries[i].value != 0.0)
            throw MalformedFiltration("vertex with nonzero value");
        vertex_block.members.push_back(static_cast<uint32_t>(i));
        ++i;
    }
    partition.groups.push_back(std::move(vertex_block));

    std::array<Vec, Simplex::kMaxVerts> pts;
    while (i < entries.size()) {
        const double value = entries[i].value;
        if (value <= 0.0)
            throw TieAmbiguity("positive-dimensional simplex at value 0 (duplicate points?)");
        size_t j = i;
        while (j < entries.size() && entries[j].value == value) ++j;

        StepGroup group;
        group.value = value;
        for (size_t m = i; m < j; ++m) group.members.push_back(static_cast<uint32_t>(m));

        // The lowest-dimension member determines the common ball; its minimal
        // enclosing ball support and interior reconstruct tau_min / sigma_max.
        const Simplex& m0 = entries[i].simplex;
        gather(cloud, m0, pts);
        EnclosingBall meb = min_enclosing_ball({pts.data(), static_cast<size_t>(m0.size())});
        const double r = meb.ball.radius;

        Simplex tau, sigma;
        for (int x = 0; x < cloud.size(); ++x) {
            if (!in_closed_ball(cloud[x], meb.ball)) continue;
            sigma.push_back(x);
            if (std::abs(std::sqrt(dist2(cloud[x], meb.ball.center)) - r) <=
                kBoundaryTol * (1.0 + r))
                tau.push_back(x);
        }
        if (tau.size() == 0)
            throw TieAmbiguity("step at value " + std::to_string(value) +
                               ": empty boundary support");

        const int t = tau.size();
        const int s = sigma.size() - t;
        const size_t count = j - i;

        if (s == 0) {
            if (count != 1 || !(entries[i].simplex == tau))
                throw TieAmbiguity("value tie at " + std::to_string(value) +
                                   " does not form an interval (members: " +
                                   std::to_string(count) + ")");
            group.tag = StepTag::Singleton;
            group.tau_min = tau;
            group.sigma_max = sigma;
        } else {
            // Expected member count of [tau, sigma] clipped to max_dim.
            int64_t expected = 0;
            const int max_extra = std::min(s, max_dim + 1 - t);
            for (int extra = 0; extra <= max_extra; ++extra) {
                int64_t binom = 1;
                for (int q = 0; q < extra; ++q) binom = binom * (s - q) / (q + 1);
                expected += binom;
            }
            bool ok = (static_cast<int64_t>(count) == expected);
            for (size_t m = i; m < j && ok; ++m) {
                const Simplex& alpha = entries[m].simplex;
                ok = tau.subset_of(alpha) && alpha.subset_of(sigma);
            }
            if (!ok)
                throw TieAmbiguity("value tie at " + std::to_string(value) +
                                   " does not form an interval [" + simplex_str(tau) + ", " +
                                   simplex_str(sigma) + "]");
            group.tag = StepTag::Interval;
            group.tau_min = tau;
            group.sigma_max = sigma;
        }
        partition.groups.push_back(std::move(group));
        i = j;
    }
    return partition;
}

CechFiltration build_cech_filtration(const PointCloud& cloud, int max_dim,
                                     std::optional<double> t_max) {
    const int n = cloud.size();
    if (n == 0) throw DegenerateInput("build_cech_filtration: empty cloud");
    if (max_dim < 1 || max_dim > cloud.dimension)
        throw UnsupportedDimension("build_cech_filtration: need 1 <= max_dim <= N");

    CechFiltration f;
    f.max_dim = max_dim;
    f.t_max = t_max;
    f.cloud_size = n;

    for (int i = 0; i < n; ++i)
        f.entries.push_back({Simplex{i}, 0.0});

    std::array<Vec, Simplex::kMaxVerts> pts;
    for (int k = 1; k <= max_dim; ++k) {
        for_each_combination(n, k + 1, [&](std::span<const int32_t> combo) {
            Simplex s = Simplex::from_sorted(combo);
            gather(cloud, s, pts);
            double value =
                min_enclosing_ball({pts.data(), static_cast<size_t>(s.size())}).ball.radius;
            if (t_max && value > *t_max) return;
            f.entries.push_back({s, value});
        });
    }

    std::sort(f.entries.begin(), f.entries.end(),
              [](const FiltrationEntry& a, const FiltrationEntry& b) {
                  if (a.value != b.value) return a.value < b.value;
                  if (a.simplex.dim() != b.simplex.dim()) return a.simplex.dim() < b.simplex.dim();
                  return a.simplex < b.simplex;
              });

    f.steps = group_steps(f.entries, cloud, max_dim);
    f.group_of.assign(f.entries.size(), -1);
    for (size_t g = 0; g < f.steps.groups.size(); ++g)
        for (uint32_t pos : f.steps.groups[g].members)
            f.group_of[pos] = static_cast<int32_t>(g);
    return f;
}

std::vector<CriticalSimplex> detect_critical_geometric(const PointCloud& cloud, int k,
                                                       std::optional<double> r_cut) {
    if (k < 1 || k > cloud.dimension)
        throw UnsupportedDimension("detect_critical_geometric: need 1 <= k <= N");
    const int n = cloud.size();
    std::vector<CriticalSimplex> result;
    std::array<Vec, Simplex::kMaxVerts> pts;
    std::vector<int> scratch;

    if (!r_cut) {
        for_each_combination(n, k + 1, [&](std::span<const int32_t> combo) {
            Simplex s = Simplex::from_sorted(combo);
            gather(cloud, s, pts);
            double value = 0.0;
            if (is_critical(cloud, {pts.data(), static_cast<size_t>(s.size())}, s, r_cut,
                            nullptr, scratch, &value))
                result.push_back({s, value});
        });
        return result;
    }

    // Pruned search: every simplex with circumradius <= r_cut has pairwise
    // distances <= 2 r_cut, so candidates come from a neighbor graph.
    const double rc = *r_cut;
    PointGrid grid(cloud, rc);
    const double reach2 = 4.0 * rc * rc * (1.0 + 4.0 * kContainTol);
    std::vector<int> neighbors, chosen;

    auto extend = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            Simplex s;
            s.push_back(static_cast<int32_t>(chosen[0]));
            for (int d = 1; d <= k; ++d) s.push_back(static_cast<int32_t>(chosen[static_cast<size_t>(d)]));
            gather(cloud, s, pts);
            double value = 0.0;
            if (is_critical(cloud, {pts.data(), static_cast<size_t>(s.size())}, s, r_cut, &grid,
                            scratch, &value))
                result.push_back({s, value});
            return;
        }
        const int prev = chosen.back();
        for (size_t t = 0; t < neighbors.size(); ++t) {
            int cand = neighbors[t];
            if (cand <= prev) continue;
            bool close = true;
            for (size_t u = 1; u < chosen.size() && close; ++u)
                close = dist2(cloud[cand], cloud[chosen[u]]) <= reach2;
            if (!close) continue;
            chosen.push_back(cand);
            self(self, depth + 1);
            chosen.pop_back();
        }
    };

    for (int i = 0; i < n; ++i) {
        grid.query(cloud[i], 2.0 * rc * (1.0 + 2.0 * kContainTol), neighbors);
        chosen.assign(1, i);
        extend(extend, 0);
    }
    std::sort(result.begin(), result.end(), [](const CriticalSimplex& a, const CriticalSimplex& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.simplex < b.simplex;
    });
    return result;
}

CriticalCensus critical_census(const CechFiltration& filtration, const PointCloud& cloud) {
    CriticalCensus census;
    census.counts.assign(static_cast<size_t>(filtration.max_dim) + 1, 0);
    census.critical_list.resize(static_cast<size_t>(filtration.max_dim) + 1);
    census.counts[0] = filtration.cloud_size;

    for (const StepGroup& g : filtration.steps.groups) {
        if (g.tag != StepTag::Singleton) continue;
        const FiltrationEntry& e = filtration.entries[g.members.front()];
        census.counts[static_cast<size_t>(e.simplex.dim())] += 1;
        census.critical_list[static_cast<size_t>(e.simplex.dim())].push_back({e.simplex, e.value});
    }
    for (auto& list : census.critical_list)
        std::sort(list.begin(), list.end(),
                  [](const CriticalSimplex& a, const CriticalSimplex& b) {
                      if (a.value != b.value) return a.value < b.value;
                      return a.simplex < b.simplex;
                  });

    // Geometric route must agree exactly. With t_max the filtration is
    // value-truncated, so the comparison is restricted accordingly.
    for (int k = 1; k <= filtration.max_dim; ++k) {
        std::vector<CriticalSimplex> geo = detect_critical_geometric(cloud, k);
        if (filtration.t_max) {
            std::erase_if(geo, [&](const CriticalSimplex& c) {
                return c.value > *filtration.t_max;
            });
        }
        const auto& comb = census.critical_list[static_cast<size_t>(k)];
        bool same = geo.size() == comb.size();
        for (size_t i = 0; i < geo.size() && same; ++i)
            same = geo[i].simplex == comb[i].simplex &&
                   std::abs(geo[i].value - comb[i].value) <= 1e-9 * (1.0 + geo[i].value);
        if (!same)
            throw CrossCheckMismatch(
                "critical_census: combinatorial/geometric disagreement at k=" +
                std::to_string(k) + " (" + std::to_string(comb.size()) + " vs " +
                std::to_string(geo.size()) + ")");
    }
    return census;
}

} // namespace cech
