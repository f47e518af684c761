#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cech/geometry.hpp"

namespace cech {

// Sorted, duplicate-free vertex index tuple; the combinatorial atom.
class Simplex {
public:
    static constexpr int kMaxVerts = kMaxAmbientDim + 1;

    Simplex() = default;
    Simplex(std::initializer_list<int32_t> vs) {
        for (int32_t v : vs) push_back(v);
    }
    static Simplex from_sorted(std::span<const int32_t> vs) {
        Simplex s;
        for (int32_t v : vs) s.push_back(v);
        return s;
    }

    void push_back(int32_t v) { v_[static_cast<size_t>(size_++)] = v; }
    int size() const { return size_; }
    int dim() const { return size_ - 1; }
    int32_t operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    std::span<const int32_t> vertices() const {
        return {v_.data(), static_cast<size_t>(size_)};
    }
    bool contains(int32_t v) const {
        for (int i = 0; i < size_; ++i)
            if (v_[static_cast<size_t>(i)] == v) return true;
        return false;
    }
    // this ⊆ other (both sorted)
    bool subset_of(const Simplex& other) const {
        int j = 0;
        for (int i = 0; i < size_; ++i) {
            while (j < other.size_ && other[j] < (*this)[i]) ++j;
            if (j == other.size_ || other[j] != (*this)[i]) return false;
        }
        return true;
    }
    Simplex facet(int drop) const {
        Simplex f;
        for (int i = 0; i < size_; ++i)
            if (i != drop) f.push_back((*this)[i]);
        return f;
    }

    friend bool operator==(const Simplex& a, const Simplex& b) {
        if (a.size_ != b.size_) return false;
        for (int i = 0; i < a.size_; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }
    friend bool operator<(const Simplex& a, const Simplex& b) {
        int m = a.size_ < b.size_ ? a.size_ : b.size_;
        for (int i = 0; i < m; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return a.size_ < b.size_;
    }

private:
    std::array<int32_t, kMaxVerts> v_{};
    int8_t size_ = 0;
};

struct SimplexHash {
    size_t operator()(const Simplex& s) const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (int32_t v : s.vertices()) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(v));
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

struct FiltrationEntry {
    Simplex simplex;
    double value = 0.0;
};

enum class StepTag { Vertices, Singleton, Interval };

// One value-sharing addition step: the vertex block at t = 0, a critical
// simplex added alone, or an interval [tau_min, sigma_max] clipped to the
// dimension cap.
struct StepGroup {
    StepTag tag = StepTag::Singleton;
    double value = 0.0;
    std::vector<uint32_t> members;  // positions into the entry list
    std::vector<int32_t> tau_min;   // boundary support of the common ball
    std::vector<int32_t> sigma_max; // cloud points inside the closed ball
};

struct StepPartition {
    std::vector<StepGroup> groups;
};

struct CechFiltration {
    std::vector<FiltrationEntry> entries; // sorted by (value, dim, lex)
    int max_dim = 0;
    std::optional<double> t_max;
    int cloud_size = 0;
    StepPartition steps;
    std::vector<int32_t> group_of; // entry position -> step group index
};

// Birth time f(sigma): minimal enclosing ball radius of the simplex points.
double cech_value(const Simplex& simplex, const PointCloud& cloud);

// All simplices of dimension <= max_dim (and value <= t_max when given) with
// their values, sorted, plus the step partition. Throws TieAmbiguity on
// non-generic step structure.
CechFiltration build_cech_filtration(const PointCloud& cloud, int max_dim,
                                     std::optional<double> t_max = {});

// Groups sorted entries sharing a value and reconstructs each group as the
// vertex block, a Singleton, or an Interval [tau_min, sigma_max] clipped to
// max_dim; anything else raises TieAmbiguity.
StepPartition group_steps(std::span<const FiltrationEntry> entries, const PointCloud& cloud,
                          int max_dim);

struct CriticalSimplex {
    Simplex simplex;
    double value = 0.0; // R(alpha)
};

// k-simplices with circumcenter strictly inside the open hull and no other
// cloud point in the closed circumball. With r_cut, restricts to circumradius
// <= r_cut via a grid-based neighbor search.
std::vector<CriticalSimplex> detect_critical_geometric(const PointCloud& cloud, int k,
                                                       std::optional<double> r_cut = {});

// Counts N_k of critical k-simplices. N_0 is the vertex count.
struct CriticalCensus {
    std::vector<int64_t> counts;                          // index k
    std::vector<std::vector<CriticalSimplex>> critical_list; // k >= 1
};

// Census from the step partition, cross-checked against
// detect_critical_geometric for every k in 1..max_dim. Disagreement raises
// CrossCheckMismatch.
CriticalCensus critical_census(const CechFiltration& filtration, const PointCloud& cloud);

// Enumerates k-subsets of 0..n-1 in lexicographic order.
void for_each_combination(int n, int k, const std::function<void(std::span<const int32_t>)>& fn);

} // namespace cech
