#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "inhomog/ifs.hpp"

namespace inhomog {

enum class CountMethod { exact_mesh, sampled };

struct CoverCount {
    double delta = 1.0;
    std::uint64_t count = 0;
    CountMethod method = CountMethod::exact_mesh;
};

struct MeshBudget {
    std::uint64_t max_cells = 80'000'000;
};

// Exact number of half-open delta-mesh cells [i*d,(i+1)*d) x [j*d,(j+1)*d)
// met by the union of the primitives, deduplicated. The grid is anchored at
// the origin; coordinates on the ambient upper boundary clamp into the last
// cell. Axis-aligned extents [lo,hi] occupy the cells of [lo,hi) so that
// grid-aligned tiles count exactly one cell per tile; rotated segments are
// traversed cell by cell.
CoverCount mesh_count(std::span<const Primitive> pieces, double delta,
                      MeshBudget budget = {});

// Streaming variant of mesh_count for piece sets too large to materialize.
// Same cell conventions; count() may be called once at the end.
class MeshAccumulator {
public:
    explicit MeshAccumulator(double delta, MeshBudget budget = {});
    ~MeshAccumulator();
    MeshAccumulator(MeshAccumulator&&) noexcept;
    MeshAccumulator& operator=(MeshAccumulator&&) noexcept;

    void add(const Primitive& p);
    CoverCount count();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct DimensionFit {
    double slope = 0.0;
    std::vector<double> per_step; // two-point slopes between consecutive scales
    double r_squared = 1.0;
    double delta_min = 0.0;
    double delta_max = 1.0;

    double per_step_min() const;
    double per_step_max() const;
};

// Least-squares slope of log(count) against -log(delta). Requires at least
// three counts with strictly decreasing delta. Callers read max/min of the
// per-step slopes as upper/lower box-dimension estimates.
DimensionFit fit_dimension(const std::vector<CoverCount>& counts);

// Unique s >= 0 with sum_i r_i^s = 1, by bisection. Residual and bracket
// width both below 1e-12. N = 1 gives s = 0; N = 0 throws.
double moran_dimension(std::span<const double> ratios);
double similarity_dimension(const IfsSystem& ifs);

// Partial sums sum_{k=1..K} (sum_i r_i^t)^k for K = 1..k_max: Cauchy for
// t above the similarity dimension, geometric growth below it.
std::vector<double> moran_partial_sums(const IfsSystem& ifs, double t, int k_max);

// Numerical version of the sandwich max{dim F_0, dim C} <= dim F_C
// <= max{s, dim C}: lower uses a fitted estimate for the homogeneous
// attractor, upper the Moran solution. Raw values are reported as well.
struct SandwichBounds {
    double lower = 0.0;
    double upper = 0.0;
    double homog_estimate = 0.0;
    double similarity_dim = 0.0;
};

SandwichBounds box_dimension_bounds(const IfsSystem& ifs, double dim_condensation,
                                    int k_lo = 4, int k_hi = 10);

// CSV rows: delta,count,method.
void write_counts_csv(std::ostream& os, const std::vector<CoverCount>& counts);

} // namespace inhomog
