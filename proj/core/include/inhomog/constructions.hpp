#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "inhomog/boxdim.hpp"
#include "inhomog/hyperbolic.hpp"
#include "inhomog/orbital.hpp"

namespace inhomog {

struct System {
    IfsSystem ifs;
    CondensationSet condensation;
};

// Three similarities of ratio 1/2 at (0,0), (1/2,0), (1/4,1/2); empty
// condensation.
System sierpinski();

// ---- Bernoulli convolution family ------------------------------------

enum class LambdaSource { explicit_value, garsia_sqrt2, garsia_cubic };

struct BernoulliParams {
    double lambda = 0.70710678118654752440; // 2^{-1/2}
    LambdaSource source = LambdaSource::garsia_sqrt2;

    static BernoulliParams from_lambda(double lambda);
    static BernoulliParams sqrt2();
    static BernoulliParams cubic();
};

// Real root of x^3 - 2x - 2 near 1.76929, bisected to 1e-14.
double garsia_cubic_root();

// S1(p) = lambda p, S2(p) = lambda p + (1-lambda, 0) on the unit square,
// with the vertical segment {0} x [0,1] as condensation.
System bernoulli_system(const BernoulliParams& p);

// min over nonzero d in {-1,0,1}^n of |(1-lambda) sum_k d_k lambda^{k-1}|;
// equals the minimal separation of length-n base points by linearity.
// Exhaustive 3^n scan, n <= 14.
double bernoulli_min_separation(double lambda, int n);

// Number of distinct delta-bins met by the base x-coordinates of all words
// of length <= k (the single base point of C counting as level 0).
std::uint64_t base_bin_count(double lambda, int k, double delta,
                             std::uint64_t max_points = 1u << 28);

// Largest k with lambda^{k+1} > delta.
int strip_level_cap(double lambda, double delta);
// Largest k with 2^k < 1/delta.
int saturation_level(double delta);

// Horizontal-strip cover count: round(1/delta + sum_{k<=cap}
// (lambda^k/delta) * base_bin_count(k, delta)).
std::uint64_t bernoulli_strip_count(double lambda, double delta,
                                    std::uint64_t max_points = 1u << 28);

// Direct mesh count of the truncated attractor approximation (vertical
// pieces through level strip_level_cap plus the base segment), streamed
// without materializing pieces.
std::uint64_t bernoulli_direct_mesh_count(double lambda, double delta,
                                          MeshBudget budget = {});

// ---- Fractal comb family ---------------------------------------------

struct CombParams {
    int n = 3; // rows; n >= 2
};

// n diagonal maps (sx=1/2, sy=1/n, t=(0,j/n)) with the base segment
// [0,1] x {0} as condensation.
System comb_system(const CombParams& p);

// Largest m with delta < n^{-m}.
int comb_level_cap(int n, double delta);

// Exact mesh count over all orbital segments of level <= comb_level_cap
// plus the homogeneous left-edge segment {0} x [0,1].
std::uint64_t comb_mesh_count(const CombParams& p, double delta,
                              MeshBudget budget = {});

// ---- Kleinian dense-orbit construction --------------------------------

// Orbit of C = {1 - 3^{-n} : n <= n_max} under the cyclic group of the
// hyperbolic translation with multiplier 2, truncated to powers |m| <= m_max.
// Points are produced both through the group action and through the closed
// form (2 - 2^m 3^{-n} - 3^{-n}) / (2 + 2^m 3^{-n} - 3^{-n}).
struct KleinianOrbit {
    int m_max = 0;
    int n_max = 0;
    std::vector<double> closed_form; // indexed by (m, n), m = -M..M outer
    std::vector<double> group_action; // same indexing
    OrbitPointSet points;             // deduplicated, real points on (-1,1)

    double closed(int m, int n) const {
        return closed_form[static_cast<std::size_t>(m + m_max) * n_max + (n - 1)];
    }
    double group(int m, int n) const {
        return group_action[static_cast<std::size_t>(m + m_max) * n_max + (n - 1)];
    }
};

KleinianOrbit kleinian_ce(int m_max, int n_max, Budget budget = {});

// Fraction of the delta-bins of (-1,1) met by the given x-values.
double covered_bin_fraction(std::span<const double> xs, double delta);

// Bin counts at the given scales, fit-ready.
std::vector<CoverCount> kleinian_bin_counts(std::span<const double> xs,
                                            std::span<const double> deltas);

// ---- CLI-facing construction names ------------------------------------

enum class ConstructionFamily { sierpinski, bernoulli, comb, kleinian };

struct ConstructionRef {
    ConstructionFamily family = ConstructionFamily::sierpinski;
    std::string name; // canonical form of the parsed spec
    BernoulliParams bernoulli;
    CombParams comb;
    int kleinian_m = 50;
    int kleinian_n = 50;
    std::optional<double> dimension_oracle; // closed-form value when known
};

// Accepts: sierpinski | bernoulli:<lambda|sqrt2|cubic> | comb:<n> |
// kleinian-ce:<M>:<N>. Throws domain_error on anything else.
ConstructionRef parse_construction(const std::string& spec);

System build_system(const ConstructionRef& ref);

} // namespace inhomog
