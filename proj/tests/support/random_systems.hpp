#pragma once

#include <random>
#include <vector>

#include "inhomog/ifs.hpp"

namespace inhomog::testing {

// Random similarity IFS with N maps and scales in [lo, hi]; translations
// chosen so every map keeps the unit square inside itself.
inline IfsSystem random_similarity_ifs(std::mt19937_64& rng, int n_maps,
                                       double lo = 0.2, double hi = 0.8) {
    std::uniform_real_distribution<double> scale_dist(lo, hi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ContractionMap> maps;
    maps.reserve(static_cast<std::size_t>(n_maps));
    for (int i = 0; i < n_maps; ++i) {
        const double s = scale_dist(rng);
        maps.push_back(SimilarityMap{
            s, 0.0, false, {unit(rng) * (1.0 - s), unit(rng) * (1.0 - s)}});
    }
    return IfsSystem{std::move(maps)};
}

inline std::vector<IfsSystem> random_sample(std::uint64_t seed, int count,
                                            int max_maps = 4) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> n_dist(1, max_maps);
    std::vector<IfsSystem> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(random_similarity_ifs(rng, n_dist(rng)));
    return out;
}

} // namespace inhomog::testing
