#pragma once

#include <vector>

#include "inhomog/maps.hpp"
#include "inhomog/word.hpp"

namespace inhomog {

// A finite system of validated contractions of the unit square. Immutable
// after construction; safe to share across threads.
class IfsSystem {
public:
    explicit IfsSystem(std::vector<ContractionMap> maps);

    std::size_t size() const { return maps_.size(); }
    const ContractionMap& map(std::size_t i0) const { return maps_[i0]; } // 0-based
    const std::vector<ContractionMap>& maps() const { return maps_; }

    double lip_min() const { return lip_min_; }
    double lip_max() const { return lip_max_; }
    bool all_similarities() const { return all_similarities_; }
    bool axis_preserving() const { return axis_preserving_; }

    // Contraction ratios of the individual maps, in order.
    std::vector<double> ratios() const;

private:
    std::vector<ContractionMap> maps_;
    double lip_min_ = 1.0;
    double lip_max_ = 0.0;
    bool all_similarities_ = true;
    bool axis_preserving_ = true;
};

// Finite union of primitives in X. An empty list encodes C = {} and yields
// the homogeneous attractor.
struct CondensationSet {
    std::vector<Primitive> primitives;

    CondensationSet() = default;
    explicit CondensationSet(std::vector<Primitive> prims);

    bool empty() const { return primitives.empty(); }
    std::size_t size() const { return primitives.size(); }
};

// S_w = S_{i_1} o ... o S_{i_k}; the empty word gives the identity.
// Throws invalid_word_error for indices outside 1..N.
ContractionMap compose(const IfsSystem& ifs, const Word& w);

// Contraction ratio of S_w as the exact product of the per-map ratios.
double word_lip(const IfsSystem& ifs, const Word& w);

} // namespace inhomog
