#include "inhomog/ifs.hpp"

#include <algorithm>

#include "inhomog/errors.hpp"

namespace inhomog {

IfsSystem::IfsSystem(std::vector<ContractionMap> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw domain_error("an IFS needs at least one map");
    for (const auto& m : maps_) {
        validate_map(m);
        const double l = lip(m);
        lip_min_ = std::min(lip_min_, l);
        lip_max_ = std::max(lip_max_, l);
        if (!std::holds_alternative<SimilarityMap>(m)) all_similarities_ = false;
        if (!inhomog::axis_preserving(m)) axis_preserving_ = false;
    }
}

std::vector<double> IfsSystem::ratios() const {
    std::vector<double> r(maps_.size());
    std::transform(maps_.begin(), maps_.end(), r.begin(),
                   [](const ContractionMap& m) { return lip(m); });
    return r;
}

CondensationSet::CondensationSet(std::vector<Primitive> prims)
    : primitives(std::move(prims)) {
    for (const auto& p : primitives)
        if (!in_unit_square(p))
            throw domain_error("condensation primitive outside the unit square");
}

ContractionMap compose(const IfsSystem& ifs, const Word& w) {
    if (w.empty()) return identity_map();
    const int n = static_cast<int>(ifs.size());
    for (int i : w.idx)
        if (i < 1 || i > n) throw invalid_word_error("word index out of range");
    ContractionMap acc = ifs.map(static_cast<std::size_t>(w.idx.front() - 1));
    for (std::size_t k = 1; k < w.idx.size(); ++k)
        acc = compose(acc, ifs.map(static_cast<std::size_t>(w.idx[k] - 1)));
    return acc;
}

double word_lip(const IfsSystem& ifs, const Word& w) {
    const int n = static_cast<int>(ifs.size());
    double l = 1.0;
    Vec2 lxy{1.0, 1.0};
    bool diagonal = false;
    for (int i : w.idx) {
        if (i < 1 || i > n) throw invalid_word_error("word index out of range");
        const auto& m = ifs.map(static_cast<std::size_t>(i - 1));
        const Vec2 axis = lip_xy(m);
        lxy = {lxy.x * axis.x, lxy.y * axis.y};
        if (!std::holds_alternative<SimilarityMap>(m)) diagonal = true;
        l *= lip(m);
    }
    // Componentwise products for diagonal systems; plain products otherwise.
    return diagonal ? std::max(lxy.x, lxy.y) : l;
}

} // namespace inhomog
