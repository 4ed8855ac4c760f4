#include "inhomog/orbital.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "inhomog/errors.hpp"

namespace inhomog {

namespace {

// Saturating sum_{k<=depth} N^k * base.
std::uint64_t truncated_tree_size(std::size_t n, int depth, std::size_t base) {
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 2;
    std::uint64_t level = base, total = 0;
    for (int k = 0; k <= depth; ++k) {
        total += level;
        if (total > cap) return cap;
        if (level > cap / n) return cap;
        level *= n;
    }
    return total;
}

struct LipState {
    Vec2 axis{1.0, 1.0};
    bool diagonal = false;

    double scalar() const { return diagonal ? std::max(axis.x, axis.y) : axis.x; }

    LipState extended(const ContractionMap& m) const {
        LipState s = *this;
        const Vec2 l = lip_xy(m);
        s.axis = {s.axis.x * l.x, s.axis.y * l.y};
        if (!std::holds_alternative<SimilarityMap>(m)) s.diagonal = true;
        return s;
    }
};

} // namespace

OrbitalApprox orbital_to_depth(const IfsSystem& ifs, const CondensationSet& c,
                               int depth, Budget budget) {
    if (depth < 0) throw domain_error("orbital depth must be >= 0");
    const std::uint64_t projected = truncated_tree_size(ifs.size(), depth, std::max<std::size_t>(c.size(), 1));
    if (!c.empty() && projected > budget.max_pieces)
        throw budget_exceeded_error(budget.max_pieces, projected);

    OrbitalApprox out;
    out.truncation = "depth=" + std::to_string(depth);
    out.includes_root = true;
    if (c.empty()) return out;
    out.pieces.reserve(static_cast<std::size_t>(projected));

    struct Node {
        Word word;
        ContractionMap map;
        LipState lip;
    };
    std::vector<Node> level;
    level.push_back({Word{}, identity_map(), LipState{}});
    for (const auto& prim : c.primitives)
        out.pieces.push_back({Word{}, prim, 1.0});

    for (int k = 1; k <= depth; ++k) {
        std::vector<Node> next;
        next.reserve(level.size() * ifs.size());
        for (const auto& node : level) {
            for (std::size_t i = 0; i < ifs.size(); ++i) {
                Node child;
                child.word = node.word.appended(static_cast<int>(i) + 1);
                child.map = node.word.empty() ? ifs.map(i) : compose(node.map, ifs.map(i));
                child.lip = node.lip.extended(ifs.map(i));
                for (const auto& prim : c.primitives)
                    out.pieces.push_back({child.word, map_shape(child.map, prim), child.lip.scalar()});
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    return out;
}

StoppingSet stopping_set(const IfsSystem& ifs, double delta, Budget budget) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw domain_error("stopping scale must lie in (0,1]");

    StoppingSet out;
    out.delta = delta;

    struct Frame {
        Word word;
        LipState lip;
    };
    std::vector<Frame> stack;
    stack.push_back({Word{}, LipState{}}); // Lip(empty) = 1 >= delta always
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        for (std::size_t i = ifs.size(); i-- > 0;) {
            Frame child{f.word.appended(static_cast<int>(i) + 1), f.lip.extended(ifs.map(i))};
            const double l = child.lip.scalar();
            if (l < delta) {
                out.words.push_back(std::move(child.word));
                out.lips.push_back(l);
                if (out.words.size() > budget.max_pieces)
                    throw budget_exceeded_error(budget.max_pieces, out.words.size());
            } else {
                stack.push_back(std::move(child));
            }
        }
    }
    return out;
}

std::vector<Primitive> homogeneous_cover(const IfsSystem& ifs, double delta,
                                         Budget budget) {
    const StoppingSet stop = stopping_set(ifs, delta, budget);
    std::vector<Primitive> cover;
    cover.reserve(stop.words.size());
    const Vec2 corners[4] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (const auto& w : stop.words) {
        const ContractionMap m = compose(ifs, w);
        Vec2 lo{1.0, 1.0}, hi{0.0, 0.0};
        for (Vec2 c : corners) {
            const Vec2 p = map_point(m, c);
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
        cover.push_back(Primitive::rect(lo, hi));
    }
    return cover;
}

namespace {

// Nearest-neighbour queries against a fixed cloud, bucketed on a uniform
// grid; ring search expands until a hit is bracketed.
class PointGrid {
public:
    PointGrid(const std::vector<Vec2>& pts, double cell)
        : pts_(pts), cell_(std::max(cell, 1e-12)) {
        buckets_.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            buckets_[key(pts[i])].push_back(i);
    }

    bool empty() const { return pts_.empty(); }

    double nearest_dist(Vec2 q) const {
        if (pts_.empty()) return std::numeric_limits<double>::infinity();
        const long qx = cell_index(q.x), qy = cell_index(q.y);
        // Points in a bucket at Chebyshev ring r+1 are at least r*cell away,
        // so once best <= r*cell nothing further out can improve it.
        const long rmax = static_cast<long>(std::ceil(3.0 / cell_)) + 2;
        double best = std::numeric_limits<double>::infinity();
        for (long r = 0; r <= rmax; ++r) {
            for (long dx = -r; dx <= r; ++dx) {
                for (long dy = -r; dy <= r; ++dy) {
                    if (std::max(std::labs(dx), std::labs(dy)) != r) continue;
                    const auto it = buckets_.find(pack(qx + dx, qy + dy));
                    if (it == buckets_.end()) continue;
                    for (std::size_t i : it->second)
                        best = std::min(best, dist(q, pts_[i]));
                }
            }
            if (best <= cell_ * static_cast<double>(r)) return best;
        }
        return best;
    }

private:
    static std::uint64_t pack(long x, long y) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
               static_cast<std::uint32_t>(y);
    }
    long cell_index(double v) const { return static_cast<long>(std::floor(v / cell_)); }
    std::uint64_t key(Vec2 p) const { return pack(cell_index(p.x), cell_index(p.y)); }

    const std::vector<Vec2>& pts_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

std::vector<Vec2> cloud_of(const std::vector<OrbitalPiece>& pieces, double pitch) {
    std::vector<Vec2> pts;
    for (const auto& piece : pieces) sample_points(piece.shape, pitch, pts);
    return pts;
}

} // namespace

StructureGap structure_gap(const IfsSystem& ifs, const CondensationSet& c,
                           int depth, Budget budget) {
    if (depth < 1) throw domain_error("structure check needs depth >= 1");
    const double scale = std::pow(ifs.lip_max(), depth);
    const double pitch = std::max(scale / 2.0, 1e-5);

    std::vector<Vec2> fine, coarse;
    if (c.empty()) {
        // Nothing orbital to compare; check the refined homogeneous cover
        // against the coarse one instead.
        const double fine_scale = std::pow(ifs.lip_max(), depth + 1);
        for (const auto& prim : homogeneous_cover(ifs, fine_scale, budget))
            sample_points(prim, pitch, fine);
    } else {
        fine = cloud_of(orbital_to_depth(ifs, c, depth + 1, budget).pieces, pitch);
        coarse = cloud_of(orbital_to_depth(ifs, c, depth, budget).pieces, pitch);
    }
    for (const auto& prim : homogeneous_cover(ifs, scale, budget))
        sample_points(prim, pitch, coarse);

    PointGrid grid(coarse, pitch * 2.0);
    double gap = 0.0;
    for (Vec2 q : fine) gap = std::max(gap, grid.nearest_dist(q));

    StructureGap out;
    out.gap = gap;
    out.scale = scale;
    out.bound_constant = scale > 0.0 ? gap / scale : 0.0;
    return out;
}

void write_orbital_csv(std::ostream& os, const OrbitalApprox& approx) {
    os << "word,kind,ax,ay,bx,by,lip\n";
    char buf[192];
    for (const auto& piece : approx.pieces) {
        const char* kind = piece.shape.kind == PrimitiveKind::point     ? "point"
                           : piece.shape.kind == PrimitiveKind::segment ? "segment"
                                                                        : "rect";
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n", kind,
                      piece.shape.a.x, piece.shape.a.y, piece.shape.b.x,
                      piece.shape.b.y, piece.lip);
        os << piece.word.str() << ',' << buf;
    }
}

} // namespace inhomog
