#include "inhomog/boxdim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "inhomog/errors.hpp"
#include "inhomog/orbital.hpp"

namespace inhomog {

namespace {

// Coordinates within 1e-9 (relative) of a cell boundary are treated as on it.
double snapped(double q) {
    const double r = std::nearbyint(q);
    if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q))) return r;
    return q;
}

struct Grid {
    double delta;
    std::int64_t ncells;

    explicit Grid(double d) : delta(d) {
        ncells = static_cast<std::int64_t>(std::ceil(snapped(1.0 / d)));
        ncells = std::max<std::int64_t>(ncells, 1);
    }

    std::int64_t clamp(std::int64_t i) const {
        return std::min(std::max<std::int64_t>(i, 0), ncells - 1);
    }

    // Cell of a single coordinate; boundary points belong to the upper cell,
    // the ambient boundary clamps into the last cell.
    std::int64_t point_cell(double v) const {
        return clamp(static_cast<std::int64_t>(std::floor(snapped(v / delta))));
    }

    // Cells of the half-open extent [lo, hi); degenerate extents use the
    // point rule.
    std::pair<std::int64_t, std::int64_t> extent_cells(double lo, double hi) const {
        const std::int64_t i0 = point_cell(lo);
        if (!(hi > lo)) return {i0, i0};
        std::int64_t i1 =
            static_cast<std::int64_t>(std::ceil(snapped(hi / delta))) - 1;
        i1 = clamp(std::max(i0, i1));
        return {i0, i1};
    }
};

// Exact deduplicating set of (x,y) cell indices. Dense bitmap for small
// grids, per-row disjoint interval lists otherwise.
class CellSet {
public:
    CellSet(const Grid& g, std::uint64_t max_cells)
        : nx_(static_cast<std::uint64_t>(g.ncells)), max_cells_(max_cells) {
        const std::uint64_t total = nx_ * nx_;
        dense_ = total <= (1ull << 26);
        if (dense_) bits_.assign((total + 63) / 64, 0);
    }

    void add_rect(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1) {
        for (std::int64_t y = y0; y <= y1; ++y) add_run(y, x0, x1);
    }

    void add_cell(std::int64_t x, std::int64_t y) { add_run(y, x, x); }

    std::uint64_t count() {
        if (!dense_) return count_;
        std::uint64_t c = 0;
        for (std::uint64_t w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }

private:
    void add_run(std::int64_t y, std::int64_t x0, std::int64_t x1) {
        if (dense_) {
            const std::uint64_t base = static_cast<std::uint64_t>(y) * nx_;
            std::uint64_t lo = base + static_cast<std::uint64_t>(x0);
            std::uint64_t hi = base + static_cast<std::uint64_t>(x1);
            // Fill [lo, hi] by whole words where possible.
            while (lo <= hi) {
                const std::uint64_t word = lo / 64, bit = lo % 64;
                if (bit == 0 && hi - lo >= 63) {
                    bits_[word] = ~0ull;
                    lo += 64;
                } else {
                    const std::uint64_t top = std::min<std::uint64_t>(hi - lo, 63 - bit);
                    const std::uint64_t mask =
                        (top == 63 ? ~0ull : ((1ull << (top + 1)) - 1)) << bit;
                    bits_[word] |= mask;
                    lo += top + 1;
                }
            }
            return;
        }
        auto& row = rows_[y];
        Interval iv{x0, x1};
        // Merge with any overlapping or adjacent intervals.
        auto it = row.lower_bound(Interval{x0, x0});
        if (it != row.begin()) {
            auto prev = std::prev(it);
            if (prev->hi >= x0 - 1) it = prev;
        }
        while (it != row.end() && it->lo <= iv.hi + 1) {
            count_ -= static_cast<std::uint64_t>(it->hi - it->lo + 1);
            iv.lo = std::min(iv.lo, it->lo);
            iv.hi = std::max(iv.hi, it->hi);
            it = row.erase(it);
        }
        count_ += static_cast<std::uint64_t>(iv.hi - iv.lo + 1);
        if (count_ > max_cells_) throw budget_exceeded_error(max_cells_, count_);
        row.insert(iv);
    }

    struct Interval {
        std::int64_t lo, hi;
        bool operator<(const Interval& o) const { return lo < o.lo; }
    };

    bool dense_ = true;
    std::uint64_t nx_;
    std::uint64_t max_cells_;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> bits_;
    std::map<std::int64_t, std::set<Interval>> rows_;
};

void add_rotated_segment(CellSet& cells, const Grid& g, Vec2 a, Vec2 b) {
    // Crossing parameters of the grid lines, then one representative point
    // per stretch between consecutive crossings.
    std::vector<double> ts{0.0, 1.0};
    const Vec2 d = b - a;
    auto add_axis = [&](double a0, double dv) {
        if (dv == 0.0) return;
        const double lo = std::min(a0, a0 + dv), hi = std::max(a0, a0 + dv);
        for (std::int64_t i = static_cast<std::int64_t>(std::ceil(lo / g.delta));
             i * g.delta <= hi; ++i) {
            const double t = (i * g.delta - a0) / dv;
            if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
    };
    add_axis(a.x, d.x);
    add_axis(a.y, d.y);
    std::sort(ts.begin(), ts.end());
    cells.add_cell(g.point_cell(a.x), g.point_cell(a.y));
    cells.add_cell(g.point_cell(b.x), g.point_cell(b.y));
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double t = 0.5 * (ts[i] + ts[i + 1]);
        const Vec2 p = a + t * d;
        cells.add_cell(g.point_cell(p.x), g.point_cell(p.y));
    }
}

} // namespace

struct MeshAccumulator::Impl {
    Impl(double delta, MeshBudget b)
        : grid(delta), cells(grid, b.max_cells), budget(b) {}
    Grid grid;
    CellSet cells;
    MeshBudget budget;
};

MeshAccumulator::MeshAccumulator(double delta, MeshBudget budget) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw domain_error("mesh scale must lie in (0,1]");
    impl_ = std::make_unique<Impl>(delta, budget);
}

MeshAccumulator::~MeshAccumulator() = default;
MeshAccumulator::MeshAccumulator(MeshAccumulator&&) noexcept = default;
MeshAccumulator& MeshAccumulator::operator=(MeshAccumulator&&) noexcept = default;

void MeshAccumulator::add(const Primitive& p) {
    if (!in_unit_square(p)) throw domain_error("primitive outside the unit square");
    const Grid& g = impl_->grid;
    CellSet& cells = impl_->cells;
    switch (p.kind) {
    case PrimitiveKind::point:
        cells.add_cell(g.point_cell(p.a.x), g.point_cell(p.a.y));
        break;
    case PrimitiveKind::segment:
        if (p.a.x == p.b.x || p.a.y == p.b.y) {
            const auto [x0, x1] =
                g.extent_cells(std::min(p.a.x, p.b.x), std::max(p.a.x, p.b.x));
            const auto [y0, y1] =
                g.extent_cells(std::min(p.a.y, p.b.y), std::max(p.a.y, p.b.y));
            cells.add_rect(x0, x1, y0, y1);
        } else {
            add_rotated_segment(cells, g, p.a, p.b);
        }
        break;
    case PrimitiveKind::rect: {
        const auto [x0, x1] = g.extent_cells(p.a.x, p.b.x);
        const auto [y0, y1] = g.extent_cells(p.a.y, p.b.y);
        cells.add_rect(x0, x1, y0, y1);
        break;
    }
    }
}

CoverCount MeshAccumulator::count() {
    const std::uint64_t n = impl_->cells.count();
    if (n > impl_->budget.max_cells)
        throw budget_exceeded_error(impl_->budget.max_cells, n);
    return CoverCount{impl_->grid.delta, n, CountMethod::exact_mesh};
}

CoverCount mesh_count(std::span<const Primitive> pieces, double delta,
                      MeshBudget budget) {
    MeshAccumulator acc(delta, budget);
    for (const auto& p : pieces) acc.add(p);
    return acc.count();
}

double DimensionFit::per_step_min() const {
    return per_step.empty() ? slope : *std::min_element(per_step.begin(), per_step.end());
}

double DimensionFit::per_step_max() const {
    return per_step.empty() ? slope : *std::max_element(per_step.begin(), per_step.end());
}

DimensionFit fit_dimension(const std::vector<CoverCount>& counts) {
    if (counts.size() < 3)
        throw insufficient_data_error("dimension fit needs at least 3 scales");
    for (std::size_t i = 0; i + 1 < counts.size(); ++i)
        if (!(counts[i + 1].delta < counts[i].delta))
            throw insufficient_data_error("scales must be strictly decreasing");
    for (const auto& c : counts)
        if (c.count == 0)
            throw insufficient_data_error("zero cover count cannot enter a log fit");

    const std::size_t n = counts.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = -std::log(counts[i].delta);
        y[i] = std::log(static_cast<double>(counts[i].count));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    DimensionFit fit;
    fit.slope = sxy / sxx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.delta_min = counts.back().delta;
    fit.delta_max = counts.front().delta;
    fit.per_step.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        fit.per_step[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    return fit;
}

double moran_dimension(std::span<const double> ratios) {
    if (ratios.empty()) throw domain_error("Moran equation needs at least one ratio");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw domain_error("ratios must lie in (0,1)");
    if (ratios.size() == 1) return 0.0;

    const auto sum_pow = [&](double s) {
        double acc = 0.0;
        for (double r : ratios) acc += std::pow(r, s);
        return acc;
    };
    double hi = 1.0;
    while (sum_pow(hi) > 1.0) {
        hi *= 2.0;
        if (hi > 1e6) throw domain_error("Moran equation solution out of range");
    }
    double lo = 0.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (sum_pow(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double similarity_dimension(const IfsSystem& ifs) {
    if (!ifs.all_similarities())
        throw domain_error("similarity dimension is defined for similarity systems");
    const auto r = ifs.ratios();
    return moran_dimension(r);
}

std::vector<double> moran_partial_sums(const IfsSystem& ifs, double t, int k_max) {
    if (t < 0.0) throw domain_error("exponent must be >= 0");
    if (k_max < 1) throw domain_error("k_max must be >= 1");
    double q = 0.0;
    for (double r : ifs.ratios()) q += std::pow(r, t);
    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(k_max));
    double term = 1.0, acc = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        term *= q;
        acc += term;
        sums.push_back(acc);
    }
    return sums;
}

SandwichBounds box_dimension_bounds(const IfsSystem& ifs, double dim_condensation,
                                    int k_lo, int k_hi) {
    if (dim_condensation < 0.0 || dim_condensation > 2.0)
        throw domain_error("condensation dimension must lie in [0,2]");
    std::vector<CoverCount> counts;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double delta = std::pow(2.0, -k);
        const auto cover = homogeneous_cover(ifs, delta);
        counts.push_back(mesh_count(cover, delta));
    }
    SandwichBounds out;
    out.homog_estimate = fit_dimension(counts).slope;
    out.similarity_dim = similarity_dimension(ifs);
    out.lower = std::max(out.homog_estimate, dim_condensation);
    out.upper = std::max(out.similarity_dim, dim_condensation);
    return out;
}

void write_counts_csv(std::ostream& os, const std::vector<CoverCount>& counts) {
    os << "delta,count,method\n";
    char buf[64];
    for (const auto& c : counts) {
        std::snprintf(buf, sizeof buf, "%.17g", c.delta);
        os << buf << ',' << c.count << ','
           << (c.method == CountMethod::exact_mesh ? "exact-mesh" : "sampled") << '\n';
    }
}

} // namespace inhomog
