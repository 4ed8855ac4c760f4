#include "inhomog/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <unordered_set>

#include "inhomog/errors.hpp"
#include "inhomog/threads.hpp"

namespace inhomog {

System sierpinski() {
    std::vector<ContractionMap> maps{
        SimilarityMap{0.5, 0.0, false, {0.0, 0.0}},
        SimilarityMap{0.5, 0.0, false, {0.5, 0.0}},
        SimilarityMap{0.5, 0.0, false, {0.25, 0.5}},
    };
    return System{IfsSystem{std::move(maps)}, CondensationSet{}};
}

// ---- Bernoulli convolution family ------------------------------------

BernoulliParams BernoulliParams::from_lambda(double lambda) {
    if (!(lambda > 0.5 && lambda < 1.0))
        throw domain_error("lambda must lie in (1/2, 1)");
    return BernoulliParams{lambda, LambdaSource::explicit_value};
}

BernoulliParams BernoulliParams::sqrt2() {
    return BernoulliParams{1.0 / std::sqrt(2.0), LambdaSource::garsia_sqrt2};
}

BernoulliParams BernoulliParams::cubic() {
    return BernoulliParams{1.0 / garsia_cubic_root(), LambdaSource::garsia_cubic};
}

double garsia_cubic_root() {
    const auto f = [](double x) { return x * x * x - 2.0 * x - 2.0; };
    double lo = 1.7, hi = 1.8;
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

System bernoulli_system(const BernoulliParams& p) {
    const double l = p.lambda;
    if (!(l > 0.5 && l < 1.0)) throw domain_error("lambda must lie in (1/2, 1)");
    std::vector<ContractionMap> maps{
        SimilarityMap{l, 0.0, false, {0.0, 0.0}},
        SimilarityMap{l, 0.0, false, {1.0 - l, 0.0}},
    };
    CondensationSet c{{Primitive::segment({0.0, 0.0}, {0.0, 1.0})}};
    return System{IfsSystem{std::move(maps)}, std::move(c)};
}

namespace {

// min |sum_k d_k w_k| over d in {-1,0,1}^n with some d_k nonzero, where
// w_k = (1-lambda) lambda^{k-1}. Plain depth-first enumeration.
double min_abs_sum(const std::vector<double>& weights, std::size_t next,
                   double partial, bool nonzero) {
    if (next == weights.size())
        return nonzero ? std::abs(partial) : std::numeric_limits<double>::infinity();
    double best = min_abs_sum(weights, next + 1, partial, nonzero);
    best = std::min(best, min_abs_sum(weights, next + 1, partial + weights[next], true));
    best = std::min(best, min_abs_sum(weights, next + 1, partial - weights[next], true));
    return best;
}

} // namespace

double bernoulli_min_separation(double lambda, int n) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw domain_error("lambda must lie in (0,1)");
    if (n < 1) throw domain_error("word length must be >= 1");
    if (n > 14) throw budget_exceeded_error(static_cast<std::uint64_t>(std::pow(3.0, 14)),
                                            static_cast<std::uint64_t>(std::pow(3.0, n)));
    std::vector<double> weights(static_cast<std::size_t>(n));
    double pw = 1.0;
    for (int k = 0; k < n; ++k) {
        weights[static_cast<std::size_t>(k)] = (1.0 - lambda) * pw;
        pw *= lambda;
    }
    if (n < 6 || worker_count() < 2)
        return min_abs_sum(weights, 0, 0.0, false);

    // First digit parallel; min-reduction is order-independent.
    auto zero = std::async(std::launch::async,
                           [&] { return min_abs_sum(weights, 1, 0.0, false); });
    auto plus = std::async(std::launch::async,
                           [&] { return min_abs_sum(weights, 1, weights[0], true); });
    const double minus = min_abs_sum(weights, 1, -weights[0], true);
    return std::min({zero.get(), plus.get(), minus});
}

namespace {

struct BinField {
    explicit BinField(double delta) {
        nbins = static_cast<std::int64_t>(std::ceil(1.0 / delta)) + 1;
        first_level.assign(static_cast<std::size_t>(nbins), 127);
        inv_delta = 1.0 / delta;
    }

    std::int64_t bin(double x) const {
        auto i = static_cast<std::int64_t>(std::floor(x * inv_delta));
        return std::min(std::max<std::int64_t>(i, 0), nbins - 1);
    }

    void mark(double x, int level) {
        auto& slot = first_level[static_cast<std::size_t>(bin(x))];
        slot = std::min(slot, static_cast<signed char>(std::min(level, 126)));
    }

    std::int64_t nbins = 0;
    double inv_delta = 1.0;
    std::vector<signed char> first_level; // minimal word level reaching the bin
};

// Base x-coordinates of all words up to max_level: children of x at level l
// are x and x + lambda^l (1-lambda).
void descend_base_points(BinField& field, const std::vector<double>& lam_pow,
                         double lambda, double x, int level, int max_level) {
    field.mark(x, level);
    if (level == max_level) return;
    descend_base_points(field, lam_pow, lambda, x, level + 1, max_level);
    descend_base_points(field, lam_pow, lambda,
                        x + lam_pow[static_cast<std::size_t>(level)] * (1.0 - lambda),
                        level + 1, max_level);
}

std::vector<double> lambda_powers(double lambda, int max_level) {
    std::vector<double> pw(static_cast<std::size_t>(max_level) + 1);
    pw[0] = 1.0;
    for (int k = 1; k <= max_level; ++k)
        pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * lambda;
    return pw;
}

void check_point_budget(int max_level, std::uint64_t max_points) {
    if (max_level >= 62 || (2ull << max_level) > max_points)
        throw budget_exceeded_error(max_points, max_level >= 62
                                                    ? std::numeric_limits<std::uint64_t>::max()
                                                    : (2ull << max_level));
}

} // namespace

std::uint64_t base_bin_count(double lambda, int k, double delta,
                             std::uint64_t max_points) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw domain_error("lambda must lie in (0,1)");
    if (!(delta > 0.0 && delta <= 1.0)) throw domain_error("delta must lie in (0,1]");
    if (k < 0) throw domain_error("level must be >= 0");
    check_point_budget(k, max_points);

    BinField field(delta);
    descend_base_points(field, lambda_powers(lambda, k), lambda, 0.0, 0, k);
    std::uint64_t n = 0;
    for (signed char lvl : field.first_level) n += (lvl != 127);
    return n;
}

namespace {

// Ratio of logs snapped to integers within 1e-9 so that exact power-of-base
// scales resolve deterministically.
double snapped_log_ratio(double value, double base) {
    const double q = std::log(value) / std::log(base);
    const double r = std::nearbyint(q);
    return std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q)) ? r : q;
}

} // namespace

int strip_level_cap(double lambda, double delta) {
    // Largest k with lambda^{k+1} > delta, never below 0.
    const double q = snapped_log_ratio(delta, lambda); // delta = lambda^q
    const double kq = std::floor(q - 1.0);
    const int k = static_cast<int>(kq == q - 1.0 ? kq - 1.0 : kq);
    return std::max(k, 0);
}

int saturation_level(double delta) {
    // Largest k with 2^k < 1/delta, never below 0.
    const double q = snapped_log_ratio(1.0 / delta, 2.0); // 1/delta = 2^q
    const double kq = std::ceil(q - 1.0);
    const int k = static_cast<int>(kq == q ? kq - 1.0 : kq);
    return std::max(k, 0);
}

std::uint64_t bernoulli_strip_count(double lambda, double delta,
                                    std::uint64_t max_points) {
    if (!(lambda > 0.5 && lambda < 1.0)) throw domain_error("lambda must lie in (1/2, 1)");
    if (!(delta > 0.0 && delta <= 1.0)) throw domain_error("delta must lie in (0,1]");

    const int cap = strip_level_cap(lambda, delta);
    check_point_budget(cap, max_points);

    // One descent marks every bin with the smallest level reaching it; the
    // per-level bin counts of the union are then cumulative histograms.
    BinField field(delta);
    descend_base_points(field, lambda_powers(lambda, cap), lambda, 0.0, 0, cap);
    std::vector<std::uint64_t> first_hits(static_cast<std::size_t>(cap) + 1, 0);
    for (signed char lvl : field.first_level)
        if (lvl != 127) ++first_hits[static_cast<std::size_t>(lvl)];

    double total = 1.0 / delta;
    std::uint64_t bins_so_far = 0;
    double lam_pow = 1.0;
    for (int k = 0; k <= cap; ++k) {
        bins_so_far += first_hits[static_cast<std::size_t>(k)];
        total += (lam_pow / delta) * static_cast<double>(bins_so_far);
        lam_pow *= lambda;
    }
    return static_cast<std::uint64_t>(std::llround(total));
}

namespace {

// Vertical pieces S_w(C) = {x} x [0, lambda^level] streamed into the mesh.
void descend_vertical_pieces(MeshAccumulator& acc, const std::vector<double>& lam_pow,
                             double lambda, double x, int level, int max_level) {
    const double h = lam_pow[static_cast<std::size_t>(level)];
    acc.add(Primitive::segment({x, 0.0}, {x, h}));
    if (level == max_level) return;
    descend_vertical_pieces(acc, lam_pow, lambda, x, level + 1, max_level);
    descend_vertical_pieces(acc, lam_pow, lambda,
                            x + lam_pow[static_cast<std::size_t>(level)] * (1.0 - lambda),
                            level + 1, max_level);
}

} // namespace

std::uint64_t bernoulli_direct_mesh_count(double lambda, double delta,
                                          MeshBudget budget) {
    if (!(lambda > 0.5 && lambda < 1.0)) throw domain_error("lambda must lie in (1/2, 1)");
    const int cap = strip_level_cap(lambda, delta);
    check_point_budget(cap, 1ull << 28);

    MeshAccumulator acc(delta, budget);
    acc.add(Primitive::segment({0.0, 0.0}, {1.0, 0.0})); // homogeneous attractor
    descend_vertical_pieces(acc, lambda_powers(lambda, cap), lambda, 0.0, 0, cap);
    return acc.count().count;
}

// ---- Fractal comb family ---------------------------------------------

System comb_system(const CombParams& p) {
    if (p.n < 2) throw domain_error("comb needs n >= 2 rows");
    std::vector<ContractionMap> maps;
    maps.reserve(static_cast<std::size_t>(p.n));
    for (int j = 0; j < p.n; ++j)
        maps.push_back(DiagonalAffineMap{0.5, 1.0 / p.n,
                                         {0.0, static_cast<double>(j) / p.n}});
    CondensationSet c{{Primitive::segment({0.0, 0.0}, {1.0, 0.0})}};
    return System{IfsSystem{std::move(maps)}, std::move(c)};
}

int comb_level_cap(int n, double delta) {
    if (n < 2) throw domain_error("comb needs n >= 2 rows");
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("delta must lie in (0,1)");
    // Largest m with delta < n^{-m}, i.e. n^m < 1/delta.
    const double q = snapped_log_ratio(1.0 / delta, static_cast<double>(n));
    const double mq = std::ceil(q - 1.0);
    const int m = static_cast<int>(mq == q ? mq - 1.0 : mq);
    return std::max(m, 0);
}

namespace {

void descend_comb_rows(MeshAccumulator& acc, int n, double y, double inv_n_pow,
                       int level, int max_level, double half_pow) {
    acc.add(Primitive::segment({0.0, y}, {half_pow, y}));
    if (level == max_level) return;
    for (int j = 0; j < n; ++j)
        descend_comb_rows(acc, n, y + j * (inv_n_pow / n), inv_n_pow / n, level + 1,
                          max_level, half_pow * 0.5);
}

} // namespace

std::uint64_t comb_mesh_count(const CombParams& p, double delta, MeshBudget budget) {
    const int cap = comb_level_cap(p.n, delta);
    double projected = 0.0, level = 1.0;
    for (int k = 0; k <= cap; ++k) {
        projected += level;
        level *= p.n;
    }
    if (projected > 2e8) throw budget_exceeded_error(200'000'000, static_cast<std::uint64_t>(projected));

    MeshAccumulator acc(delta, budget);
    acc.add(Primitive::segment({0.0, 0.0}, {0.0, 1.0})); // homogeneous attractor
    descend_comb_rows(acc, p.n, 0.0, 1.0, 0, cap, 1.0);
    return acc.count().count;
}

// ---- Kleinian dense-orbit construction --------------------------------

KleinianOrbit kleinian_ce(int m_max, int n_max, Budget budget) {
    if (m_max < 1 || n_max < 1) throw domain_error("truncations must be >= 1");
    const std::uint64_t total =
        (2ull * m_max + 1) * static_cast<std::uint64_t>(n_max);
    if (total > budget.max_pieces) throw budget_exceeded_error(budget.max_pieces, total);

    KleinianOrbit out;
    out.m_max = m_max;
    out.n_max = n_max;
    out.closed_form.resize(total);
    out.group_action.resize(total);

    std::vector<double> beta_pow(static_cast<std::size_t>(n_max) + 1);
    beta_pow[0] = 1.0;
    for (int n = 1; n <= n_max; ++n)
        beta_pow[static_cast<std::size_t>(n)] = beta_pow[static_cast<std::size_t>(n - 1)] / 3.0;

    // Indexing applies the m |-> -m relabeling so that both routes agree
    // at equal (m, n): h^m(1 - b^n) = (2 - a^{-m} b^n - b^n)/(2 + a^{-m} b^n - b^n).
    const MoebiusMap h = hyperbolic_translation(2.0);
    const MoebiusMap hinv = inverse(h);
    for (int n = 1; n <= n_max; ++n) {
        const double bn = beta_pow[static_cast<std::size_t>(n)];
        for (int m = -m_max; m <= m_max; ++m) {
            const double x = std::exp2(static_cast<double>(m)) * bn;
            out.closed_form[static_cast<std::size_t>(m + m_max) * n_max + (n - 1)] =
                (2.0 - x - bn) / (2.0 + x - bn);
        }
        Complex fwd{1.0 - bn, 0.0}, bwd{1.0 - bn, 0.0};
        out.group_action[static_cast<std::size_t>(m_max) * n_max + (n - 1)] = 1.0 - bn;
        for (int m = 1; m <= m_max; ++m) {
            fwd = h(fwd);  // h^m, stored at relabeled index -m
            bwd = hinv(bwd);
            out.group_action[static_cast<std::size_t>(-m + m_max) * n_max + (n - 1)] =
                fwd.real();
            out.group_action[static_cast<std::size_t>(m + m_max) * n_max + (n - 1)] =
                bwd.real();
        }
    }

    OrbitPointSet pts;
    pts.points.reserve(total);
    for (int m = -m_max; m <= m_max; ++m)
        for (int n = 1; n <= n_max; ++n) {
            const double v = out.closed(m, n);
            if (std::abs(v) < 1.0) {
                pts.points.push_back(Complex{v, 0.0});
                pts.labels.push_back(std::to_string(m) + ":" + std::to_string(n));
            }
        }
    // Reuse the orbit dedup through a temporary set.
    OrbitPointSet deduped = std::move(pts);
    {
        // sort+tolerance dedup on the real line
        std::vector<std::size_t> order(deduped.points.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return deduped.points[a].real() < deduped.points[b].real();
        });
        OrbitPointSet uniq;
        double last = -2.0;
        for (std::size_t i : order) {
            const double v = deduped.points[i].real();
            if (uniq.points.empty() || v - last > 1e-12) {
                uniq.points.push_back(deduped.points[i]);
                uniq.labels.push_back(deduped.labels[i]);
                last = v;
            }
        }
        out.points = std::move(uniq);
    }
    return out;
}

double covered_bin_fraction(std::span<const double> xs, double delta) {
    if (!(delta > 0.0 && delta <= 2.0)) throw domain_error("delta must lie in (0,2]");
    const auto nbins = static_cast<std::int64_t>(std::llround(2.0 / delta));
    std::unordered_set<std::int64_t> hit;
    for (double x : xs) {
        auto i = static_cast<std::int64_t>(std::floor((x + 1.0) / delta));
        hit.insert(std::min(std::max<std::int64_t>(i, 0), nbins - 1));
    }
    return static_cast<double>(hit.size()) / static_cast<double>(nbins);
}

std::vector<CoverCount> kleinian_bin_counts(std::span<const double> xs,
                                            std::span<const double> deltas) {
    std::vector<CoverCount> counts;
    counts.reserve(deltas.size());
    for (double d : deltas) {
        const auto nbins = static_cast<std::int64_t>(std::llround(2.0 / d));
        std::unordered_set<std::int64_t> hit;
        for (double x : xs) {
            auto i = static_cast<std::int64_t>(std::floor((x + 1.0) / d));
            hit.insert(std::min(std::max<std::int64_t>(i, 0), nbins - 1));
        }
        counts.push_back(CoverCount{d, hit.size(), CountMethod::exact_mesh});
    }
    return counts;
}

// ---- CLI-facing construction names ------------------------------------

namespace {

double comb_oracle(int n) {
    return n == 2 ? 1.0 : 2.0 - std::log(2.0) / std::log(static_cast<double>(n));
}

} // namespace

ConstructionRef parse_construction(const std::string& spec) {
    ConstructionRef ref;
    ref.name = spec;
    if (spec == "sierpinski") {
        ref.family = ConstructionFamily::sierpinski;
        ref.dimension_oracle = std::log(3.0) / std::log(2.0);
        return ref;
    }
    if (spec.rfind("bernoulli:", 0) == 0) {
        ref.family = ConstructionFamily::bernoulli;
        const std::string arg = spec.substr(10);
        if (arg == "sqrt2")
            ref.bernoulli = BernoulliParams::sqrt2();
        else if (arg == "cubic")
            ref.bernoulli = BernoulliParams::cubic();
        else {
            try {
                ref.bernoulli = BernoulliParams::from_lambda(std::stod(arg));
            } catch (const std::logic_error&) {
                throw domain_error("bad bernoulli parameter: " + arg);
            }
        }
        if (ref.bernoulli.source != LambdaSource::explicit_value)
            ref.dimension_oracle =
                std::log(4.0 * ref.bernoulli.lambda) / std::log(2.0);
        return ref;
    }
    if (spec.rfind("comb:", 0) == 0) {
        ref.family = ConstructionFamily::comb;
        try {
            ref.comb.n = std::stoi(spec.substr(5));
        } catch (const std::logic_error&) {
            throw domain_error("bad comb parameter: " + spec.substr(5));
        }
        if (ref.comb.n < 2) throw domain_error("comb needs n >= 2 rows");
        ref.dimension_oracle = comb_oracle(ref.comb.n);
        return ref;
    }
    if (spec.rfind("kleinian-ce:", 0) == 0) {
        ref.family = ConstructionFamily::kleinian;
        const std::string rest = spec.substr(12);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw domain_error("kleinian-ce needs two parameters: kleinian-ce:<M>:<N>");
        try {
            ref.kleinian_m = std::stoi(rest.substr(0, colon));
            ref.kleinian_n = std::stoi(rest.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw domain_error("bad kleinian-ce parameters: " + rest);
        }
        if (ref.kleinian_m < 1 || ref.kleinian_n < 1)
            throw domain_error("kleinian-ce truncations must be >= 1");
        ref.dimension_oracle = 1.0;
        return ref;
    }
    throw domain_error("unknown construction: " + spec);
}

System build_system(const ConstructionRef& ref) {
    switch (ref.family) {
    case ConstructionFamily::sierpinski:
        return sierpinski();
    case ConstructionFamily::bernoulli:
        return bernoulli_system(ref.bernoulli);
    case ConstructionFamily::comb:
        return comb_system(ref.comb);
    case ConstructionFamily::kleinian:
        throw domain_error("kleinian-ce is a disk construction, not an IFS");
    }
    throw domain_error("unknown construction family");
}

} // namespace inhomog
