#include "inhomog/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>

#include "inhomog/errors.hpp"

namespace inhomog {

namespace {

constexpr double dedup_tol = 1e-12;

MoebiusMap renormalized(Complex a, Complex b) {
    const double det = std::norm(a) - std::norm(b);
    if (!(det > 0.0))
        throw domain_error("coefficients do not define a disk automorphism");
    const double s = 1.0 / std::sqrt(det);
    return MoebiusMap{s * a, s * b};
}

// Deduplicate points at dedup_tol, keeping one representative per cluster
// (the lexicographically first). Sorting brings tolerance-close points next
// to each other, so a bounded forward scan suffices.
void dedup_points(OrbitPointSet& set) {
    std::vector<std::size_t> order(set.points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const Complex a = set.points[i], b = set.points[j];
        if (a.real() != b.real()) return a.real() < b.real();
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return i < j;
    });
    std::vector<char> dup(set.points.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (dup[order[i]]) continue;
        const Complex p = set.points[order[i]];
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const Complex q = set.points[order[j]];
            if (q.real() - p.real() > dedup_tol) break;
            if (std::abs(q - p) <= dedup_tol) dup[order[j]] = 1;
        }
    }
    OrbitPointSet out;
    out.points.reserve(set.points.size());
    for (std::size_t i : order) {
        if (dup[i]) continue;
        out.points.push_back(set.points[i]);
        out.labels.push_back(set.labels[i]);
    }
    set = std::move(out);
}

// Elements of the truncated group in a deterministic order, with labels.
// cyclic: powers m = -depth..depth. free: reduced words by length, letters
// g1, g1^-1, g2, g2^-1, ... labelled like "1.-2.1".
void enumerate_elements(const GroupPresentation& g, int depth, Budget budget,
                        const std::function<void(const MoebiusMap&, const std::string&)>& visit) {
    if (depth < 0) throw domain_error("group enumeration depth must be >= 0");
    if (g.generators.empty()) throw domain_error("group needs a generator");

    if (g.kind == GroupKind::cyclic) {
        if (g.generators.size() != 1)
            throw domain_error("a cyclic presentation has exactly one generator");
        const std::uint64_t total = 2ull * static_cast<std::uint64_t>(depth) + 1;
        if (total > budget.max_pieces)
            throw budget_exceeded_error(budget.max_pieces, total);
        const MoebiusMap h = g.generators[0];
        const MoebiusMap hinv = inverse(h);
        MoebiusMap acc; // identity
        for (int m = 0; m >= -depth; --m) {
            visit(acc, std::to_string(m));
            acc = compose(hinv, acc);
        }
        acc = h;
        for (int m = 1; m <= depth; ++m) {
            visit(acc, std::to_string(m));
            acc = compose(h, acc);
        }
        return;
    }

    // Letters: 2*i -> generator i, 2*i+1 -> its inverse.
    std::vector<MoebiusMap> letters;
    for (const auto& gen : g.generators) {
        letters.push_back(gen);
        letters.push_back(inverse(gen));
    }
    struct Node {
        MoebiusMap map;
        std::string label;
        int last_letter;
    };
    std::vector<Node> level{{MoebiusMap{}, "", -1}};
    visit(level[0].map, "e");
    std::uint64_t visited = 1;
    for (int len = 1; len <= depth; ++len) {
        std::vector<Node> next;
        for (const auto& node : level) {
            for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
                if (node.last_letter >= 0 && (node.last_letter ^ 1) == l)
                    continue; // cancellation
                Node child;
                child.map = compose(node.map, letters[l]);
                const int gen_idx = l / 2 + 1;
                const std::string letter =
                    (l % 2 ? "-" : "") + std::to_string(gen_idx);
                child.label = node.label.empty() ? letter : node.label + "." + letter;
                child.last_letter = l;
                if (++visited > budget.max_pieces)
                    throw budget_exceeded_error(budget.max_pieces, visited);
                visit(child.map, child.label);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
}

} // namespace

MoebiusMap moebius(Complex a, Complex b) {
    MoebiusMap m = renormalized(a, b);
    if (!(std::abs(m.b) < std::abs(m.a)))
        throw domain_error("map does not send the open disk into itself");
    return m;
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
    // Plain SU(1,1) matrix product. The determinant drifts by rounding only,
    // and a common scale of (a, b) leaves the action unchanged, so no
    // renormalization: recomputing |a|^2 - |b|^2 cancels catastrophically for
    // high powers of hyperbolic elements.
    return MoebiusMap{f.a * g.a + f.b * std::conj(g.b),
                      f.a * g.b + f.b * std::conj(g.a)};
}

MoebiusMap inverse(const MoebiusMap& m) { return MoebiusMap{std::conj(m.a), -m.b}; }

bool is_identity(const MoebiusMap& m, double tol) {
    return std::abs(m.b) <= tol && std::abs(Complex{std::abs(m.a), 0.0} - 1.0) <= tol;
}

double dist_to_origin(Complex z) {
    const double r = std::abs(z);
    if (!(r < 1.0)) throw domain_error("point must lie in the open unit disk");
    return std::log((1.0 + r) / (1.0 - r));
}

MoebiusMap hyperbolic_translation(double alpha) {
    if (!(alpha > 1.0)) throw domain_error("multiplier must exceed 1");
    const double c = 2.0 * std::sqrt(alpha);
    return MoebiusMap{Complex{(alpha + 1.0) / c, 0.0}, Complex{(alpha - 1.0) / c, 0.0}};
}

MoebiusMap disk_rotation(double theta) {
    return MoebiusMap{std::polar(1.0, theta / 2.0), Complex{0.0, 0.0}};
}

GroupPresentation cyclic_group(const MoebiusMap& g) {
    if (is_identity(g)) throw domain_error("generator must not be the identity");
    return GroupPresentation{GroupKind::cyclic, {g}};
}

GroupPresentation free_group(std::vector<MoebiusMap> gens) {
    for (const auto& g : gens)
        if (is_identity(g)) throw domain_error("generators must not be the identity");
    if (gens.empty()) throw domain_error("group needs a generator");
    return GroupPresentation{GroupKind::free_words, std::move(gens)};
}

OrbitPointSet orbit_points(const GroupPresentation& g, int depth, Budget budget) {
    OrbitPointSet out;
    enumerate_elements(g, depth, budget,
                       [&](const MoebiusMap& el, const std::string& label) {
                           out.points.push_back(el(Complex{0.0, 0.0}));
                           out.labels.push_back(label);
                       });
    dedup_points(out);
    return out;
}

double poincare_series(const GroupPresentation& g, double s, int depth,
                       Budget budget) {
    if (s < 0.0) throw domain_error("series exponent must be >= 0");
    const OrbitPointSet orbit = orbit_points(g, depth, budget);
    double acc = 0.0;
    for (Complex p : orbit.points) {
        const double r = std::abs(p);
        acc += std::pow((1.0 - r) / (1.0 + r), s);
    }
    return acc;
}

ExponentFit poincare_exponent(const GroupPresentation& g, int depth, Budget budget) {
    // d(0, g(0)) = 2 log(|a| + |b|) for unit-determinant coefficients; this
    // form survives orbit points that round onto the boundary circle.
    std::vector<double> dists;
    enumerate_elements(g, depth, budget,
                       [&](const MoebiusMap& el, const std::string&) {
                           dists.push_back(2.0 * std::log(std::abs(el.a) +
                                                          std::abs(el.b)));
                       });
    std::sort(dists.begin(), dists.end());

    const double r_max = dists.back();
    double r_first = 0.0;
    for (double d : dists)
        if (d > 1e-9) {
            r_first = d;
            break;
        }
    if (r_first == 0.0 || r_max < 8.0 * r_first || dists.size() < 16)
        throw insufficient_data_error(
            "orbit radii must span at least three doublings");

    ExponentFit fit;
    const int levels = 8;
    for (int j = 1; j <= levels; ++j) {
        const double r = r_max * static_cast<double>(j) / levels;
        const auto it = std::upper_bound(dists.begin(), dists.end(), r);
        fit.radii.push_back(r);
        fit.counts.push_back(static_cast<std::uint64_t>(it - dists.begin()));
    }
    std::vector<double> x = fit.radii, y;
    for (std::uint64_t c : fit.counts) y.push_back(std::log(static_cast<double>(c)));
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.exponent = sxy / sxx;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        fit.per_step.push_back((y[i + 1] - y[i]) / (x[i + 1] - x[i]));
    return fit;
}

OrbitPointSet orbit_of_set(const GroupPresentation& g, std::span<const Complex> c,
                           int depth, Budget budget) {
    for (Complex z : c)
        if (!(std::abs(z) < 1.0))
            throw domain_error("condensation points must lie in the open disk");
    const std::uint64_t per_element = std::max<std::size_t>(c.size(), 1);
    Budget element_budget{budget.max_pieces / per_element};

    OrbitPointSet out;
    enumerate_elements(g, depth, element_budget,
                       [&](const MoebiusMap& el, const std::string& label) {
                           for (std::size_t n = 0; n < c.size(); ++n) {
                               out.points.push_back(el(c[n]));
                               out.labels.push_back(label + ":" + std::to_string(n + 1));
                           }
                       });
    dedup_points(out);
    return out;
}

void write_orbit_csv(std::ostream& os, const OrbitPointSet& orbit) {
    os << "re,im,label\n";
    char buf[96];
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", orbit.points[i].real(),
                      orbit.points[i].imag());
        os << buf << orbit.labels[i] << '\n';
    }
}

} // namespace inhomog
