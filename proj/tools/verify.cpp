#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>

#include "inhomog/boxdim.hpp"
#include "inhomog/constructions.hpp"
#include "inhomog/errors.hpp"
#include "inhomog/hyperbolic.hpp"
#include "inhomog/orbital.hpp"

namespace inhomog::tool {

namespace {

char detail_buf[160];

void add(std::vector<CheckRow>& rows, const std::string& suite,
         const std::string& name, bool ok, const std::string& detail,
         bool expected_fail = false) {
    rows.push_back({suite, name, expected_fail ? !ok : ok, expected_fail, detail});
}

IfsSystem random_similarity_ifs(std::mt19937_64& rng, int n_maps) {
    std::uniform_real_distribution<double> scale(0.2, 0.8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ContractionMap> maps;
    for (int i = 0; i < n_maps; ++i) {
        const double s = scale(rng);
        maps.push_back(SimilarityMap{
            s, 0.0, false, {unit(rng) * (1.0 - s), unit(rng) * (1.0 - s)}});
    }
    return IfsSystem{std::move(maps)};
}

void suite_stopping(std::vector<CheckRow>& rows) {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> n_dist(1, 4);
    int checked = 0, skipped = 0;
    bool sum_ok = true, bounds_ok = true, prefix_ok = true, monotone_ok = true;
    for (int trial = 0; trial < 30; ++trial) {
        const auto ifs = random_similarity_ifs(rng, n_dist(rng));
        const double s = similarity_dimension(ifs);
        std::size_t prev = 0;
        for (int k = 1; k <= 12; ++k) {
            const double delta = std::exp2(-k);
            if (std::pow(ifs.lip_min() * delta, -s) > 2e5) {
                ++skipped;
                break;
            }
            const auto stop = stopping_set(ifs, delta);
            ++checked;
            double moran_sum = 0.0;
            for (double l : stop.lips) moran_sum += std::pow(l, s);
            if (std::abs(moran_sum - 1.0) > 1e-9) sum_ok = false;
            const double n = static_cast<double>(stop.words.size());
            if (n + 0.5 < std::pow(delta, -s)) bounds_ok = false;
            if (n - 0.5 > std::pow(ifs.lip_min() * delta, -s)) bounds_ok = false;
            if (stop.words.size() < prev) monotone_ok = false;
            prev = stop.words.size();
            if (stop.words.size() <= 200) {
                for (std::size_t i = 0; i < stop.words.size() && prefix_ok; ++i)
                    for (std::size_t j = 0; j < stop.words.size(); ++j)
                        if (i != j && stop.words[i].is_prefix_of(stop.words[j]))
                            prefix_ok = false;
            }
        }
    }
    std::snprintf(detail_buf, sizeof detail_buf, "%d scale checks, %d over budget",
                  checked, skipped);
    add(rows, "stopping", "moran sum over stoppings equals 1", sum_ok, detail_buf);
    add(rows, "stopping", "cardinality bounds", bounds_ok, detail_buf);
    add(rows, "stopping", "prefix-freeness", prefix_ok, "pairwise on small sets");
    add(rows, "stopping", "monotone growth in 1/delta", monotone_ok, "");
}

void suite_moran(std::vector<CheckRow>& rows) {
    const bool closed_forms =
        std::abs(moran_dimension(std::vector{0.5, 0.5}) - 1.0) < 1e-12 &&
        std::abs(moran_dimension(std::vector{0.5, 0.5, 0.5}) -
                 std::log(3.0) / std::log(2.0)) < 1e-12 &&
        std::abs(moran_dimension(std::vector{0.5, 0.25, 0.25}) - 1.0) < 1e-12;
    add(rows, "moran", "solver closed forms", closed_forms, "{1/2,1/2}, {1/2 x3}, {1/2,1/4,1/4}");

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    bool residual_ok = true, tails_ok = true;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<ContractionMap> maps;
        const int n = 2 + trial % 3;
        for (int i = 0; i < n; ++i) {
            const double sc = u(rng);
            maps.push_back(SimilarityMap{sc, 0.0, false, {0.0, 0.0}});
        }
        const IfsSystem ifs{std::move(maps)};
        const double s = similarity_dimension(ifs);
        double sum = 0.0;
        for (double r : ifs.ratios()) sum += std::pow(r, s);
        if (std::abs(sum - 1.0) > 1e-12) residual_ok = false;

        // above the similarity dimension the level sums are summable,
        // below it they grow geometrically
        double q_hi = 0.0, q_lo = 0.0;
        for (double r : ifs.ratios()) {
            q_hi += std::pow(r, s + 0.05);
            q_lo += std::pow(r, std::max(s - 0.05, 0.0));
        }
        if (!(q_hi < 1.0)) tails_ok = false;
        if (s > 0.05 && !(q_lo > 1.0)) tails_ok = false;
        const auto sums = moran_partial_sums(ifs, s + 0.05, 400);
        if (!(sums[399] - sums[199] < sums[399])) tails_ok = false;
    }
    add(rows, "moran", "solver residual below 1e-12", residual_ok, "25 random ratio sets");
    add(rows, "moran", "level sums summable above s, divergent below", tails_ok, "");
}

void suite_garsia(std::vector<CheckRow>& rows) {
    const auto ratio_window = [](double lambda) {
        double lo = 1e300, hi = 0.0;
        for (int n = 2; n <= 12; ++n) {
            const double v = bernoulli_min_separation(lambda, n) * std::exp2(n);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    };
    const double sqrt2_ratio = ratio_window(BernoulliParams::sqrt2().lambda);
    std::snprintf(detail_buf, sizeof detail_buf, "max/min = %.2f", sqrt2_ratio);
    add(rows, "garsia", "sqrt2 separation bounded below", sqrt2_ratio <= 10.0, detail_buf);

    const double cubic_ratio = ratio_window(BernoulliParams::cubic().lambda);
    std::snprintf(detail_buf, sizeof detail_buf, "max/min = %.2f", cubic_ratio);
    add(rows, "garsia", "cubic separation bounded below", cubic_ratio <= 10.0, detail_buf);

    const double phi_inv = 2.0 / (1.0 + std::sqrt(5.0));
    const double pisot_ratio = ratio_window(phi_inv);
    std::snprintf(detail_buf, sizeof detail_buf, "max/min = %.2e (collapse predicted)",
                  pisot_ratio);
    add(rows, "garsia", "pisot separation bounded below", pisot_ratio <= 10.0,
        detail_buf, /*expected_fail=*/true);
}

void suite_hyperbolic(std::vector<CheckRow>& rows) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto h = hyperbolic_translation(2.0);
    const auto rot = disk_rotation(0.9);
    const auto g = compose(rot, compose(h, inverse(rot)));

    bool axioms_ok = is_identity(compose(g, inverse(g)), 1e-12);
    std::uniform_int_distribution<int> coin(0, 1);
    MoebiusMap acc{};
    for (int i = 0; i < 12; ++i) acc = compose(acc, coin(rng) ? g : inverse(g));
    if (std::abs(std::norm(acc.a) - std::norm(acc.b) - 1.0) > 1e-10) axioms_ok = false;
    add(rows, "hyperbolic", "group axioms and normalization", axioms_ok, "bounded words");

    bool identity_ok = true;
    for (int i = 0; i < 100; ++i) {
        const double r = 0.999 * std::sqrt(u(rng));
        const Complex z = std::polar(r, 2.0 * 3.14159265358979323846 * u(rng));
        const double via_dist = std::exp(-1.3 * dist_to_origin(z));
        const double via_ratio = std::pow((1.0 - std::abs(z)) / (1.0 + std::abs(z)), 1.3);
        if (std::abs(via_dist - via_ratio) > 1e-12) identity_ok = false;
    }
    add(rows, "hyperbolic", "series term identity", identity_ok, "100 sampled points");

    const auto cyc = cyclic_group(h);
    double expected = 1.0;
    for (int m = 1; m <= 20; ++m) expected += 2.0 * std::exp2(-static_cast<double>(m));
    const bool series_ok =
        std::abs(poincare_series(cyc, 1.0, 20) - expected) < 1e-10;
    add(rows, "hyperbolic", "cyclic series closed form", series_ok, "");

    const auto fit = poincare_exponent(cyc, 200);
    std::snprintf(detail_buf, sizeof detail_buf, "estimate %.4f", fit.exponent);
    add(rows, "hyperbolic", "cyclic exponent near zero", fit.exponent <= 0.05, detail_buf);

    const auto orb = kleinian_ce(50, 8);
    double worst = 0.0;
    for (int m = -50; m <= 50; ++m)
        for (int n = 1; n <= 8; ++n)
            worst = std::max(worst, std::abs(orb.closed(m, n) - orb.group(m, n)));
    std::snprintf(detail_buf, sizeof detail_buf, "worst gap %.2e", worst);
    add(rows, "hyperbolic", "closed-form orbit identity", worst <= 1e-12, detail_buf);
}

void suite_structure(std::vector<CheckRow>& rows) {
    IfsSystem single{{SimilarityMap{0.5, 0.0, false, {0.25, 0.25}}}};
    const CondensationSet pt{{Primitive::point({0.1, 0.1})}};
    const auto g4 = structure_gap(single, pt, 4);
    const auto g5 = structure_gap(single, pt, 5);
    const double ratio = g5.gap / g4.gap;
    std::snprintf(detail_buf, sizeof detail_buf, "gap ratio %.3f", ratio);
    add(rows, "structure", "single-map gap halves per level", ratio > 0.3 && ratio < 0.7,
        detail_buf);

    const auto sys = sierpinski();
    const CondensationSet leaf{{Primitive::segment({0.4, 0.45}, {0.6, 0.55})}};
    const auto g6 = structure_gap(sys.ifs, leaf, 6);
    std::snprintf(detail_buf, sizeof detail_buf, "gap %.2e, bound constant %.2f",
                  g6.gap, g6.bound_constant);
    add(rows, "structure", "sierpinski gap under cylinder diameter",
        g6.gap <= std::exp2(-6) * std::sqrt(2.0), detail_buf);

    const auto ge = structure_gap(sys.ifs, CondensationSet{}, 5);
    add(rows, "structure", "empty condensation degenerates to covers",
        ge.gap <= std::exp2(-5) * std::sqrt(2.0), "");
}

} // namespace

std::vector<CheckRow> run_verify_suite(const std::string& suite) {
    std::vector<CheckRow> rows;
    bool known = false;
    if (suite == "stopping" || suite == "all") suite_stopping(rows), known = true;
    if (suite == "moran" || suite == "all") suite_moran(rows), known = true;
    if (suite == "garsia" || suite == "all") suite_garsia(rows), known = true;
    if (suite == "hyperbolic" || suite == "all") suite_hyperbolic(rows), known = true;
    if (suite == "structure" || suite == "all") suite_structure(rows), known = true;
    if (!known)
        throw domain_error("unknown suite (use stopping|moran|garsia|hyperbolic|structure|all)");
    return rows;
}

int print_verify_table(const std::vector<CheckRow>& rows) {
    int failures = 0;
    for (const auto& row : rows) {
        const char* status = row.passed
                                 ? (row.expected_fail ? "XFAIL" : "PASS ")
                                 : "FAIL ";
        if (!row.passed) ++failures;
        std::printf("[%s] %-10s %-45s %s\n", status, row.suite.c_str(),
                    row.name.c_str(), row.detail.c_str());
    }
    std::printf("%zu checks, %d failures\n", rows.size(), failures);
    return failures == 0 ? 0 : 1;
}

} // namespace inhomog::tool
