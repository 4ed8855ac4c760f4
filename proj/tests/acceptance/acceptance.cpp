// Acceptance suite: one numbered criterion per run (or all), one pass/fail
// line each, exit code = number of failed criteria. Tolerances are fixed
// here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "inhomog/boxdim.hpp"
#include "inhomog/constructions.hpp"
#include "inhomog/hyperbolic.hpp"
#include "inhomog/orbital.hpp"
#include "support/random_systems.hpp"

using namespace inhomog;
using clock_type = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

// The 50-system sample shared by criteria 2 and 3.
const std::vector<IfsSystem>& sample_systems() {
    static const std::vector<IfsSystem> sample =
        testing::random_sample(/*seed=*/20250808, /*count=*/50, /*max_maps=*/4);
    return sample;
}

// ---- criterion 1: Moran solver values and speed -----------------------

Outcome criterion_1() {
    struct Case {
        std::vector<double> ratios;
        double expected;
    };
    const Case cases[] = {
        {{0.5, 0.5}, 1.0},
        {{0.5, 0.5, 0.5}, std::log(3.0) / std::log(2.0)},
        {{0.5, 0.25, 0.25}, 1.0},
    };
    double worst_err = 0.0, worst_ms = 0.0;
    for (const auto& c : cases) {
        const auto t0 = clock_type::now();
        const double s = moran_dimension(c.ratios);
        const double ms = seconds_since(t0) * 1e3;
        worst_err = std::max(worst_err, std::abs(s - c.expected));
        worst_ms = std::max(worst_ms, ms);
    }
    const bool pass = worst_err <= 1e-10 && worst_ms < 1.0;
    return {pass, fmt("max |s - expected| = %.2e (tol 1e-10), max time %.3f ms (< 1 ms)",
                      worst_err, worst_ms)};
}

// ---- criterion 2: stopping-set cardinality bounds ----------------------

Outcome criterion_2() {
    int checked = 0, skipped = 0, violations = 0;
    for (const auto& ifs : sample_systems()) {
        const double s = similarity_dimension(ifs);
        for (int k = 1; k <= 12; ++k) {
            const double delta = std::exp2(-k);
            const double projected = std::pow(ifs.lip_min() * delta, -s);
            if (projected > 2e6) {
                ++skipped;
                continue;
            }
            const auto stop = stopping_set(ifs, delta, Budget{4'000'000});
            ++checked;
            const auto n = static_cast<double>(stop.words.size());
            const double lo = std::pow(delta, -s);
            const double hi = std::pow(ifs.lip_min() * delta, -s);
            // integer inequalities with only float-roundoff slack
            if (n < lo - 1e-6 * lo || n > hi + 1e-6 * hi) ++violations;
        }
    }
    const bool pass = violations == 0 && checked > 100;
    return {pass, fmt("%d (ifs, delta) pairs checked, %d beyond enumeration budget, "
                      "%d violations",
                      checked, skipped, violations)};
}

// ---- criterion 3: Moran tails ------------------------------------------

Outcome criterion_3() {
    int conv_fail = 0, div_fail = 0, checked = 0;
    double worst_tail = 0.0, worst_growth = 1e9;
    for (const auto& ifs : sample_systems()) {
        const double s = similarity_dimension(ifs);
        ++checked;

        // t = s + 0.05: relative tail beyond K=200 of the level sums
        const auto sums = moran_partial_sums(ifs, s + 0.05, 200);
        double q = 0.0;
        for (double r : ifs.ratios()) q += std::pow(r, s + 0.05);
        const double limit = q / (1.0 - q);
        const double tail_ratio = (limit - sums[199]) / limit; // = q^200
        worst_tail = std::max(worst_tail, tail_ratio);
        if (!(tail_ratio < 1e-6)) ++conv_fail;

        // t = s - 0.05: consecutive partial sums keep growing
        if (s > 0.05) {
            const auto grow = moran_partial_sums(ifs, s - 0.05, 201);
            const double ratio = grow[200] / grow[199];
            worst_growth = std::min(worst_growth, ratio);
            if (!(ratio > 1.0 + 1e-4)) ++div_fail;
        }
    }
    const bool pass = conv_fail == 0 && div_fail == 0;
    return {pass,
            fmt("%d systems; tail(K=200) worst %.3e (needs < 1e-6, %d fail); "
                "growth ratio worst %.6f (needs > 1+1e-4, %d fail)",
                checked, worst_tail, conv_fail, worst_growth, div_fail)};
}

// ---- criterion 4: sierpinski box dimension ------------------------------

Outcome criterion_4() {
    const auto t0 = clock_type::now();
    const auto sys = sierpinski();
    std::vector<CoverCount> counts;
    for (int k = 4; k <= 10; ++k) {
        const double delta = std::exp2(-k);
        counts.push_back(mesh_count(homogeneous_cover(sys.ifs, delta), delta));
    }
    const double slope = fit_dimension(counts).slope;
    const double oracle = std::log(3.0) / std::log(2.0);
    const double secs = seconds_since(t0);
    const bool pass = std::abs(slope - oracle) <= 0.05 && secs < 5.0;
    return {pass, fmt("slope %.5f vs %.5f (tol 0.05), %.2f s (< 5 s)", slope,
                      oracle, secs)};
}

// ---- criterion 5: comb theorem ------------------------------------------

Outcome criterion_5() {
    const auto t0 = clock_type::now();
    struct Sweep {
        int n, m_lo, m_hi;
        double oracle, tol;
    };
    const Sweep sweeps[] = {
        {2, 4, 12, 1.0, 0.05},
        {3, 3, 8, 2.0 - std::log(2.0) / std::log(3.0), 0.07},
        {10, 3, 5, 2.0 - std::log(2.0) / std::log(10.0), 0.07},
    };
    std::string detail;
    bool pass = true;
    for (const auto& sw : sweeps) {
        std::vector<CoverCount> counts;
        for (int m = sw.m_lo; m <= sw.m_hi; ++m) {
            const double delta = std::pow(static_cast<double>(sw.n), -m);
            counts.push_back({delta, comb_mesh_count({sw.n}, delta,
                                                     MeshBudget{200'000'000}),
                              CountMethod::exact_mesh});
        }
        const double slope = fit_dimension(counts).slope;
        const bool ok = std::abs(slope - sw.oracle) <= sw.tol;
        pass = pass && ok;
        detail += fmt("comb:%d slope %.5f vs %.5f (tol %.2f) %s; ", sw.n, slope,
                      sw.oracle, sw.tol, ok ? "ok" : "FAIL");
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 30.0;
    return {pass, detail + fmt("%.2f s (< 30 s)", secs)};
}

// ---- criterion 6: Bernoulli-Garsia theorem -------------------------------

Outcome criterion_6() {
    const auto t0 = clock_type::now();
    std::string detail;
    bool pass = true;
    const struct {
        const char* name;
        double lambda;
    } cases[] = {
        {"sqrt2", BernoulliParams::sqrt2().lambda},
        {"cubic", BernoulliParams::cubic().lambda},
    };
    for (const auto& c : cases) {
        std::vector<CoverCount> counts;
        for (int j = 6; j <= 14; ++j) {
            const double delta = std::exp2(-j);
            counts.push_back({delta, bernoulli_strip_count(c.lambda, delta),
                              CountMethod::exact_mesh});
        }
        const double slope = fit_dimension(counts).slope;
        const double oracle = std::log(4.0 * c.lambda) / std::log(2.0);
        const bool ok = std::abs(slope - oracle) <= 0.08;
        pass = pass && ok;
        detail += fmt("%s slope %.5f vs %.5f (tol 0.08) %s; ", c.name, slope,
                      oracle, ok ? "ok" : "FAIL");
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 60.0;
    return {pass, detail + fmt("%.2f s (< 60 s)", secs)};
}

// ---- criterion 7: Garsia lemma scan --------------------------------------

Outcome criterion_7() {
    const auto t0 = clock_type::now();
    const double l2 = BernoulliParams::sqrt2().lambda;
    double lo = 1e300, hi = 0.0;
    for (int n = 2; n <= 12; ++n) {
        const double v = bernoulli_min_separation(l2, n) * std::exp2(n);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double ratio = hi / lo;
    const bool garsia_ok = ratio <= 10.0;

    const double phi_inv = 2.0 / (1.0 + std::sqrt(5.0));
    const double p4 = bernoulli_min_separation(phi_inv, 4) * std::exp2(4);
    const double p12 = bernoulli_min_separation(phi_inv, 12) * std::exp2(12);
    const bool pisot_ok = p12 < 0.1 * p4;

    const double secs = seconds_since(t0);
    const bool pass = garsia_ok && pisot_ok && secs < 120.0;
    return {pass, fmt("sqrt2 scaled separations in [%.3f, %.3f], max/min %.2f "
                      "(<= 10) %s; pisot n=12 %.3e vs 10%% of n=4 %.3e %s; %.1f s (< 120 s)",
                      lo, hi, ratio, garsia_ok ? "ok" : "FAIL", p12, 0.1 * p4,
                      pisot_ok ? "ok" : "FAIL", secs)};
}

// ---- criterion 8: Lambda(k) bound ----------------------------------------

Outcome criterion_8() {
    const double l = BernoulliParams::sqrt2().lambda;
    double c_lo = 1e300, c_hi = 0.0;
    for (int j = 1; j <= 16; ++j) {
        const double delta = std::exp2(-j);
        for (int k = 0; k <= 18; ++k) {
            const double denom = std::min(std::exp2(k), 1.0 / delta);
            const double ratio =
                static_cast<double>(base_bin_count(l, k, delta)) / denom;
            c_lo = std::min(c_lo, ratio);
            c_hi = std::max(c_hi, ratio);
        }
    }
    const bool pass = c_hi / c_lo <= 16.0;
    return {pass, fmt("count / min{2^k, 1/delta} in [c1, c2] = [%.4f, %.4f], "
                      "c2/c1 = %.2f (<= 16)",
                      c_lo, c_hi, c_hi / c_lo)};
}

// ---- criterion 9: hyperbolic identities ----------------------------------

Outcome criterion_9() {
    std::mt19937_64 rng(31415);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_identity = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = 0.999 * std::sqrt(u(rng));
        const Complex z = std::polar(r, 2.0 * 3.14159265358979323846 * u(rng));
        for (double s : {0.7, 1.0, 1.6}) {
            const double a = std::exp(-s * dist_to_origin(z));
            const double b = std::pow((1.0 - std::abs(z)) / (1.0 + std::abs(z)), s);
            worst_identity = std::max(worst_identity, std::abs(a - b));
        }
    }
    const bool identity_ok = worst_identity <= 1e-12;

    const auto g = cyclic_group(hyperbolic_translation(2.0));
    double closed = 1.0;
    for (int m = 1; m <= 20; ++m) closed += 2.0 * std::exp2(-static_cast<double>(m));
    const double series_err = std::abs(poincare_series(g, 1.0, 20) - closed);
    const bool series_ok = series_err <= 1e-10;

    const double exponent = poincare_exponent(g, 200).exponent;
    const bool exponent_ok = exponent <= 0.05;

    const bool pass = identity_ok && series_ok && exponent_ok;
    return {pass, fmt("series-term identity worst %.2e (tol 1e-12) %s; series vs "
                      "closed form %.2e (tol 1e-10) %s; cyclic exponent %.4f (<= 0.05) %s",
                      worst_identity, identity_ok ? "ok" : "FAIL", series_err,
                      series_ok ? "ok" : "FAIL", exponent, exponent_ok ? "ok" : "FAIL")};
}

// ---- criterion 10: Kleinian counterexample --------------------------------

Outcome criterion_10() {
    // (a) route agreement at M = N = 50
    const auto orb50 = kleinian_ce(50, 50);
    double worst = 0.0;
    int worst_n = 0;
    int n_within = 0;
    for (int n = 1; n <= 50; ++n) {
        double w_n = 0.0;
        for (int m = -50; m <= 50; ++m)
            w_n = std::max(w_n, std::abs(orb50.closed(m, n) - orb50.group(m, n)));
        if (w_n > worst) {
            worst = w_n;
            worst_n = n;
        }
        if (w_n <= 1e-12 && n_within == n - 1) n_within = n;
    }
    const bool agree_ok = worst <= 1e-12;

    // (b) covered fraction monotone over growing truncations
    const double delta6 = std::exp2(-6);
    double prev = -1.0;
    bool monotone_ok = true;
    std::string fractions;
    for (int M : {50, 100, 200}) {
        const auto orb = kleinian_ce(M, M);
        std::vector<double> xs;
        xs.reserve(orb.points.points.size());
        for (const auto& p : orb.points.points) xs.push_back(p.real());
        const double f = covered_bin_fraction(xs, delta6);
        fractions += fmt("%.4f ", f);
        if (f < prev) monotone_ok = false;
        prev = f;
    }

    // (c) fitted slope at M = N = 400
    const auto orb400 = kleinian_ce(400, 400);
    std::vector<double> xs;
    xs.reserve(orb400.points.points.size());
    for (const auto& p : orb400.points.points) xs.push_back(p.real());
    const std::vector<double> deltas{std::exp2(-3), std::exp2(-4), std::exp2(-5),
                                     std::exp2(-6)};
    const double slope = fit_dimension(kleinian_bin_counts(xs, deltas)).slope;
    const bool slope_ok = slope >= 0.85;

    const bool pass = agree_ok && monotone_ok && slope_ok;
    return {pass,
            fmt("route agreement worst %.3e at n=%d (tol 1e-12, holds through n=%d) %s; "
                "covered fractions [ %s] monotone %s; slope %.4f (>= 0.85) %s",
                worst, worst_n, n_within, agree_ok ? "ok" : "FAIL",
                fractions.c_str(), monotone_ok ? "ok" : "FAIL", slope,
                slope_ok ? "ok" : "FAIL")};
}

// ---- criterion 11: sandwich for sierpinski with a point ------------------

Outcome criterion_11() {
    const auto sys = sierpinski();
    const CondensationSet c{{Primitive::point({0.3, 0.2})}};

    const auto bounds = box_dimension_bounds(sys.ifs, 0.0, 4, 10);

    // fitted dimension of the inhomogeneous attractor: orbital pieces still
    // above scale plus stopped cylinders
    std::vector<CoverCount> counts;
    for (int k = 4; k <= 10; ++k) {
        const double delta = std::exp2(-k);
        auto cover = homogeneous_cover(sys.ifs, delta);
        const int depth = k + 1;
        for (const auto& piece :
             orbital_to_depth(sys.ifs, c, depth).pieces)
            if (piece.lip >= delta) cover.push_back(piece.shape);
        counts.push_back(mesh_count(cover, delta));
    }
    const double slope = fit_dimension(counts).slope;
    const double lo = std::max(bounds.homog_estimate, 0.0) - 0.05;
    const double hi = std::max(bounds.similarity_dim, 0.0) + 0.05;
    const bool pass = slope >= lo && slope <= hi;
    return {pass, fmt("fitted dim %.5f within [%.5f, %.5f]", slope, lo, hi)};
}

// ---- criterion 12: deterministic reports ----------------------------------

Outcome criterion_12() {
    const char* cli = std::getenv("INHOMOG_CLI");
    if (!cli || !*cli)
        return {false, "INHOMOG_CLI not set (run through ctest or export the CLI path)"};
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("inhomog_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path a = dir / "a.json", b = dir / "b.json";
    const std::string base = std::string(cli) + " dim comb:3 --k 4..10 -o ";
    const int rc1 = std::system((base + a.string() + " >/dev/null 2>&1").c_str());
    const int rc2 = std::system((base + b.string() + " >/dev/null 2>&1").c_str());
    std::ifstream ia(a, std::ios::binary), ib(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << ia.rdbuf();
    sb << ib.rdbuf();
    std::error_code ec;
    fs::remove_all(dir, ec);
    const bool ran = WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0;
    const bool identical = ran && !sa.str().empty() && sa.str() == sb.str();
    return {identical, fmt("two runs of `dim comb:3`: %s, %zu bytes",
                           identical ? "byte-identical" : "MISMATCH", sa.str().size())};
}

using CriterionFn = std::function<Outcome()>;

const struct {
    int number;
    const char* title;
    CriterionFn fn;
} kCriteria[] = {
    {1, "Moran solver closed forms under 1 ms", criterion_1},
    {2, "stopping-set cardinality bounds on random systems", criterion_2},
    {3, "Moran tail convergence/divergence split", criterion_3},
    {4, "sierpinski mesh slope", criterion_4},
    {5, "comb dimension formula", criterion_5},
    {6, "Bernoulli strip-count dimension formula", criterion_6},
    {7, "Garsia separation scan and Pisot collapse", criterion_7},
    {8, "base-point bin-count bound", criterion_8},
    {9, "hyperbolic identities", criterion_9},
    {10, "Kleinian dense orbit", criterion_10},
    {11, "dimension sandwich for a point condensation", criterion_11},
    {12, "deterministic dim reports", criterion_12},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.number != only) continue;
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.pass) ++failures;
        std::printf("criterion %2d [%s] %s: %s\n", c.number,
                    out.pass ? "PASS" : "FAIL", c.title, out.detail.c_str());
    }
    return failures;
}
