// Command-line front end: build the paper-style constructions, run scale
// sweeps, verify the library's analytic contracts, and emit figures.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "inhomog/constructions.hpp"
#include "inhomog/errors.hpp"
#include "inhomog/io.hpp"
#include "inhomog/orbital.hpp"
#include "inhomog/version.hpp"
#include "render.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace {

using namespace inhomog;
using namespace inhomog::tool;

struct KRange {
    int lo = 4;
    int hi = 10;
};

KRange parse_k_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw domain_error("--k expects a range like 4..10");
    KRange r;
    try {
        r = {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
    } catch (const std::logic_error&) {
        throw domain_error("--k expects integers like 4..10");
    }
    if (r.lo >= r.hi) throw domain_error("--k needs a < b");
    if (r.hi > 22) throw domain_error("--k is capped at 22");
    return r;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        write_text_file(out_path, content);
}

int cmd_dim(const std::string& spec, const std::string& ifs_file,
            const std::string& k_text, std::uint64_t budget,
            const std::string& format, const std::string& out_path) {
    DimRequest req;
    if (!k_text.empty()) {
        const KRange r = parse_k_range(k_text);
        req.k_lo = r.lo;
        req.k_hi = r.hi;
    }
    req.budget = budget;

    DimResult res;
    if (!ifs_file.empty()) {
        res = run_dim_system(load_ifs_file(ifs_file), "file:" + ifs_file, req);
    } else {
        const auto ref = parse_construction(spec);
        if (ref.family == ConstructionFamily::kleinian && k_text.empty()) {
            req.k_lo = 3;
            req.k_hi = 6;
        }
        res = run_dim(ref, req);
    }
    emit(out_path, format == "csv" ? dim_report_csv(res) : dim_report_json(res, req));
    return 0;
}

int cmd_generate(const std::string& spec, int depth, std::uint64_t budget,
                 const std::string& out_path) {
    const auto ref = parse_construction(spec);
    std::ostringstream os;
    if (ref.family == ConstructionFamily::kleinian) {
        const auto orbit = kleinian_ce(ref.kleinian_m, ref.kleinian_n, Budget{budget});
        write_orbit_csv(os, orbit.points);
    } else {
        const auto sys = build_system(ref);
        const int d = depth >= 0 ? depth : 6;
        if (sys.condensation.empty()) {
            // empty condensation means an empty orbital set; dump the stopped
            // cylinder cover of the homogeneous attractor instead
            OrbitalApprox approx;
            approx.includes_root = false;
            const double delta = std::pow(sys.ifs.lip_max(), d);
            approx.truncation = "homogeneous";
            const auto stop = stopping_set(sys.ifs, delta, Budget{budget});
            for (std::size_t i = 0; i < stop.words.size(); ++i) {
                const auto m = compose(sys.ifs, stop.words[i]);
                approx.pieces.push_back(
                    {stop.words[i], map_shape(m, Primitive::rect({0, 0}, {1, 1})),
                     stop.lips[i]});
            }
            write_orbital_csv(os, approx);
        } else {
            write_orbital_csv(os, orbital_to_depth(sys.ifs, sys.condensation, d,
                                                   Budget{budget}));
        }
    }
    emit(out_path, os.str());
    return 0;
}

int cmd_poincare(const std::string& spec, const std::string& group_file,
                 double s, int depth, const std::string& out_path) {
    GroupPresentation g;
    std::string name;
    if (!group_file.empty()) {
        g = load_group_file(group_file);
        name = "file:" + group_file;
    } else {
        const auto ref = parse_construction(spec);
        if (ref.family != ConstructionFamily::kleinian)
            throw domain_error("poincare needs a kleinian-ce construction or --group file");
        g = cyclic_group(hyperbolic_translation(2.0));
        name = ref.name;
    }

    nlohmann::ordered_json j;
    j["group"] = name;
    j["version"] = version;
    j["depth"] = depth;
    j["s"] = s;
    j["series"] = poincare_series(g, s, depth);
    const auto fit = poincare_exponent(g, depth);
    j["exponent"] = fit.exponent;
    j["exponent_per_step"] = fit.per_step;
    j["radii"] = fit.radii;
    j["orbit_counts"] = fit.counts;
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inhomogeneous attractors: constructions, box-counting, verification"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    std::string spec, ifs_file, group_file, k_text, format = "json", out_path;
    std::uint64_t budget = 80'000'000;
    int depth = -1;
    double s_exponent = 1.0;
    int p_depth = 200;
    RenderOptions ropt;

    auto* dim = app.add_subcommand("dim", "estimate box dimension over a scale sweep");
    dim->add_option("construction", spec, "construction name");
    dim->add_option("--ifs", ifs_file, "IFS description file instead of a name");
    dim->add_option("--k", k_text, "dyadic scale exponents, e.g. 4..12");
    dim->add_option("--budget", budget, "cell/piece budget");
    dim->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    dim->add_option("-o,--output", out_path, "output path (stdout when absent)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    verify->add_option("suite", suite,
                       "stopping|moran|garsia|hyperbolic|structure|all");

    auto* render = app.add_subcommand("render", "draw a construction to PNG or SVG");
    render->add_option("construction", spec)->required();
    render->add_option("-o,--output", out_path, "output image path")->required();
    render->add_option("--width", ropt.width)->check(CLI::Range(1, 8192));
    render->add_option("--height", ropt.height)->check(CLI::Range(1, 8192));
    render->add_option("--depth", depth, "orbital truncation depth");

    auto* generate = app.add_subcommand("generate", "dump orbital pieces as CSV");
    generate->add_option("construction", spec)->required();
    generate->add_option("--depth", depth, "orbital truncation depth");
    generate->add_option("--budget", budget, "piece budget");
    generate->add_option("-o,--output", out_path, "output path (stdout when absent)");

    auto* poincare = app.add_subcommand("poincare", "Poincare series and exponent report");
    poincare->add_option("construction", spec, "kleinian-ce:<M>:<N>");
    poincare->add_option("--group", group_file, "group description file");
    poincare->add_option("--s", s_exponent, "series exponent");
    poincare->add_option("--depth", p_depth, "orbit truncation depth");
    poincare->add_option("-o,--output", out_path, "output path (stdout when absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dim->parsed()) {
            if (spec.empty() && ifs_file.empty())
                throw domain_error("dim needs a construction name or --ifs file");
            return cmd_dim(spec, ifs_file, k_text, budget, format, out_path);
        }
        if (verify->parsed()) return print_verify_table(run_verify_suite(suite));
        if (render->parsed()) {
            ropt.depth = depth;
            render_construction(parse_construction(spec), ropt, out_path);
            return 0;
        }
        if (generate->parsed()) return cmd_generate(spec, depth, budget, out_path);
        if (poincare->parsed()) {
            if (spec.empty() && group_file.empty())
                throw domain_error("poincare needs a construction or --group file");
            return cmd_poincare(spec, group_file, s_exponent, p_depth, out_path);
        }
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
    return 0;
}
