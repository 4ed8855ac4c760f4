#include "report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "inhomog/errors.hpp"
#include "inhomog/orbital.hpp"
#include "inhomog/version.hpp"

namespace inhomog::tool {

namespace {

using json = nlohmann::ordered_json;

// Cover of the inhomogeneous attractor at scale delta: every orbital piece
// with contraction ratio >= delta, the condensation itself, and the stopped
// cylinders standing in for all smaller pieces.
std::vector<Primitive> inhomogeneous_cover(const System& sys, double delta,
                                           Budget budget) {
    std::vector<Primitive> cover = homogeneous_cover(sys.ifs, delta, budget);
    if (sys.condensation.empty()) return cover;

    struct Node {
        ContractionMap map;
        double lip;
    };
    std::vector<Node> level{{identity_map(), 1.0}};
    for (const auto& prim : sys.condensation.primitives) cover.push_back(prim);
    while (!level.empty()) {
        std::vector<Node> next;
        for (const auto& node : level) {
            for (std::size_t i = 0; i < sys.ifs.size(); ++i) {
                Node child{compose(node.map, sys.ifs.map(i)),
                           node.lip * lip(sys.ifs.map(i))};
                if (child.lip < delta) continue; // replaced by a cylinder
                for (const auto& prim : sys.condensation.primitives)
                    cover.push_back(map_shape(child.map, prim));
                if (cover.size() > budget.max_pieces)
                    throw budget_exceeded_error(budget.max_pieces, cover.size());
                next.push_back(child);
            }
        }
        level = std::move(next);
    }
    return cover;
}

DimResult finish(const std::string& name, std::optional<double> oracle,
                 std::vector<CoverCount> counts) {
    DimResult res;
    res.construction = name;
    res.counts = std::move(counts);
    res.fit = fit_dimension(res.counts);
    res.oracle = oracle;
    return res;
}

} // namespace

DimResult run_dim_system(const System& sys, const std::string& name,
                         const DimRequest& req) {
    std::vector<CoverCount> counts;
    for (int k = req.k_lo; k <= req.k_hi; ++k) {
        const double delta = std::exp2(-k);
        const auto cover = inhomogeneous_cover(sys, delta, Budget{req.budget});
        counts.push_back(mesh_count(cover, delta, MeshBudget{req.budget}));
    }
    return finish(name, std::nullopt, std::move(counts));
}

DimResult run_dim(const ConstructionRef& ref, const DimRequest& req) {
    if (req.k_lo >= req.k_hi) throw domain_error("scale range needs k_min < k_max");
    if (req.k_hi > 22) throw domain_error("scale exponent capped at 22");

    switch (ref.family) {
    case ConstructionFamily::sierpinski: {
        const auto sys = sierpinski();
        std::vector<CoverCount> counts;
        for (int k = req.k_lo; k <= req.k_hi; ++k) {
            const double delta = std::exp2(-k);
            counts.push_back(mesh_count(homogeneous_cover(sys.ifs, delta),
                                        delta, MeshBudget{req.budget}));
        }
        return finish(ref.name, ref.dimension_oracle, std::move(counts));
    }
    case ConstructionFamily::bernoulli: {
        std::vector<CoverCount> counts;
        for (int k = req.k_lo; k <= req.k_hi; ++k) {
            const double delta = std::exp2(-k);
            counts.push_back({delta,
                              bernoulli_strip_count(ref.bernoulli.lambda, delta),
                              CountMethod::exact_mesh});
        }
        return finish(ref.name, ref.dimension_oracle, std::move(counts));
    }
    case ConstructionFamily::comb: {
        const double ratio = std::log(2.0) / std::log(static_cast<double>(ref.comb.n));
        int m_lo = std::max(1, static_cast<int>(std::floor(req.k_lo * ratio)));
        int m_hi = std::max(m_lo + 2,
                            static_cast<int>(std::ceil(req.k_hi * ratio)));
        std::vector<CoverCount> counts;
        for (int m = m_lo; m <= m_hi; ++m) {
            const double delta = std::pow(static_cast<double>(ref.comb.n), -m);
            counts.push_back({delta, comb_mesh_count(ref.comb, delta,
                                                     MeshBudget{req.budget}),
                              CountMethod::exact_mesh});
        }
        return finish(ref.name, ref.dimension_oracle, std::move(counts));
    }
    case ConstructionFamily::kleinian: {
        const auto orbit = kleinian_ce(ref.kleinian_m, ref.kleinian_n);
        std::vector<double> xs;
        xs.reserve(orbit.points.points.size());
        for (const auto& p : orbit.points.points) xs.push_back(p.real());
        std::vector<double> deltas;
        for (int k = req.k_lo; k <= req.k_hi; ++k) deltas.push_back(std::exp2(-k));
        return finish(ref.name, ref.dimension_oracle,
                      kleinian_bin_counts(xs, deltas));
    }
    }
    throw domain_error("unknown construction family");
}

std::string dim_report_json(const DimResult& res, const DimRequest& req) {
    json j;
    j["construction"] = res.construction;
    j["version"] = version;
    j["k_range"] = json::array({req.k_lo, req.k_hi});
    j["budget"] = req.budget;
    j["scales"] = json::array();
    j["counts"] = json::array();
    for (const auto& c : res.counts) {
        j["scales"].push_back(c.delta);
        j["counts"].push_back(c.count);
    }
    j["method"] = "exact-mesh";
    j["slope"] = res.fit.slope;
    j["per_step"] = res.fit.per_step;
    j["r2"] = res.fit.r_squared;
    if (res.oracle) {
        j["oracle"] = *res.oracle;
        j["oracle_gap"] = std::abs(res.fit.slope - *res.oracle);
    } else {
        j["oracle"] = nullptr;
        j["oracle_gap"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string dim_report_csv(const DimResult& res) {
    std::ostringstream os;
    write_counts_csv(os, res.counts);
    return os.str();
}

} // namespace inhomog::tool
