#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inhomog/boxdim.hpp"
#include "inhomog/constructions.hpp"

namespace inhomog::tool {

struct DimRequest {
    int k_lo = 4;
    int k_hi = 10;
    std::uint64_t budget = 80'000'000;
};

struct DimResult {
    std::string construction;
    std::vector<CoverCount> counts;
    DimensionFit fit;
    std::optional<double> oracle;
};

// Scale sweep + fit for a named construction. Dyadic exponents map onto the
// construction's natural scales (n^-m for combs).
DimResult run_dim(const ConstructionRef& ref, const DimRequest& req);

// Same estimator for a user-supplied system: stopped cylinders for the
// homogeneous part plus every orbital piece that is still larger than the
// scale. dim_c, when known, tightens nothing but is echoed in the report.
DimResult run_dim_system(const System& sys, const std::string& name,
                         const DimRequest& req);

// Deterministic JSON report (no timestamps; key order fixed).
std::string dim_report_json(const DimResult& res, const DimRequest& req);
std::string dim_report_csv(const DimResult& res);

} // namespace inhomog::tool
