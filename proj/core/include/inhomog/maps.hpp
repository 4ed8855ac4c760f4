#pragma once

#include <variant>
#include <vector>

#include "inhomog/geometry.hpp"

namespace inhomog {

// Orientation data kept explicit so composed contraction ratios are exact
// products of the stored scale fields, not matrix norm estimates.

// p |-> scale * R(angle) * F^reflect * p + t, with F the reflection across
// the x-axis, acting on the unit square.
struct SimilarityMap {
    double scale = 0.5;
    double angle = 0.0;
    bool reflect = false;
    Vec2 t;
};

// p |-> (sx * p.x, sy * p.y) + t.
struct DiagonalAffineMap {
    double sx = 0.5;
    double sy = 0.5;
    Vec2 t;
};

using ContractionMap = std::variant<SimilarityMap, DiagonalAffineMap>;

Vec2 map_point(const ContractionMap& m, Vec2 p);

// Uniform contraction ratio: scale for similarities, max(sx, sy) for
// diagonal maps.
double lip(const ContractionMap& m);

// Per-axis contraction ratios (scale, scale) / (sx, sy).
Vec2 lip_xy(const ContractionMap& m);

// True when the linear part maps axis directions to axis directions, i.e.
// angle is a multiple of pi/2 (any reflect) or the map is diagonal.
bool axis_preserving(const ContractionMap& m, double tol = 1e-12);

// Throws domain_error unless the map is a strict contraction keeping the
// unit square inside itself (checked on the four corners).
void validate_map(const ContractionMap& m);

// outer o inner. Similarity pairs and diagonal pairs compose exactly; a
// rotation/reflection-free similarity mixes with diagonal maps by promotion,
// anything else throws unsupported_geometry_error.
ContractionMap compose(const ContractionMap& outer, const ContractionMap& inner);

ContractionMap identity_map();

// Image of a primitive. Rects require an axis-preserving map; callers with
// rotated similarities must pre-decompose rects into segments or points.
Primitive map_shape(const ContractionMap& m, const Primitive& p);

} // namespace inhomog
