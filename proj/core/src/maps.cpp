#include "inhomog/maps.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "inhomog/errors.hpp"

namespace inhomog {

namespace {

Vec2 rotate(Vec2 p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Vec2 linear_part(const SimilarityMap& m, Vec2 p) {
    if (m.reflect) p.y = -p.y;
    return m.scale * rotate(p, m.angle);
}

// Smallest distance of angle to a multiple of pi/2.
double quarter_turn_defect(double angle) {
    const double q = std::numbers::pi / 2.0;
    double r = std::remainder(angle, q);
    return std::abs(r);
}

bool is_zero_rotation(const SimilarityMap& m, double tol = 1e-12) {
    return !m.reflect && std::abs(std::remainder(m.angle, 2.0 * std::numbers::pi)) <= tol;
}

DiagonalAffineMap as_diagonal(const SimilarityMap& m) {
    return DiagonalAffineMap{m.scale, m.scale, m.t};
}

} // namespace

Vec2 map_point(const ContractionMap& m, Vec2 p) {
    if (const auto* s = std::get_if<SimilarityMap>(&m))
        return linear_part(*s, p) + s->t;
    const auto& d = std::get<DiagonalAffineMap>(m);
    return {d.sx * p.x + d.t.x, d.sy * p.y + d.t.y};
}

double lip(const ContractionMap& m) {
    if (const auto* s = std::get_if<SimilarityMap>(&m)) return s->scale;
    const auto& d = std::get<DiagonalAffineMap>(m);
    return std::max(d.sx, d.sy);
}

Vec2 lip_xy(const ContractionMap& m) {
    if (const auto* s = std::get_if<SimilarityMap>(&m)) return {s->scale, s->scale};
    const auto& d = std::get<DiagonalAffineMap>(m);
    return {d.sx, d.sy};
}

bool axis_preserving(const ContractionMap& m, double tol) {
    if (const auto* s = std::get_if<SimilarityMap>(&m))
        return quarter_turn_defect(s->angle) <= tol;
    return true;
}

void validate_map(const ContractionMap& m) {
    if (const auto* s = std::get_if<SimilarityMap>(&m)) {
        if (!(s->scale > 0.0 && s->scale < 1.0))
            throw domain_error("similarity scale must lie in (0,1)");
    } else {
        const auto& d = std::get<DiagonalAffineMap>(m);
        if (!(d.sx > 0.0 && d.sx < 1.0 && d.sy > 0.0 && d.sy < 1.0))
            throw domain_error("diagonal scales must lie in (0,1)");
    }
    const std::array<Vec2, 4> corners{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}};
    for (Vec2 c : corners) {
        if (!in_unit_square(map_point(m, c)))
            throw domain_error("map does not keep the unit square inside itself");
    }
}

ContractionMap compose(const ContractionMap& outer, const ContractionMap& inner) {
    // similarity o similarity
    if (const auto* so = std::get_if<SimilarityMap>(&outer)) {
        if (const auto* si = std::get_if<SimilarityMap>(&inner)) {
            SimilarityMap r;
            r.scale = so->scale * si->scale;
            // F R(t) = R(-t) F moves the inner rotation past the outer reflection.
            r.angle = so->angle + (so->reflect ? -si->angle : si->angle);
            r.reflect = so->reflect != si->reflect;
            r.t = linear_part(*so, si->t) + so->t;
            return r;
        }
        if (is_zero_rotation(*so))
            return compose(ContractionMap{as_diagonal(*so)}, inner);
        throw unsupported_geometry_error(
            "cannot compose a rotated/reflected similarity with a diagonal map");
    }
    const auto& dout = std::get<DiagonalAffineMap>(outer);
    if (const auto* si = std::get_if<SimilarityMap>(&inner)) {
        if (is_zero_rotation(*si))
            return compose(outer, ContractionMap{as_diagonal(*si)});
        throw unsupported_geometry_error(
            "cannot compose a diagonal map with a rotated/reflected similarity");
    }
    const auto& din = std::get<DiagonalAffineMap>(inner);
    DiagonalAffineMap r;
    r.sx = dout.sx * din.sx;
    r.sy = dout.sy * din.sy;
    r.t = {dout.sx * din.t.x + dout.t.x, dout.sy * din.t.y + dout.t.y};
    return r;
}

ContractionMap identity_map() {
    // Only used as a fold seed; scale 1 is outside the validated range on purpose.
    return SimilarityMap{1.0, 0.0, false, {0.0, 0.0}};
}

Primitive map_shape(const ContractionMap& m, const Primitive& p) {
    switch (p.kind) {
    case PrimitiveKind::point:
        return Primitive::point(map_point(m, p.a));
    case PrimitiveKind::segment:
        return Primitive::segment(map_point(m, p.a), map_point(m, p.b));
    case PrimitiveKind::rect: {
        if (!axis_preserving(m))
            throw unsupported_geometry_error(
                "rect image under a non-axis-preserving similarity; decompose the "
                "rect into segments or points first");
        const Vec2 c1 = map_point(m, p.a);
        const Vec2 c2 = map_point(m, p.b);
        return Primitive::rect(c1, c2);
    }
    }
    throw domain_error("unknown primitive kind");
}

} // namespace inhomog
