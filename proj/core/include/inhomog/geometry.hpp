#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace inhomog {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
    friend Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend bool operator==(Vec2 u, Vec2 v) { return u.x == v.x && u.y == v.y; }
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 u, Vec2 v) { return norm(u - v); }

enum class PrimitiveKind { point, segment, rect };

// A geometric primitive inside the ambient unit square X = [0,1]^2.
// point: a (b mirrors a); segment: endpoints a,b; rect: corners a <= b
// componentwise. Degenerate shapes normalize downward on construction:
// zero-length segments become points, flat rects become segments/points.
struct Primitive {
    PrimitiveKind kind = PrimitiveKind::point;
    Vec2 a;
    Vec2 b;

    static Primitive point(Vec2 p) { return {PrimitiveKind::point, p, p}; }
    static Primitive segment(Vec2 p, Vec2 q);
    static Primitive rect(Vec2 lo, Vec2 hi);

    bool axis_aligned() const {
        return kind != PrimitiveKind::segment || a.x == b.x || a.y == b.y;
    }
    double diameter() const { return kind == PrimitiveKind::point ? 0.0 : dist(a, b); }
};

// Containment in X with a small slack for accumulated rounding.
bool in_unit_square(Vec2 p, double tol = 1e-9);
bool in_unit_square(const Primitive& p, double tol = 1e-9);

// Append points covering the primitive at spacing <= pitch (endpoints /
// corners always included).
void sample_points(const Primitive& p, double pitch, std::vector<Vec2>& out);

} // namespace inhomog
