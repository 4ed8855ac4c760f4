#include "inhomog/geometry.hpp"

#include <algorithm>

namespace inhomog {

Primitive Primitive::segment(Vec2 p, Vec2 q) {
    if (p == q) return point(p);
    return {PrimitiveKind::segment, p, q};
}

Primitive Primitive::rect(Vec2 lo, Vec2 hi) {
    Vec2 l{std::min(lo.x, hi.x), std::min(lo.y, hi.y)};
    Vec2 h{std::max(lo.x, hi.x), std::max(lo.y, hi.y)};
    if (l.x == h.x && l.y == h.y) return point(l);
    if (l.x == h.x || l.y == h.y) return segment(l, h);
    return {PrimitiveKind::rect, l, h};
}

bool in_unit_square(Vec2 p, double tol) {
    return p.x >= -tol && p.x <= 1.0 + tol && p.y >= -tol && p.y <= 1.0 + tol;
}

bool in_unit_square(const Primitive& p, double tol) {
    return in_unit_square(p.a, tol) && in_unit_square(p.b, tol);
}

void sample_points(const Primitive& p, double pitch, std::vector<Vec2>& out) {
    pitch = std::max(pitch, 1e-9);
    switch (p.kind) {
    case PrimitiveKind::point:
        out.push_back(p.a);
        return;
    case PrimitiveKind::segment: {
        const double len = dist(p.a, p.b);
        const int n = std::max(1, static_cast<int>(std::ceil(len / pitch)));
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            out.push_back(p.a + t * (p.b - p.a));
        }
        return;
    }
    case PrimitiveKind::rect: {
        const int nx = std::max(1, static_cast<int>(std::ceil((p.b.x - p.a.x) / pitch)));
        const int ny = std::max(1, static_cast<int>(std::ceil((p.b.y - p.a.y) / pitch)));
        for (int i = 0; i <= nx; ++i)
            for (int j = 0; j <= ny; ++j)
                out.push_back({p.a.x + (p.b.x - p.a.x) * i / nx,
                               p.a.y + (p.b.y - p.a.y) * j / ny});
        return;
    }
    }
}

} // namespace inhomog
