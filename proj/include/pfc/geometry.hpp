#ifndef PFC_GEOMETRY_HPP
#define PFC_GEOMETRY_HPP

#include "pfc/embedding.hpp"

#include <cmath>

namespace pfc {

struct Point {
    double x = 0;
    double y = 0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline Point unit(Point a) { return a * (1.0 / norm(a)); }
inline Point left_normal(Point a) { return {-a.y, a.x}; }

// p -> origin + p.x * ex + p.y * ey
struct Affine {
    Point origin;
    Point ex{1, 0};
    Point ey{0, 1};
    Point operator()(Point p) const { return origin + ex * p.x + ey * p.y; }
};

inline double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    double t = len2 == 0 ? 0 : std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

// Parameters (s, t) of a proper crossing of segments a1b1 and a2b2, strictly inside both.
inline std::optional<std::pair<double, double>> segment_crossing(Point a1, Point b1, Point a2, Point b2) {
    Point r = b1 - a1, s = b2 - a2;
    double den = cross(r, s);
    if (den == 0) return std::nullopt;
    double t1 = cross(a2 - a1, s) / den;
    double t2 = cross(a2 - a1, r) / den;
    if (t1 <= 0 || t1 >= 1 || t2 <= 0 || t2 >= 1) return std::nullopt;
    return std::make_pair(t1, t2);
}

inline double segment_distance(Point a1, Point b1, Point a2, Point b2) {
    if (segment_crossing(a1, b1, a2, b2)) return 0;
    return std::min({point_segment_distance(a1, a2, b2), point_segment_distance(b1, a2, b2), point_segment_distance(a2, a1, b1),
                     point_segment_distance(b2, a1, b1)});
}

// Counter-clockwise angular order of incident edges at every vertex of a straight-line drawing.
inline RotationEmbedding embedding_from_drawing(const Digraph& d, std::span<const Point> pos) {
    if (pos.size() != d.vertex_count()) throw std::invalid_argument("drawing size mismatch");
    RotationEmbedding e;
    e.rotation.resize(d.vertex_count());
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        auto inc = d.incident(v);
        std::vector<std::pair<Point, std::size_t>> dirs;
        for (std::size_t arc : inc) dirs.push_back({pos[d.other_end(arc, v)] - pos[v], arc});
        auto half = [](Point u) { return (u.y < 0 || (u.y == 0 && u.x < 0)) ? 1 : 0; };
        std::sort(dirs.begin(), dirs.end(), [&](const auto& a, const auto& b) {
            int ha = half(a.first), hb = half(b.first);
            if (ha != hb) return ha < hb;
            return cross(a.first, b.first) > 0;
        });
        for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
            const Point& a = dirs[i].first;
            const Point& b = dirs[i + 1].first;
            if (half(a) == half(b) && cross(a, b) == 0) {
                throw std::invalid_argument("drawing has overlapping edges at vertex " + std::to_string(v));
            }
        }
        for (const auto& [dir, arc] : dirs) e.rotation[v].push_back(arc);
    }
    return e;
}

}  // namespace pfc

#endif
