#pragma once

// Two-formula view: every model is the point (d(I,F1), d(I,F2)). Selection
// under all positive weights is visibility from the origin.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/merge.hpp"
#include "wmerge/rational.hpp"
#include "wmerge/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

namespace wmerge {

struct Point2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const Point2&, const Point2&) = default;
};

inline Point2 to_point(const DistanceVector& d) {
    if (d.size() != 2) throw ValidationError("a point needs a distance vector of length 2");
    if (d[0] < 0 || d[1] < 0) throw ValidationError("point coordinates must be non-negative");
    return {d[0], d[1]};
}

/// a*x + b*y + c = 0
struct Line2 {
    Rational a, b, c;

    static Line2 through(const Point2& p, const Point2& q) {
        if (p == q) throw ValidationError("a line needs two distinct points");
        Rational a = q.y - p.y;
        Rational b = p.x - q.x;
        return {a, b, -(a * p.x + b * p.y)};
    }

    Rational eval(const Point2& p) const { return a * p.x + b * p.y + c; }
};

/// Whether `p` and the origin lie strictly on opposite sides of `l`.
/// Points on the line are not separated.
inline bool separates_from_origin(const Line2& l, const Point2& p) {
    if (l.a == 0 && l.b == 0) throw ValidationError("degenerate line");
    const int sp = sign(l.eval(p));
    const int so = sign(l.c);
    return sp != 0 && so != 0 && sp != so;
}

namespace detail {

inline bool point_dominates(const Point2& p, const Point2& q) { return p.x <= q.x && p.y <= q.y; }
inline bool point_strictly_dominates(const Point2& p, const Point2& q) { return point_dominates(p, q) && p != q; }

inline std::vector<Point2> unique_points(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline std::vector<Point2> undominated_points(const std::vector<Point2>& pts) {
    std::vector<Point2> out;
    for (const auto& p : pts)
        if (std::none_of(pts.begin(), pts.end(), [&](const Point2& q) { return point_strictly_dominates(q, p); }))
            out.push_back(p);
    return out;
}

// cross product of (b - a) and (c - a)
inline std::int64_t cross(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace detail

/// Points on the part of the lower-left convex hull seen from the origin,
/// collinear points on hull edges included.
inline std::vector<Point2> visible_hull(const std::vector<Point2>& points) {
    if (points.empty()) throw ValidationError("visible_hull needs at least one point");
    // Undominated points sorted by x have strictly decreasing y.
    auto pts = detail::undominated_points(detail::unique_points(points));
    std::vector<Point2> chain;
    for (const auto& p : pts) {
        // pop on a strict clockwise turn only, so collinear points stay
        while (chain.size() >= 2 && detail::cross(chain[chain.size() - 2], chain.back(), p) < 0) chain.pop_back();
        chain.push_back(p);
    }
    return chain;
}

/// Exclusion of `i` by the pair j, k, neither dominating the other: the line
/// through i and j leaves k strictly on the origin side, and the line
/// through i and k leaves j strictly on the origin side.
inline bool excluded_by_pair(const Point2& i, const Point2& j, const Point2& k) {
    if (i == j || i == k || j == k) return false;
    if (detail::point_dominates(j, k) || detail::point_dominates(k, j)) return false;
    auto origin_side = [](const Line2& l, const Point2& p) {
        const int sp = sign(l.eval(p));
        return sp != 0 && sp == sign(l.c);
    };
    return origin_side(Line2::through(i, j), k) && origin_side(Line2::through(i, k), j);
}

/// Models selected under all positive weights for a profile of length 2:
/// dominance removal to a fixpoint, then pairwise exclusion to a fixpoint.
inline ModelSet algorithm1(const Instance& inst, const DistanceKind& kind) {
    if (inst.profile.size() != 2) throw ValidationError("algorithm1 needs exactly two formulae");
    auto c = candidates(inst, kind);
    std::vector<Point2> pts;
    for (const auto& v : c.vectors) pts.push_back(to_point(v));

    std::vector<bool> alive(pts.size(), true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (alive[j] && detail::point_strictly_dominates(pts[j], pts[i])) {
                    alive[i] = false;
                    changed = true;
                    break;
                }
            }
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = 0; j < pts.size() && alive[i]; ++j) {
                if (!alive[j]) continue;
                for (std::size_t k = j + 1; k < pts.size(); ++k) {
                    if (alive[k] && excluded_by_pair(pts[i], pts[j], pts[k])) {
                        alive[i] = false;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    ModelSet out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (alive[i]) out.push_back(c.models[i]);
    return out;
}

/// A finite weight set whose merge equals merging under all positive
/// weights: one normal per pair of mutually undominated points, plus two
/// nearly axis-parallel vectors.
inline std::vector<WeightVector> critical_weight_set(const std::vector<Point2>& points) {
    if (points.empty()) throw ValidationError("critical_weight_set needs at least one point");
    auto pts = detail::unique_points(points);
    std::int64_t top = 0;
    for (const auto& p : pts) top = std::max({top, p.x, p.y});
    const std::int64_t big = 1 + 2 * top;
    std::vector<WeightVector> out{WeightVector{1, big}, WeightVector{big, 1}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto& p = pts[i];
            const auto& q = pts[j];
            if (detail::point_dominates(p, q) || detail::point_dominates(q, p)) continue;
            std::int64_t a = q.y > p.y ? q.y - p.y : p.y - q.y;
            std::int64_t b = q.x > p.x ? q.x - p.x : p.x - q.x;
            const std::int64_t g = std::gcd(a, b);
            out.push_back(WeightVector{a / g, b / g});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// SVG document: axes, then the visible hull polyline, then one circle per
/// point (filled when selected).
inline std::string svg_document(const std::vector<Point2>& points, const std::vector<Point2>& selected) {
    std::int64_t top = 1;
    for (const auto& p : points) top = std::max({top, p.x, p.y});
    const double unit = 500.0 / static_cast<double>(top);
    char buf[160];
    auto sx = [&](std::int64_t x) { return 50.0 + unit * static_cast<double>(x); };
    auto sy = [&](std::int64_t y) { return 550.0 - unit * static_cast<double>(y); };

    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">\n";
    out += "<line x1=\"50\" y1=\"550\" x2=\"570\" y2=\"550\" stroke=\"black\"/>\n";
    out += "<line x1=\"50\" y1=\"550\" x2=\"50\" y2=\"30\" stroke=\"black\"/>\n";
    if (!points.empty()) {
        out += "<polyline fill=\"none\" stroke=\"gray\" points=\"";
        bool first = true;
        for (const auto& p : visible_hull(points)) {
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", sx(p.x), sy(p.y));
            out += buf;
            first = false;
        }
        out += "\"/>\n";
    }
    for (const auto& p : detail::unique_points(points)) {
        const bool sel = std::find(selected.begin(), selected.end(), p) != selected.end();
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"6\" stroke=\"black\" fill=\"%s\"/>\n",
                      sx(p.x), sy(p.y), sel ? "black" : "white");
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

inline void render_svg(const std::vector<Point2>& points, const std::vector<Point2>& selected,
                       const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << svg_document(points, selected);
    if (!f) throw Error("failed writing '" + path + "'");
}

}  // namespace wmerge
