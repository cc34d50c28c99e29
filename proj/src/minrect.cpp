#include "maskbox/minrect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maskbox {

namespace {

double normalize_angle_pi(double angle) {
    angle = std::fmod(angle, std::numbers::pi);
    if (angle < 0.0) angle += std::numbers::pi;
    if (angle >= std::numbers::pi) angle -= std::numbers::pi;
    return angle;
}

struct RectCandidate {
    Point2 center;
    double angle = 0;      // long-side direction in [0, pi)
    double half_long = 0;
    double half_short = 0;
    double area = 0;
    double perimeter = 0;
};

// From extents measured along the orthonormal pair (u, v).
RectCandidate make_candidate(const Point2& u, double su_min, double su_max, double sv_min,
                             double sv_max) {
    const Point2 v{-u.y, u.x};
    RectCandidate cand;
    const double eu = su_max - su_min;
    const double ev = sv_max - sv_min;
    cand.center = u * ((su_min + su_max) / 2.0) + v * ((sv_min + sv_max) / 2.0);
    cand.area = eu * ev;
    cand.perimeter = 2.0 * (eu + ev);

    const double angle_u = normalize_angle_pi(std::atan2(u.y, u.x));
    const double angle_v = normalize_angle_pi(std::atan2(v.y, v.x));
    const double longer = std::max(eu, ev);
    bool u_is_long;
    if (std::abs(eu - ev) <= 1e-9 * std::max(1.0, longer)) {
        u_is_long = angle_u <= angle_v;  // square: keep the smaller angle
    } else {
        u_is_long = eu > ev;
    }
    if (u_is_long) {
        cand.angle = angle_u;
        cand.half_long = eu / 2.0;
        cand.half_short = ev / 2.0;
    } else {
        cand.angle = angle_v;
        cand.half_long = ev / 2.0;
        cand.half_short = eu / 2.0;
    }
    return cand;
}

bool better(const RectCandidate& a, const RectCandidate& b) {
    const double area_eps = 1e-9 * std::max(1.0, std::max(a.area, b.area));
    if (a.area < b.area - area_eps) return true;
    if (a.area > b.area + area_eps) return false;
    const double per_eps = 1e-9 * std::max(1.0, std::max(a.perimeter, b.perimeter));
    if (a.perimeter < b.perimeter - per_eps) return true;
    if (a.perimeter > b.perimeter + per_eps) return false;
    return a.angle < b.angle - 1e-12;
}

RotatedBox to_box(const RectCandidate& cand) {
    return rotated_rect(cand.center, 2.0 * cand.half_long, 2.0 * cand.half_short, cand.angle);
}

}  // namespace

std::vector<Point2> convex_hull(std::span<const Point2> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty point list");

    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());

    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    // Monotone chain; non-left turns are popped, which drops collinear points.
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

RotatedBox min_area_rect(std::span<const Point2> points) {
    const auto hull = convex_hull(points);

    if (hull.size() == 1) {
        return {{hull[0], hull[0], hull[0], hull[0]}};
    }
    if (hull.size() == 2) {
        const Point2 d = hull[1] - hull[0];
        const double len = length(d);
        const Point2 u = len > 0.0 ? d * (1.0 / len) : Point2{1.0, 0.0};
        const RectCandidate cand = make_candidate(
            u, std::min(dot(hull[0], u), dot(hull[1], u)),
            std::max(dot(hull[0], u), dot(hull[1], u)), dot(hull[0], Point2{-u.y, u.x}),
            dot(hull[0], Point2{-u.y, u.x}));
        return to_box(cand);
    }

    // One side of the optimal rectangle is collinear with a hull edge, so only
    // hull-edge directions need to be tested.
    RectCandidate best;
    bool have_best = false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2 edge = hull[(i + 1) % hull.size()] - hull[i];
        const double len = length(edge);
        if (len <= 0.0) continue;
        const Point2 u = edge * (1.0 / len);
        const Point2 v{-u.y, u.x};
        double su_min = dot(hull[0], u), su_max = su_min;
        double sv_min = dot(hull[0], v), sv_max = sv_min;
        for (const Point2& p : hull) {
            const double su = dot(p, u);
            const double sv = dot(p, v);
            su_min = std::min(su_min, su);
            su_max = std::max(su_max, su);
            sv_min = std::min(sv_min, sv);
            sv_max = std::max(sv_max, sv);
        }
        const RectCandidate cand = make_candidate(u, su_min, su_max, sv_min, sv_max);
        if (!have_best || better(cand, best)) {
            best = cand;
            have_best = true;
        }
    }
    return to_box(best);
}

double rect_angle(const RotatedBox& rect) {
    const Point2 first = rect.corners[1] - rect.corners[0];
    const Point2 second = rect.corners[2] - rect.corners[1];
    const double len_first = length(first);
    const double len_second = length(second);
    const double longer = std::max(len_first, len_second);
    Point2 side = first;
    if (std::abs(len_first - len_second) > 1e-9 * std::max(1.0, longer) &&
        len_second > len_first) {
        side = second;
    }
    return normalize_angle_pi(std::atan2(side.y, side.x));
}

}  // namespace maskbox
