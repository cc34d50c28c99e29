#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace testsupport {

using maskbox::AxisAlignedBox;
using maskbox::Point2;
using maskbox::RotatedBox;

bool point_in_quad(const RotatedBox& quad, const Point2& p) {
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Point2& a = quad.corners[i];
        const Point2& b = quad.corners[(i + 1) % 4];
        const double c = cross(b - a, p - a);
        if (c > 0.0) ++pos;
        if (c < 0.0) ++neg;
    }
    return pos == 0 || neg == 0;
}

double polygon_area_of(std::span<const Point2> polygon) {
    if (polygon.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point2& p = polygon[i];
        const Point2& q = polygon[(i + 1) % polygon.size()];
        twice += p.x * q.y - q.x * p.y;
    }
    return std::abs(twice) / 2.0;
}

double monte_carlo_iou(const RotatedBox& p, const RotatedBox& q, int samples,
                       std::uint64_t seed) {
    const double area_p = polygon_area_of(p.corners);
    const double area_q = polygon_area_of(q.corners);
    if (area_p <= 0.0 || area_q <= 0.0) return 0.0;

    double x_min = p.corners[0].x, x_max = x_min, y_min = p.corners[0].y, y_max = y_min;
    for (const auto& quad : {p, q}) {
        for (const auto& c : quad.corners) {
            x_min = std::min(x_min, c.x);
            x_max = std::max(x_max, c.x);
            y_min = std::min(y_min, c.y);
            y_max = std::max(y_max, c.y);
        }
    }
    const double box_area = (x_max - x_min) * (y_max - y_min);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(x_min, x_max);
    std::uniform_real_distribution<double> uy(y_min, y_max);
    long hits = 0;
    for (int i = 0; i < samples; ++i) {
        const Point2 s{ux(rng), uy(rng)};
        if (point_in_quad(p, s) && point_in_quad(q, s)) ++hits;
    }
    const double inter = box_area * static_cast<double>(hits) / samples;
    return inter / (area_p + area_q - inter);
}

std::vector<Point2> brute_force_hull(std::span<const Point2> points) {
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

    // Collect directed edges with every other point strictly on the left.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool all_left = true;
            for (std::size_t k = 0; k < n && all_left; ++k) {
                if (k == i || k == j) continue;
                if (cross(pts[j] - pts[i], pts[k] - pts[i]) <= 0.0) all_left = false;
            }
            if (all_left) edges.emplace_back(i, j);
        }
    }
    if (edges.empty()) {  // fully collinear input
        return {pts.front(), pts.back()};
    }

    std::vector<std::size_t> next(n, n);
    for (auto [i, j] : edges) next[i] = j;
    std::vector<Point2> hull;
    std::size_t start = edges.front().first;
    std::size_t cur = start;
    do {
        hull.push_back(pts[cur]);
        cur = next[cur];
    } while (cur != start && cur < n && hull.size() <= n);
    return hull;
}

double sweep_min_rect_area(std::span<const Point2> points, double step_degrees) {
    double best = std::numeric_limits<double>::infinity();
    for (double deg = 0.0; deg < 90.0; deg += step_degrees) {
        const double rad = deg * std::numbers::pi / 180.0;
        const Point2 u{std::cos(rad), std::sin(rad)};
        const Point2 v{-u.y, u.x};
        double su_min = dot(points[0], u), su_max = su_min;
        double sv_min = dot(points[0], v), sv_max = sv_min;
        for (const auto& p : points) {
            const double su = dot(p, u);
            const double sv = dot(p, v);
            su_min = std::min(su_min, su);
            su_max = std::max(su_max, su);
            sv_min = std::min(sv_min, sv);
            sv_max = std::max(sv_max, sv);
        }
        best = std::min(best, (su_max - su_min) * (sv_max - sv_min));
    }
    return best;
}

maskbox::AxisAlignedBox reference_refine(const std::function<bool(const Point2&)>& inside,
                                         const AxisAlignedBox& box, double factor, double step,
                                         double max_shrink_fraction, bool freeze_alpha) {
    double x_min = box.x_min, y_min = box.y_min, x_max = box.x_max, y_max = box.y_max;
    const double cap_x = max_shrink_fraction * (box.x_max - box.x_min);
    const double cap_y = max_shrink_fraction * (box.y_max - box.y_min);
    double moved[4] = {0, 0, 0, 0};  // left, top, right, bottom

    auto covered = [&](double sx, double sy, double dx, double dy, double len) {
        const int n = static_cast<int>(std::floor(len));
        if (n >= 1) {
            int hits = 0;
            for (int k = 0; k < n; ++k) {
                if (inside({sx + dx * (k + 0.5), sy + dy * (k + 0.5)})) ++hits;
            }
            return static_cast<double>(hits);
        }
        if (len > 0.0 && inside({sx + dx * len / 2.0, sy + dy * len / 2.0})) return len;
        return 0.0;
    };

    bool moved_any = true;
    while (moved_any) {
        moved_any = false;
        for (int e = 0; e < 4; ++e) {
            const bool horizontal_move = e == 0 || e == 2;
            const double cap = horizontal_move ? cap_x : cap_y;
            if (moved[e] >= cap - 1e-12) continue;

            double beta, alpha_now;
            if (e == 0) {  // left
                alpha_now = y_max - y_min;
                beta = covered(x_min, y_min, 0, 1, alpha_now);
            } else if (e == 1) {  // top
                alpha_now = x_max - x_min;
                beta = covered(x_min, y_min, 1, 0, alpha_now);
            } else if (e == 2) {  // right
                alpha_now = y_max - y_min;
                beta = covered(x_max, y_min, 0, 1, alpha_now);
            } else {  // bottom
                alpha_now = x_max - x_min;
                beta = covered(x_min, y_max, 1, 0, alpha_now);
            }
            const double alpha =
                freeze_alpha
                    ? (horizontal_move ? box.y_max - box.y_min : box.x_max - box.x_min)
                    : alpha_now;
            if (beta > alpha * factor) continue;

            const double delta = std::min(step, cap - moved[e]);
            if (e == 0) x_min += delta;
            if (e == 1) y_min += delta;
            if (e == 2) x_max -= delta;
            if (e == 3) y_max -= delta;
            moved[e] += delta;
            moved_any = true;
        }
    }
    return {x_min, y_min, x_max, y_max};
}

}  // namespace testsupport
