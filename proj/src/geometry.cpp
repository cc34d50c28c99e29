#include "maskbox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maskbox/errors.hpp"

namespace maskbox {

std::vector<Point2> AffineTransform::apply(std::span<const Point2> points) const {
    std::vector<Point2> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(apply(p));
    return out;
}

RotatedBox AffineTransform::apply_polygon(const RotatedBox& polygon) const {
    RotatedBox out;
    for (std::size_t i = 0; i < 4; ++i) out.corners[i] = apply(polygon.corners[i]);
    return out;
}

AffineTransform AffineTransform::inverse() const {
    const double det = linear_determinant();
    if (std::abs(det) < 1e-12) {
        throw geometry_error("affine transform has a singular linear part");
    }
    const double i00 = m11 / det;
    const double i01 = -m01 / det;
    const double i10 = -m10 / det;
    const double i11 = m00 / det;
    return {i00, i01, -(i00 * m02 + i01 * m12),
            i10, i11, -(i10 * m02 + i11 * m12)};
}

AffineTransform identity_transform() { return {}; }

AffineTransform rotation_about(const Point2& center, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // Linear part [[c, s], [-s, c]]; translation (I - R) * center keeps the
    // center fixed.
    return {c, s, (1.0 - c) * center.x - s * center.y,
            -s, c, s * center.x + (1.0 - c) * center.y};
}

AffineTransform compose(const AffineTransform& outer, const AffineTransform& inner) {
    return {outer.m00 * inner.m00 + outer.m01 * inner.m10,
            outer.m00 * inner.m01 + outer.m01 * inner.m11,
            outer.m00 * inner.m02 + outer.m01 * inner.m12 + outer.m02,
            outer.m10 * inner.m00 + outer.m11 * inner.m10,
            outer.m10 * inner.m01 + outer.m11 * inner.m11,
            outer.m10 * inner.m02 + outer.m11 * inner.m12 + outer.m12};
}

RotatedBox box_to_polygon(const AxisAlignedBox& box) {
    return {{Point2{box.x_min, box.y_min}, Point2{box.x_max, box.y_min},
             Point2{box.x_max, box.y_max}, Point2{box.x_min, box.y_max}}};
}

RotatedBox rotated_rect(const Point2& center, double len_u, double len_v, double angle) {
    const Point2 u{std::cos(angle), std::sin(angle)};
    const Point2 v{-u.y, u.x};
    const Point2 hu = u * (len_u / 2.0);
    const Point2 hv = v * (len_v / 2.0);
    return {{center - hu - hv, center + hu - hv, center + hu + hv, center - hu + hv}};
}

double polygon_area(const RotatedBox& polygon) {
    double twice = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Point2& p = polygon.corners[i];
        const Point2& q = polygon.corners[(i + 1) % 4];
        twice += p.x * q.y - q.x * p.y;
    }
    return std::abs(twice) / 2.0;
}

AxisAlignedBox ellipse_box(const Ellipse& e) {
    return {e.center.x - e.semi_minor, e.center.y - e.semi_major,
            e.center.x + e.semi_minor, e.center.y + e.semi_major};
}

AxisAlignedBox minmax_box(std::span<const Point2> points) {
    if (points.empty()) throw std::invalid_argument("minmax_box: empty point list");
    AxisAlignedBox box{points[0].x, points[0].y, points[0].x, points[0].y};
    for (const auto& p : points) {
        box.x_min = std::min(box.x_min, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.x_max = std::max(box.x_max, p.x);
        box.y_max = std::max(box.y_max, p.y);
    }
    return box;
}

AxisAlignedBox intersect_aab(const AxisAlignedBox& g, const AxisAlignedBox& b) {
    const AxisAlignedBox r{std::max(g.x_min, b.x_min), std::max(g.y_min, b.y_min),
                           std::min(g.x_max, b.x_max), std::min(g.y_max, b.y_max)};
    if (r.x_min > r.x_max || r.y_min > r.y_max) {
        throw geometry_error("box intersection is empty");
    }
    return r;
}

RotatedBox intersect_boxes(const AxisAlignedBox& g, const AxisAlignedBox& b) {
    return box_to_polygon(intersect_aab(g, b));
}

}  // namespace maskbox
