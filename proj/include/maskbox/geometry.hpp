#pragma once

#include <array>
#include <span>
#include <vector>

#include "maskbox/ellipse.hpp"
#include "maskbox/point.hpp"

namespace maskbox {

/// 2x3 affine map  p' = [[m00 m01],[m10 m11]] * p + [m02 m12].
/// Factory functions only produce pure rotations (det = 1).
struct AffineTransform {
    double m00 = 1, m01 = 0, m02 = 0;
    double m10 = 0, m11 = 1, m12 = 0;

    Point2 apply(const Point2& p) const {
        return {m00 * p.x + m01 * p.y + m02, m10 * p.x + m11 * p.y + m12};
    }
    std::vector<Point2> apply(std::span<const Point2> points) const;
    struct RotatedBox apply_polygon(const struct RotatedBox& polygon) const;

    double linear_determinant() const { return m00 * m11 - m01 * m10; }

    /// Throws geometry_error when the linear part is singular.
    AffineTransform inverse() const;
};

AffineTransform identity_transform();

/// Rotation about a fixed center: the linear part is
/// [[cos t, sin t], [-sin t, cos t]] and the center maps to itself.
AffineTransform rotation_about(const Point2& center, double theta);

/// outer(inner(p)).
AffineTransform compose(const AffineTransform& outer, const AffineTransform& inner);

struct AxisAlignedBox {
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    AxisAlignedBox expanded(double margin) const {
        return {x_min - margin, y_min - margin, x_max + margin, y_max + margin};
    }
};

/// Rectangle as an ordered quadrilateral: top-left, top-right, bottom-right,
/// bottom-left of the box before rotation.
struct RotatedBox {
    std::array<Point2, 4> corners{};
};

/// Corner polygon of an axis-aligned box:
/// (x_min,y_min) (x_max,y_min) (x_max,y_max) (x_min,y_max).
RotatedBox box_to_polygon(const AxisAlignedBox& box);

/// Rectangle from center, side lengths and the direction of the first side.
/// len_u runs along angle, len_v perpendicular to it.
RotatedBox rotated_rect(const Point2& center, double len_u, double len_v, double angle);

/// Shoelace area (always >= 0).
double polygon_area(const RotatedBox& polygon);

/// Bounding box of an ellipse in the frame where its major axis is vertical:
/// [x0-n, y0-m, x0+n, y0+m]. Only meaningful after that alignment.
AxisAlignedBox ellipse_box(const Ellipse& e);

/// Tight axis-aligned bounding box; throws std::invalid_argument on empty input.
AxisAlignedBox minmax_box(std::span<const Point2> points);

/// Componentwise box intersection. Throws geometry_error when empty.
AxisAlignedBox intersect_aab(const AxisAlignedBox& g, const AxisAlignedBox& b);

/// Box intersection returned as the ordered corner polygon.
RotatedBox intersect_boxes(const AxisAlignedBox& g, const AxisAlignedBox& b);

}  // namespace maskbox
