#pragma once

#include <span>
#include <vector>

#include "maskbox/geometry.hpp"
#include "maskbox/point.hpp"

namespace maskbox {

/// Counterclockwise convex hull with collinear points removed.
/// One or two distinct input points come back unchanged.
/// Throws std::invalid_argument on empty input.
std::vector<Point2> convex_hull(std::span<const Point2> points);

/// Minimum-area enclosing rectangle: one side is collinear with a hull edge,
/// so it suffices to test every hull edge direction. Equal-area candidates are
/// resolved by smaller perimeter, then smaller angle. Collinear input yields a
/// degenerate (zero-width) rectangle.
RotatedBox min_area_rect(std::span<const Point2> points);

/// Direction of the rectangle's longer side in [0, pi); for squares
/// (side ratio within 1e-9) the direction of the first edge.
double rect_angle(const RotatedBox& rect);

}  // namespace maskbox
