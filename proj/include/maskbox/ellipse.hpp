#pragma once

#include <array>
#include <span>

#include "maskbox/point.hpp"

namespace maskbox {

/// Coefficients of the implicit conic  a*x^2 + b*xy + c*y^2 + d*x + e*y + f = 0.
/// An ellipse requires b^2 - 4ac < 0.
struct ConicCoefficients {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    bool is_ellipse() const { return b * b - 4.0 * a * c < 0.0; }
    std::array<double, 6> as_array() const { return {a, b, c, d, e, f}; }
};

/// Geometric ellipse. angle is the direction of the semi-major axis,
/// measured from +x toward +y, normalized to [0, pi).
struct Ellipse {
    Point2 center;
    double semi_major = 0;  // >= semi_minor
    double semi_minor = 0;
    double angle = 0;
};

/// [x^2, xy, y^2, x, y, 1] for one sample point.
std::array<double, 6> design_row(const Point2& p);

/// Algebraic distance of p from the conic: design_row(p) . (a..f).
double residual(const ConicCoefficients& c, const Point2& p);

/// Scale coefficients to unit L2 norm with the first nonzero coefficient positive.
ConicCoefficients normalized(const ConicCoefficients& c);

/// Direct least-squares ellipse fit with the ellipse-specific quadratic
/// constraint, solved via the partitioned 3x3 eigenproblem on mean-centered
/// coordinates. Needs at least 6 non-collinear points. Returns normalized
/// coefficients. Throws fit_error on degenerate input.
ConicCoefficients fit_ellipse(std::span<const Point2> points);

/// Conic -> (center, semi-axes, angle). Throws fit_error if the coefficients
/// do not describe a real non-degenerate ellipse.
Ellipse conic_to_ellipse(const ConicCoefficients& c);

}  // namespace maskbox
