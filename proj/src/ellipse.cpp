#include "maskbox/ellipse.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "maskbox/errors.hpp"

namespace maskbox {

namespace {

double normalize_angle_pi(double angle) {
    angle = std::fmod(angle, std::numbers::pi);
    if (angle < 0.0) angle += std::numbers::pi;
    if (angle >= std::numbers::pi) angle -= std::numbers::pi;
    return angle;
}

}  // namespace

std::array<double, 6> design_row(const Point2& p) {
    return {p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0};
}

double residual(const ConicCoefficients& c, const Point2& p) {
    const auto row = design_row(p);
    const auto coeff = c.as_array();
    double r = 0.0;
    for (int i = 0; i < 6; ++i) r += row[i] * coeff[i];
    return r;
}

ConicCoefficients normalized(const ConicCoefficients& c) {
    const auto v = c.as_array();
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw fit_error("cannot normalize all-zero conic");
    double sign = 1.0;
    for (double x : v) {
        if (x != 0.0) {
            sign = x > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    const double s = sign / norm;
    return {c.a * s, c.b * s, c.c * s, c.d * s, c.e * s, c.f * s};
}

ConicCoefficients fit_ellipse(std::span<const Point2> points) {
    const std::size_t n = points.size();
    if (n < 6) throw fit_error("ellipse fit needs at least 6 points");

    // Mean-center the coordinates; the scatter blocks would otherwise be badly
    // conditioned for contours far from the origin.
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    Eigen::Matrix3d s1 = Eigen::Matrix3d::Zero();  // quadratic x quadratic
    Eigen::Matrix3d s2 = Eigen::Matrix3d::Zero();  // quadratic x linear
    Eigen::Matrix3d s3 = Eigen::Matrix3d::Zero();  // linear x linear
    for (const auto& p : points) {
        const double u = p.x - mx;
        const double v = p.y - my;
        const Eigen::Vector3d q1(u * u, u * v, v * v);
        const Eigen::Vector3d q2(u, v, 1.0);
        s1 += q1 * q1.transpose();
        s2 += q1 * q2.transpose();
        s3 += q2 * q2.transpose();
    }

    Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
    if (!lu.isInvertible()) {
        throw fit_error("degenerate point configuration (collinear or coincident)");
    }
    const Eigen::Matrix3d t = -lu.solve(s2.transpose());
    const Eigen::Matrix3d m = s1 + s2 * t;

    // Premultiplied by the inverse of the constraint matrix for 4ac - b^2 = 1.
    Eigen::Matrix3d reduced;
    reduced.row(0) = m.row(2) / 2.0;
    reduced.row(1) = -m.row(1);
    reduced.row(2) = m.row(0) / 2.0;

    Eigen::EigenSolver<Eigen::Matrix3d> solver(reduced);
    if (solver.info() != Eigen::Success) throw fit_error("eigen decomposition failed");

    int best = -1;
    double best_cond = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(solver.eigenvalues()[i].imag()) >
            1e-9 * (1.0 + std::abs(solver.eigenvalues()[i].real()))) {
            continue;
        }
        const Eigen::Vector3d v = solver.eigenvectors().col(i).real();
        const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond > 0.0 && (best < 0 || cond > best_cond)) {
            best = i;
            best_cond = cond;
        }
    }
    if (best < 0) throw fit_error("no elliptical solution for this point set");

    const Eigen::Vector3d quad = solver.eigenvectors().col(best).real();
    const Eigen::Vector3d lin = t * quad;

    // Shift the centered conic back to image coordinates.
    const double ca = quad(0), cb = quad(1), cc = quad(2);
    const double cd = lin(0), ce = lin(1), cf = lin(2);
    ConicCoefficients out;
    out.a = ca;
    out.b = cb;
    out.c = cc;
    out.d = cd - 2.0 * ca * mx - cb * my;
    out.e = ce - cb * mx - 2.0 * cc * my;
    out.f = cf + ca * mx * mx + cb * mx * my + cc * my * my - cd * mx - ce * my;

    out = normalized(out);
    if (!out.is_ellipse()) throw fit_error("fitted conic is not an ellipse");
    return out;
}

Ellipse conic_to_ellipse(const ConicCoefficients& input) {
    ConicCoefficients c = input;
    // Canonicalize so the quadratic form is positive definite.
    if (c.a < 0.0) {
        c = {-c.a, -c.b, -c.c, -c.d, -c.e, -c.f};
    }
    const double det4 = 4.0 * c.a * c.c - c.b * c.b;
    if (!(det4 > 0.0) || !std::isfinite(det4)) {
        throw fit_error("conic is not an ellipse (b^2 - 4ac >= 0)");
    }

    // Center from the vanishing gradient: [2a b; b 2c] [x y]' = [-d -e]'.
    const Point2 center{(c.b * c.e - 2.0 * c.c * c.d) / det4,
                        (c.b * c.d - 2.0 * c.a * c.e) / det4};

    // Conic value at the center; the linear terms vanish there.
    const double f0 = c.f + (c.d * center.x + c.e * center.y) / 2.0;
    if (!(f0 < 0.0)) {
        throw fit_error("conic has an empty or point locus");
    }

    Eigen::Matrix2d q;
    q << c.a, c.b / 2.0, c.b / 2.0, c.c;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(q);
    if (solver.info() != Eigen::Success) throw fit_error("eigen decomposition failed");

    // Eigenvalues ascend; the smaller one carries the major axis.
    const double lam_major = solver.eigenvalues()(0);
    const double lam_minor = solver.eigenvalues()(1);
    if (!(lam_major > 0.0)) throw fit_error("conic is not an ellipse (indefinite form)");

    Ellipse e;
    e.center = center;
    e.semi_major = std::sqrt(-f0 / lam_major);
    e.semi_minor = std::sqrt(-f0 / lam_minor);
    const Eigen::Vector2d axis = solver.eigenvectors().col(0);
    e.angle = normalize_angle_pi(std::atan2(axis(1), axis(0)));
    return e;
}

}  // namespace maskbox
