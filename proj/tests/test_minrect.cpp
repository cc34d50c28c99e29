#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "maskbox/geometry.hpp"
#include "maskbox/minrect.hpp"
#include "support/oracles.hpp"

using namespace maskbox;
using testsupport::brute_force_hull;
using testsupport::point_in_quad;
using testsupport::sweep_min_rect_area;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_point(const Point2& a, const Point2& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Cyclic comparison tolerant to the starting vertex.
bool same_cycle(const std::vector<Point2>& a, const std::vector<Point2>& b, double tol) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = same_point(a[i], b[(i + shift) % n], tol);
        }
        if (ok) return true;
    }
    return false;
}

bool same_corner_set(const RotatedBox& a, const RotatedBox& b, double tol) {
    std::array<bool, 4> used{};
    for (const auto& pa : a.corners) {
        bool matched = false;
        for (std::size_t j = 0; j < 4 && !matched; ++j) {
            if (!used[j] && same_point(pa, b.corners[j], tol)) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("minrect") {

TEST_CASE("hull drops interior and collinear points") {
    const std::vector<Point2> square_plus_center{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const auto hull = convex_hull(square_plus_center);
    CHECK(hull.size() == 4);
    for (const auto& p : hull) CHECK((p.x == 0.0 || p.x == 1.0));

    const std::vector<Point2> collinear{{0, 0}, {1, 1}, {2, 2}};
    const auto line_hull = convex_hull(collinear);
    REQUIRE(line_hull.size() == 2);
    CHECK(same_point(line_hull[0], {0, 0}, 0));
    CHECK(same_point(line_hull[1], {2, 2}, 0));

    CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
}

TEST_CASE("hull matches the all-pairs half-plane oracle") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> radius(0.0, 10.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 100; ++i) {
            const double r = radius(rng);
            const double a = angle(rng);
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        const auto hull = convex_hull(pts);
        const auto oracle = brute_force_hull(pts);
        CHECK(same_cycle(hull, oracle, 1e-12));
    }
}

TEST_CASE("axis-aligned square is its own minimum rectangle") {
    const std::vector<Point2> square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    const RotatedBox rect = min_area_rect(square);
    CHECK(polygon_area(rect) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(same_corner_set(rect, {{Point2{0, 0}, Point2{4, 0}, Point2{4, 4}, Point2{0, 4}}}, 1e-9));
}

TEST_CASE("rotated square recovers the rotation") {
    const std::vector<Point2> square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    const AffineTransform m = rotation_about({2, 2}, kPi / 6.0);
    const auto rotated = m.apply(square);
    const RotatedBox rect = min_area_rect(rotated);
    CHECK(polygon_area(rect) == doctest::Approx(16.0).epsilon(1e-9));
    RotatedBox expected;
    for (int i = 0; i < 4; ++i) expected.corners[i] = rotated[i];
    CHECK(same_corner_set(rect, expected, 1e-9));
}

TEST_CASE("random clouds: area within 0.5% of the rotation sweep oracle") {
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> coord(-30.0, 30.0);
    std::uniform_int_distribution<int> count(3, 200);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Point2> pts;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});

        const RotatedBox rect = min_area_rect(pts);
        const double area = polygon_area(rect);
        const double oracle = sweep_min_rect_area(pts, 0.05);
        CHECK(area <= oracle + 1e-9);
        CHECK(oracle - area <= 0.005 * std::max(1e-12, area));

        // Containment, with a hair of slack for boundary points.
        const Point2 mid{(rect.corners[0].x + rect.corners[2].x) / 2,
                         (rect.corners[0].y + rect.corners[2].y) / 2};
        RotatedBox grown = rect;
        for (auto& c : grown.corners) c = mid + (c - mid) * (1.0 + 1e-9);
        for (const auto& p : pts) CHECK(point_in_quad(grown, p));
    }
}

TEST_CASE("minimum rectangle never beats the hull area") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 40; ++i) pts.push_back({coord(rng), coord(rng)});
        const auto hull = convex_hull(pts);
        CHECK(polygon_area(min_area_rect(pts)) >= testsupport::polygon_area_of(hull) - 1e-9);
    }
}

TEST_CASE("rotation equivariance") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_real_distribution<double> phi_dist(0.0, kPi);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 30; ++i) pts.push_back({coord(rng), coord(rng)});
        const double phi = phi_dist(rng);
        const AffineTransform m = rotation_about({0, 0}, phi);

        const RotatedBox direct = min_area_rect(m.apply(pts));
        const RotatedBox moved = m.apply_polygon(min_area_rect(pts));
        CHECK(same_corner_set(direct, moved, 1e-6));
    }
}

TEST_CASE("rect angle conventions") {
    const RotatedBox wide = rotated_rect({0, 0}, 4, 2, 0.0);
    CHECK(rect_angle(wide) == doctest::Approx(0.0));

    const RotatedBox tall = rotated_rect({0, 0}, 2, 4, 0.0);
    CHECK(rect_angle(tall) == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    const RotatedBox tilted = rotated_rect({5, 5}, 4, 2, kPi / 6.0);
    CHECK(rect_angle(tilted) == doctest::Approx(kPi / 6.0).epsilon(1e-9));

    // Square: angle of the first edge.
    const RotatedBox square = rotated_rect({1, 1}, 2, 2, 0.3);
    CHECK(rect_angle(square) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("degenerate inputs") {
    const std::vector<Point2> one{{2, 3}};
    const RotatedBox point_rect = min_area_rect(one);
    for (const auto& c : point_rect.corners) CHECK(same_point(c, {2, 3}, 0));

    const std::vector<Point2> segment{{0, 0}, {3, 4}, {1.5, 2}};
    const RotatedBox seg_rect = min_area_rect(segment);
    CHECK(polygon_area(seg_rect) == doctest::Approx(0.0));
    CHECK(rect_angle(seg_rect) == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-12));
}

}  // TEST_SUITE
