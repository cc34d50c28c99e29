#include "maskbox/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maskbox/errors.hpp"
#include "maskbox/minrect.hpp"

namespace maskbox {

namespace {

// Contour points are cell centers, so their extrema understate the extent of
// the underlying region: by a full pixel per axis when an edge runs along the
// lattice, by only a fraction of that when it is tilted (lattice points hug a
// tilted edge closely). A quarter-pixel pad per side is the minimax
// compromise across orientations.
constexpr double kCellHalo = 0.25;

Point2 centroid(std::span<const Point2> points) {
    Point2 c{0.0, 0.0};
    for (const auto& p : points) c = c + p;
    return c * (1.0 / static_cast<double>(points.size()));
}

MembershipFn mask_membership(const BinaryMask& mask, const AffineTransform& to_frame) {
    const AffineTransform back = to_frame.inverse();
    return [&mask, back](const Point2& p) { return mask.contains(back.apply(p)); };
}

BoxResult minmax_fallback(const BinaryMask&, std::span<const Point2> contour) {
    BoxResult result;
    result.polygon = box_to_polygon(minmax_box(contour).expanded(kCellHalo));
    result.angle_used = 0.0;
    result.fallback_applied = Fallback::minmax;
    return result;
}

// Axis-aligned box of the contour in the frame rotated so that the direction
// `angle` maps onto +y, then optional refinement, then the way back.
BoxResult oriented_minmax_box(const BinaryMask& mask, std::span<const Point2> contour,
                              const Point2& anchor, double angle, const PipelineConfig& cfg) {
    const AffineTransform to_frame = rotation_about(anchor, angle - std::numbers::pi / 2.0);
    const auto rotated = to_frame.apply(contour);
    AxisAlignedBox box = minmax_box(rotated).expanded(kCellHalo);
    if (cfg.refine) {
        box = refine_box(mask_membership(mask, to_frame), box, cfg.refine_cfg);
    }
    BoxResult result;
    result.polygon = to_frame.inverse().apply_polygon(box_to_polygon(box));
    result.angle_used = angle;
    result.fallback_applied = Fallback::none;
    return result;
}

}  // namespace

BoxResult estimate_box(const BinaryMask& mask, const PipelineConfig& cfg) {
    if (mask.foreground_count() == 0) {
        BoxResult result;  // zero-area sentinel at the origin
        result.fallback_applied = Fallback::empty_mask;
        return result;
    }

    const ContourPointSet contour_set = extract_contour(mask);
    const std::span<const Point2> contour(contour_set.points);

    if (cfg.box_method == BoxMethod::minmax) {
        BoxResult result;
        AxisAlignedBox box = minmax_box(contour).expanded(kCellHalo);
        if (cfg.refine) {
            box = refine_box([&mask](const Point2& p) { return mask.contains(p); }, box,
                             cfg.refine_cfg);
        }
        result.polygon = box_to_polygon(box);
        return result;
    }

    // Everything else needs an orientation.
    std::optional<Ellipse> ellipse;
    std::optional<ConicCoefficients> conic;
    double ellipse_angle = 0.0;
    if (cfg.angle_source == AngleSource::ellipse ||
        cfg.box_method == BoxMethod::ellipse_intersection) {
        try {
            conic = fit_ellipse(contour);
            ellipse = conic_to_ellipse(*conic);
        } catch (const fit_error&) {
            return minmax_fallback(mask, contour);
        }
        ellipse_angle = ellipse->angle;
        if (cfg.circular_theta_override &&
            ellipse->semi_minor / ellipse->semi_major > 0.99) {
            ellipse_angle = std::numbers::pi / 2.0;
        }
    }

    const double source_angle = cfg.angle_source == AngleSource::minrect
                                    ? rect_angle(min_area_rect(contour))
                                    : ellipse_angle;

    if (cfg.box_method == BoxMethod::minrect) {
        const Point2 anchor = ellipse ? ellipse->center : centroid(contour);
        BoxResult result = oriented_minmax_box(mask, contour, anchor, source_angle, cfg);
        result.ellipse = ellipse;
        result.conic = conic;
        return result;
    }

    // Full pipeline: align the major axis with +y, intersect the ellipse box
    // with the min-max box, refine, map back.
    const AffineTransform to_frame =
        rotation_about(ellipse->center, source_angle - std::numbers::pi / 2.0);
    const auto rotated = to_frame.apply(contour);
    const AxisAlignedBox g = ellipse_box(*ellipse);
    const AxisAlignedBox b = minmax_box(rotated).expanded(kCellHalo);

    AxisAlignedBox r;
    try {
        r = intersect_aab(g, b);
    } catch (const geometry_error&) {
        BoxResult result = minmax_fallback(mask, contour);
        result.ellipse = ellipse;
        result.conic = conic;
        return result;
    }
    if (cfg.refine) {
        r = refine_box(mask_membership(mask, to_frame), r, cfg.refine_cfg);
    }

    BoxResult result;
    result.polygon = to_frame.inverse().apply_polygon(box_to_polygon(r));
    result.ellipse = ellipse;
    result.conic = conic;
    result.angle_used = source_angle;
    return result;
}

std::vector<BoxResult> track_sequence(std::span<const BinaryMask> masks,
                                      const PipelineConfig& cfg,
                                      std::vector<double>* frame_millis) {
    if (masks.empty()) throw std::invalid_argument("track_sequence: no frames");
    for (const auto& m : masks) {
        if (m.width() != masks[0].width() || m.height() != masks[0].height()) {
            throw std::invalid_argument("track_sequence: frame dimensions differ");
        }
    }

    std::vector<BoxResult> results;
    results.reserve(masks.size());
    if (frame_millis) {
        frame_millis->clear();
        frame_millis->reserve(masks.size());
    }
    for (const auto& mask : masks) {
        const auto t0 = std::chrono::steady_clock::now();
        results.push_back(estimate_box(mask, cfg));
        const auto t1 = std::chrono::steady_clock::now();
        if (frame_millis) {
            frame_millis->push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
    }
    return results;
}

}  // namespace maskbox
