#pragma once

#include <optional>
#include <span>
#include <vector>

#include "maskbox/ellipse.hpp"
#include "maskbox/geometry.hpp"
#include "maskbox/mask.hpp"
#include "maskbox/refine.hpp"

namespace maskbox {

enum class AngleSource { ellipse, minrect };
enum class BoxMethod { ellipse_intersection, minrect, minmax };

struct PipelineConfig {
    AngleSource angle_source = AngleSource::ellipse;
    BoxMethod box_method = BoxMethod::ellipse_intersection;
    bool refine = false;
    RefineConfig refine_cfg{};
    /// Force angle = pi/2 when the fitted ellipse is near-circular
    /// (semi_minor/semi_major > 0.99). Off by default.
    bool circular_theta_override = false;
    /// Binarization threshold applied when masks are loaded from gray images.
    int mask_threshold = 127;
};

enum class Fallback { none, minmax, empty_mask };

struct BoxResult {
    RotatedBox polygon;                      // output box in image coordinates
    std::optional<Ellipse> ellipse;          // fitted ellipse, when one was used
    std::optional<ConicCoefficients> conic;  // its normalized conic coefficients
    double angle_used = 0.0;                 // orientation fed to the transform, [0, pi)
    Fallback fallback_applied = Fallback::none;
};

/// Mask -> rotated box: trace the contour, fit an ellipse, rotate the contour
/// so the major axis is vertical, intersect the ellipse box with the min-max
/// box, optionally refine, and map the result back. Alternate box methods and
/// angle sources select the baseline behaviours. Empty masks yield a zero-area
/// sentinel; degenerate fits and empty intersections fall back to the min-max
/// box in the original frame.
BoxResult estimate_box(const BinaryMask& mask, const PipelineConfig& cfg = {});

/// estimate_box per frame, order preserved. All frames must share dimensions.
/// When frame_millis is non-null it receives one wall-clock duration per frame.
std::vector<BoxResult> track_sequence(std::span<const BinaryMask> masks,
                                      const PipelineConfig& cfg = {},
                                      std::vector<double>* frame_millis = nullptr);

}  // namespace maskbox
