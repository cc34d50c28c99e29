#pragma once

#include <span>
#include <string>

#include "maskbox/geometry.hpp"
#include "maskbox/mask.hpp"

namespace maskbox {

enum class OverlayRole { prediction, ground_truth, baseline };

struct OverlayPolygon {
    RotatedBox polygon;
    OverlayRole role = OverlayRole::prediction;
};

/// SVG overlay: the mask as a raster layer (one rect per foreground run) with
/// stroked polygon paths on top. Predictions are green, ground truth blue,
/// baselines magenta; baselines are drawn first, predictions last.
/// Output is byte-deterministic for identical inputs.
std::string render_overlay_svg(const BinaryMask& mask, std::span<const OverlayPolygon> overlays);

}  // namespace maskbox
