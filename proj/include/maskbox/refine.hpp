#pragma once

#include <functional>

#include "maskbox/geometry.hpp"

namespace maskbox {

/// Box-slimming parameters. An edge keeps moving inward while the fraction of
/// its length overlapping the mask is <= factor, up to max_shrink_fraction of
/// the original box dimension.
struct RefineConfig {
    double factor = 0.258;
    double step = 1.0;                 // pixels per move
    double max_shrink_fraction = 0.5;  // per edge, of the original dimension
    bool freeze_alpha = false;         // measure alpha on the original box instead of the current one
};

enum class BoxEdge { left, top, right, bottom };

struct EdgeCoverage {
    double alpha = 0;  // geometric edge length
    double beta = 0;   // covered length: foreground samples x sample spacing
};

/// Foreground query in the same frame as the box being refined.
using MembershipFn = std::function<bool(const Point2&)>;

/// Samples the edge at the centers of unit segments (spacing 1 px; a single
/// midpoint sample for edges shorter than 1 px).
EdgeCoverage edge_coverage(const MembershipFn& inside, const AxisAlignedBox& box, BoxEdge edge);

/// Sweeps edges in the order left, top, right, bottom, moving each inward by
/// cfg.step while beta <= alpha * cfg.factor, until a full sweep makes no move.
/// Per-edge travel is capped at cfg.max_shrink_fraction of the original
/// dimension, which bounds the iteration count. Output is contained in the
/// input box. Throws std::invalid_argument on out-of-range config values.
AxisAlignedBox refine_box(const MembershipFn& inside, const AxisAlignedBox& box,
                          const RefineConfig& cfg);

}  // namespace maskbox
