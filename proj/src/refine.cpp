#include "maskbox/refine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace maskbox {

namespace {

struct EdgeSegment {
    Point2 start;
    Point2 direction;  // unit vector along the edge
    double len = 0;
};

EdgeSegment edge_segment(const AxisAlignedBox& box, BoxEdge edge) {
    switch (edge) {
        case BoxEdge::left:
            return {{box.x_min, box.y_min}, {0.0, 1.0}, box.height()};
        case BoxEdge::right:
            return {{box.x_max, box.y_min}, {0.0, 1.0}, box.height()};
        case BoxEdge::top:
            return {{box.x_min, box.y_min}, {1.0, 0.0}, box.width()};
        case BoxEdge::bottom:
        default:
            return {{box.x_min, box.y_max}, {1.0, 0.0}, box.width()};
    }
}

bool horizontal_move(BoxEdge edge) { return edge == BoxEdge::left || edge == BoxEdge::right; }

}  // namespace

EdgeCoverage edge_coverage(const MembershipFn& inside, const AxisAlignedBox& box, BoxEdge edge) {
    const EdgeSegment seg = edge_segment(box, edge);
    EdgeCoverage cov;
    cov.alpha = seg.len;

    const int full_segments = static_cast<int>(std::floor(seg.len));
    if (full_segments >= 1) {
        int hits = 0;
        for (int k = 0; k < full_segments; ++k) {
            const Point2 sample = seg.start + seg.direction * (k + 0.5);
            if (inside(sample)) ++hits;
        }
        cov.beta = static_cast<double>(hits);
    } else if (seg.len > 0.0) {
        // Sub-pixel edge: single midpoint sample weighted by the edge length.
        cov.beta = inside(seg.start + seg.direction * (seg.len / 2.0)) ? seg.len : 0.0;
    }
    return cov;
}

AxisAlignedBox refine_box(const MembershipFn& inside, const AxisAlignedBox& box,
                          const RefineConfig& cfg) {
    if (!(cfg.factor > 0.0 && cfg.factor < 1.0)) {
        throw std::invalid_argument("refine: factor must be in (0, 1)");
    }
    if (!(cfg.step > 0.0)) throw std::invalid_argument("refine: step must be positive");
    if (!(cfg.max_shrink_fraction > 0.0 && cfg.max_shrink_fraction <= 0.5)) {
        throw std::invalid_argument("refine: max_shrink_fraction must be in (0, 0.5]");
    }
    if (box.width() < 0.0 || box.height() < 0.0) {
        throw std::invalid_argument("refine: degenerate box");
    }

    constexpr std::array<BoxEdge, 4> kOrder{BoxEdge::left, BoxEdge::top, BoxEdge::right,
                                            BoxEdge::bottom};

    AxisAlignedBox cur = box;
    std::array<double, 4> moved{0.0, 0.0, 0.0, 0.0};
    const double cap_x = cfg.max_shrink_fraction * box.width();
    const double cap_y = cfg.max_shrink_fraction * box.height();

    bool any_move = true;
    while (any_move) {
        any_move = false;
        for (std::size_t i = 0; i < kOrder.size(); ++i) {
            const BoxEdge edge = kOrder[i];
            const double cap = horizontal_move(edge) ? cap_x : cap_y;
            if (moved[i] >= cap - 1e-12) continue;

            const EdgeCoverage cov = edge_coverage(inside, cur, edge);
            const double alpha = cfg.freeze_alpha
                                     ? (horizontal_move(edge) ? box.height() : box.width())
                                     : cov.alpha;
            if (cov.beta > alpha * cfg.factor) continue;

            const double delta = std::min(cfg.step, cap - moved[i]);
            switch (edge) {
                case BoxEdge::left: cur.x_min += delta; break;
                case BoxEdge::top: cur.y_min += delta; break;
                case BoxEdge::right: cur.x_max -= delta; break;
                case BoxEdge::bottom: cur.y_max -= delta; break;
            }
            moved[i] += delta;
            any_move = true;
        }
    }
    return cur;
}

}  // namespace maskbox
