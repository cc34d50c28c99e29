#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "maskbox/point.hpp"

namespace maskbox {

/// Immutable binary occupancy grid. Cell (ix, iy) corresponds to the
/// continuous point (x=ix, y=iy); cells are unit squares around their centers.
class BinaryMask {
public:
    BinaryMask(int width, int height, std::vector<std::uint8_t> cells);

    static BinaryMask solid(int width, int height, bool foreground);

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(int ix, int iy) const {
        return ix >= 0 && ix < width_ && iy >= 0 && iy < height_;
    }

    /// Out-of-bounds cells read as background.
    bool foreground(int ix, int iy) const {
        return in_bounds(ix, iy) && cells_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
    }

    std::size_t foreground_count() const { return foreground_count_; }

    /// True iff p rounds to an in-bounds foreground cell.
    bool contains(const Point2& p) const;

    std::span<const std::uint8_t> cells() const { return cells_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> cells_;
    std::size_t foreground_count_;
};

/// Ordered boundary loop of a mask's largest foreground component
/// (cell centers, clockwise in image coordinates).
struct ContourPointSet {
    std::vector<Point2> points;
};

/// Load a mask from a PGM (P2/P5), grayscale PNG or ASCII .grid file.
/// Gray values > threshold become foreground; .grid files carry 0/1 directly.
/// Throws io_error on unreadable files, unsupported formats or zero dimensions.
BinaryMask load_mask(const std::filesystem::path& path, int threshold = 127);

/// ASCII fixture format: "width height" on the first line, then 0/1 tokens.
BinaryMask parse_grid(std::istream& in);

/// Boundary of the largest 8-connected foreground component as a closed
/// ordered loop (Moore neighbor tracing, clockwise, deterministic start).
/// Throws no_target_error when the mask is empty.
ContourPointSet extract_contour(const BinaryMask& mask);

}  // namespace maskbox
