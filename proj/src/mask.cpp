#include "maskbox/mask.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "maskbox/errors.hpp"

namespace maskbox {

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)), foreground_count_(0) {
    if (width_ <= 0 || height_ <= 0) {
        throw std::invalid_argument("BinaryMask: dimensions must be positive");
    }
    if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
        throw std::invalid_argument("BinaryMask: cell count does not match dimensions");
    }
    for (auto& c : cells_) {
        if (c != 0) {
            c = 1;
            ++foreground_count_;
        }
    }
}

BinaryMask BinaryMask::solid(int width, int height, bool fg) {
    return BinaryMask(width, height,
                      std::vector<std::uint8_t>(
                          static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                          fg ? 1 : 0));
}

bool BinaryMask::contains(const Point2& p) const {
    if (!finite(p)) return false;
    const long ix = std::lround(p.x);
    const long iy = std::lround(p.y);
    if (ix < 0 || iy < 0 || ix >= width_ || iy >= height_) return false;
    return foreground(static_cast<int>(ix), static_cast<int>(iy));
}

namespace {

// Clockwise 8-neighborhood in image coordinates (y down):
// 0:E 1:SE 2:S 3:SW 4:W 5:NW 6:N 7:NE
constexpr int kDx[8] = {+1, +1, 0, -1, -1, -1, 0, +1};
constexpr int kDy[8] = {0, +1, +1, +1, 0, -1, -1, -1};

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

int direction_from_delta(int dx, int dy) {
    for (int d = 0; d < 8; ++d) {
        if (kDx[d] == dx && kDy[d] == dy) return d;
    }
    return -1;
}

// Flood-fills 8-connected components and returns a flag grid for the largest
// one. Ties go to the component discovered first in row-major order.
std::vector<std::uint8_t> largest_component(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    const std::size_t total = static_cast<std::size_t>(w) * h;
    std::vector<int> label(total, -1);
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (!mask.foreground(x, y) || label[idx] >= 0) continue;
            const int comp = static_cast<int>(sizes.size());
            std::size_t count = 0;
            stack.clear();
            stack.push_back(idx);
            label[idx] = comp;
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                ++count;
                const int cx = static_cast<int>(cur % w);
                const int cy = static_cast<int>(cur / w);
                for (int d = 0; d < 8; ++d) {
                    const int nx = cx + kDx[d];
                    const int ny = cy + kDy[d];
                    if (!mask.foreground(nx, ny)) continue;
                    const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                    if (label[nidx] >= 0) continue;
                    label[nidx] = comp;
                    stack.push_back(nidx);
                }
            }
            sizes.push_back(count);
        }
    }

    int best = 0;
    for (int i = 1; i < static_cast<int>(sizes.size()); ++i) {
        if (sizes[i] > sizes[best]) best = i;
    }
    std::vector<std::uint8_t> selected(total, 0);
    for (std::size_t i = 0; i < total; ++i) selected[i] = label[i] == best ? 1 : 0;
    return selected;
}

}  // namespace

ContourPointSet extract_contour(const BinaryMask& mask) {
    if (mask.foreground_count() == 0) {
        throw no_target_error("mask has no foreground: no target to box");
    }

    const int w = mask.width();
    const int h = mask.height();
    const auto selected = largest_component(mask);
    auto is_fg = [&](int x, int y) {
        return x >= 0 && x < w && y >= 0 && y < h &&
               selected[static_cast<std::size_t>(y) * w + x] != 0;
    };

    // Start at the component's topmost, then leftmost cell.
    Cell start{-1, -1};
    for (int y = 0; y < h && start.x < 0; ++y) {
        for (int x = 0; x < w; ++x) {
            if (is_fg(x, y)) {
                start = {x, y};
                break;
            }
        }
    }

    std::vector<Cell> loop;
    bool isolated = true;
    for (int d = 0; d < 8; ++d) {
        if (is_fg(start.x + kDx[d], start.y + kDy[d])) {
            isolated = false;
            break;
        }
    }

    if (isolated) {
        loop.push_back(start);
    } else {
        // Moore neighbor tracing: scan clockwise from the cell after the
        // backtrack; the backtrack becomes the last background cell passed.
        auto step = [&](const Cell& p, const Cell& back) -> std::pair<Cell, Cell> {
            int back_dir = direction_from_delta(back.x - p.x, back.y - p.y);
            if (back_dir < 0) back_dir = 4;  // cannot happen after the first step
            for (int t = 1; t <= 8; ++t) {
                const int d = (back_dir + t) & 7;
                const int nx = p.x + kDx[d];
                const int ny = p.y + kDy[d];
                if (is_fg(nx, ny)) {
                    const int prev = (d + 7) & 7;
                    return {{nx, ny}, {p.x + kDx[prev], p.y + kDy[prev]}};
                }
            }
            return {p, back};
        };

        const std::size_t safety = 4 * static_cast<std::size_t>(w) * h + 8;
        Cell back{start.x - 1, start.y};  // west of start; background by construction
        loop.push_back(start);
        auto [cur, cur_back] = step(start, back);
        while (!(cur == start) && loop.size() < safety) {
            loop.push_back(cur);
            std::tie(cur, cur_back) = step(cur, cur_back);
        }
    }

    // Keep only cells on the 4-connected boundary; the trace can in principle
    // touch inner corners whose background contact is diagonal only.
    std::erase_if(loop, [&](const Cell& c) {
        return mask.foreground(c.x - 1, c.y) && mask.foreground(c.x + 1, c.y) &&
               mask.foreground(c.x, c.y - 1) && mask.foreground(c.x, c.y + 1);
    });

    // Clockwise in image coordinates means positive shoelace sum (y down).
    long long twice_area = 0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Cell& p = loop[i];
        const Cell& q = loop[(i + 1) % loop.size()];
        twice_area += static_cast<long long>(p.x) * q.y - static_cast<long long>(q.x) * p.y;
    }
    if (twice_area < 0) std::reverse(loop.begin(), loop.end());

    // Deterministic start: smallest (y, x).
    std::size_t first = 0;
    for (std::size_t i = 1; i < loop.size(); ++i) {
        if (loop[i].y < loop[first].y ||
            (loop[i].y == loop[first].y && loop[i].x < loop[first].x)) {
            first = i;
        }
    }
    std::rotate(loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(first), loop.end());

    ContourPointSet contour;
    contour.points.reserve(loop.size());
    for (const Cell& c : loop) {
        contour.points.push_back({static_cast<double>(c.x), static_cast<double>(c.y)});
    }
    return contour;
}

}  // namespace maskbox
