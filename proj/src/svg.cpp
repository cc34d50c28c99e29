#include "maskbox/svg.hpp"

#include <cstdarg>
#include <cstdio>
#include <string>

namespace maskbox {

namespace {

const char* role_color(OverlayRole role) {
    switch (role) {
        case OverlayRole::prediction: return "#00c800";
        case OverlayRole::ground_truth: return "#0064ff";
        case OverlayRole::baseline: default: return "#ff00ff";
    }
}

void append_format(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

}  // namespace

std::string render_overlay_svg(const BinaryMask& mask, std::span<const OverlayPolygon> overlays) {
    const int w = mask.width();
    const int h = mask.height();

    std::string svg;
    svg.reserve(4096);
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    append_format(svg,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.5 -0.5 %d %d\" "
                  "width=\"%d\" height=\"%d\">\n",
                  w, h, w, h);
    append_format(svg, "<rect x=\"-0.5\" y=\"-0.5\" width=\"%d\" height=\"%d\" fill=\"#1a1a1a\"/>\n",
                  w, h);

    // Foreground raster as one rect per horizontal run; cells are unit squares
    // centered on integer coordinates.
    for (int y = 0; y < h; ++y) {
        int run_start = -1;
        for (int x = 0; x <= w; ++x) {
            const bool fg = x < w && mask.foreground(x, y);
            if (fg && run_start < 0) run_start = x;
            if (!fg && run_start >= 0) {
                append_format(svg,
                              "<rect x=\"%.1f\" y=\"%.1f\" width=\"%d\" height=\"1\" "
                              "fill=\"#e8e8e8\"/>\n",
                              run_start - 0.5, y - 0.5, x - run_start);
                run_start = -1;
            }
        }
    }

    // Baselines under ground truth under predictions.
    constexpr OverlayRole kDrawOrder[] = {OverlayRole::baseline, OverlayRole::ground_truth,
                                          OverlayRole::prediction};
    for (OverlayRole role : kDrawOrder) {
        for (const auto& overlay : overlays) {
            if (overlay.role != role) continue;
            const auto& c = overlay.polygon.corners;
            append_format(svg,
                          "<path d=\"M %.3f %.3f L %.3f %.3f L %.3f %.3f L %.3f %.3f Z\" "
                          "fill=\"none\" stroke=\"%s\" stroke-width=\"1\"/>\n",
                          c[0].x, c[0].y, c[1].x, c[1].y, c[2].x, c[2].y, c[3].x, c[3].y,
                          role_color(role));
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace maskbox
