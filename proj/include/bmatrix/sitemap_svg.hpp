// Standalone SVG scatter of the neuron layout. Every neuron is a circle;
// active sites are filled with the color of their memory's activation
// level, and a neuron serving several memories is drawn as concentric
// rings (outermost ring = lowest memory index). Output carries no
// timestamps, so identical inputs give identical bytes.

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "bmatrix/core.hpp"
#include "bmatrix/io.hpp"
#include "bmatrix/sites.hpp"

namespace bmx {

namespace detail {

// Distinguishable fill colors, cycled when m exceeds the palette.
inline const char* site_color(std::size_t memory) {
    static constexpr const char* palette[] = {
        "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
        "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
        "#9a6324", "#fffac8", "#800000", "#aaffc3",
    };
    return palette[memory % (sizeof palette / sizeof palette[0])];
}

}  // namespace detail

/// Render the 2-D spread of active sites. 3-D layouts are rejected (no
/// projection is defined for them).
[[nodiscard]] inline std::string render_site_map_svg(const ProximityModel& prox,
                                                     const ActiveSiteMap& map) {
    if (prox.dims() != 2) {
        throw std::invalid_argument("site map: only 2-D geometries can be rendered");
    }
    const std::size_t n = prox.size();

    // owners[j] = memories for which neuron j is an active site, ascending.
    std::vector<std::vector<std::size_t>> owners(n);
    for (std::size_t i = 0; i < map.entries().size(); ++i) {
        for (std::size_t s : map.entry(i).sites) {
            if (s >= n) {
                throw std::invalid_argument("site map: site index outside the layout");
            }
            owners[s].push_back(i);
        }
    }

    double min_x = prox.position(0)[0], max_x = min_x;
    double min_y = prox.position(0)[1], max_y = min_y;
    for (std::size_t i = 1; i < n; ++i) {
        min_x = std::min(min_x, prox.position(i)[0]);
        max_x = std::max(max_x, prox.position(i)[0]);
        min_y = std::min(min_y, prox.position(i)[1]);
        max_y = std::max(max_y, prox.position(i)[1]);
    }

    const double plot_w = 480.0, plot_h = 480.0, margin = 40.0;
    const double legend_w = 190.0;
    const double width = margin * 2 + plot_w + legend_w;
    const double height = margin * 2 + plot_h;
    const double span_x = max_x > min_x ? max_x - min_x : 1.0;
    const double span_y = max_y > min_y ? max_y - min_y : 1.0;
    const auto px = [&](double x) { return margin + (x - min_x) / span_x * plot_w; };
    // SVG's y axis points down; flip so the layout reads like a plot.
    const auto py = [&](double y) { return margin + (max_y - y) / span_y * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << io::format_double(width)
        << "\" height=\"" << io::format_double(height) << "\" viewBox=\"0 0 "
        << io::format_double(width) << ' ' << io::format_double(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double base_radius = 9.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double cx = px(prox.position(j)[0]);
        const double cy = py(prox.position(j)[1]);
        if (owners[j].empty()) {
            svg << "<circle cx=\"" << io::format_double(cx) << "\" cy=\"" << io::format_double(cy)
                << "\" r=\"" << io::format_double(base_radius)
                << "\" fill=\"white\" stroke=\"#999999\"/>\n";
            continue;
        }
        for (std::size_t rank = 0; rank < owners[j].size(); ++rank) {
            const double radius = std::max(base_radius - 3.0 * static_cast<double>(rank), 2.0);
            svg << "<circle cx=\"" << io::format_double(cx) << "\" cy=\"" << io::format_double(cy)
                << "\" r=\"" << io::format_double(radius) << "\" fill=\""
                << detail::site_color(owners[j][rank]) << "\" stroke=\"#333333\"/>\n";
        }
    }

    // Legend: one swatch per memory, labeled with its activation level.
    const double lx = margin + plot_w + 30.0;
    for (std::size_t i = 0; i < map.entries().size(); ++i) {
        const double ly = margin + 18.0 * static_cast<double>(i);
        svg << "<rect x=\"" << io::format_double(lx) << "\" y=\"" << io::format_double(ly)
            << "\" width=\"12\" height=\"12\" fill=\"" << detail::site_color(i) << "\"/>\n";
        svg << "<text x=\"" << io::format_double(lx + 18.0) << "\" y=\""
            << io::format_double(ly + 11.0)
            << "\" font-family=\"monospace\" font-size=\"12\">memory " << i << " (level "
            << map.level_of(i) << ")</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace bmx
