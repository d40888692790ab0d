#include "emospace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "emospace/text_io.hpp"

namespace emospace {

namespace {

struct Rgb {
    int r = 255, g = 255, b = 255;
};

// Diverging scale: -1 -> cold blue, 0 -> white, +1 -> warm red.
Rgb heat_color(double value) {
    const Rgb cold{33, 102, 172};
    const Rgb warm{178, 24, 43};
    const Rgb white{247, 247, 247};
    double v = std::clamp(value, -1.0, 1.0);
    const Rgb& end = (v < 0.0) ? cold : warm;
    double w = std::abs(v);
    auto mix = [&](int a, int b) {
        return static_cast<int>(std::lround((1.0 - w) * a + w * b));
    };
    return {mix(white.r, end.r), mix(white.g, end.g), mix(white.b, end.b)};
}

std::string fmt2(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return std::string(buf);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void render_heatmap(const SimilarityMatrix& matrix,
                    const std::filesystem::path& path) {
    const int n = matrix.size();
    const int cell = 56;
    const int margin_left = 110;
    const int margin_top = 96;
    const int width = margin_left + n * cell + 20;
    const int height = margin_top + n * cell + 20;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    svg << "  <defs>\n"
           "    <pattern id=\"hatch\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
           "      <rect width=\"6\" height=\"6\" fill=\"#e0e0e0\"/>\n"
           "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" "
           "stroke=\"#888888\" stroke-width=\"2\"/>\n"
           "    </pattern>\n"
           "  </defs>\n";
    svg << "  <rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    svg << "  <text x=\"" << margin_left << "\" y=\"24\" font-family=\"sans-serif\" "
           "font-size=\"15\" fill=\"#000000\">mean pairwise cosine ("
        << space_name(matrix.space) << " space)</text>\n";

    for (int j = 0; j < n; ++j) {
        const int cx = margin_left + j * cell + cell / 2;
        svg << "  <text x=\"" << cx << "\" y=\"" << (margin_top - 10)
            << "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"end\" fill=\"#000000\" transform=\"rotate(-40 "
            << cx << ' ' << (margin_top - 10) << ")\">"
            << xml_escape(matrix.labels[j]) << "</text>\n";
    }
    for (int i = 0; i < n; ++i) {
        const int cy = margin_top + i * cell + cell / 2 + 4;
        svg << "  <text x=\"" << (margin_left - 8) << "\" y=\"" << cy
            << "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"end\" fill=\"#000000\">"
            << xml_escape(matrix.labels[i]) << "</text>\n";
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int x = margin_left + j * cell;
            const int y = margin_top + i * cell;
            const auto& value = matrix.values[i][j];
            std::string fill;
            if (value) {
                Rgb c = heat_color(*value);
                char buf[16];
                std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
                fill = buf;
            } else {
                fill = "url(#hatch)";
            }
            svg << "  <rect class=\"cell\" x=\"" << x << "\" y=\"" << y
                << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"" << fill
                << "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
            if (value) {
                const char* text_fill =
                    std::abs(*value) > 0.55 ? "#ffffff" : "#000000";
                svg << "  <text x=\"" << (x + cell / 2) << "\" y=\""
                    << (y + cell / 2 + 4)
                    << "\" font-family=\"sans-serif\" font-size=\"11\" "
                       "text-anchor=\"middle\" fill=\""
                    << text_fill << "\">" << fmt2(*value) << "</text>\n";
            }
        }
    }
    svg << "</svg>\n";
    write_file(path, svg.str());
}

void render_scatter_svg(std::span<const ScatterPoint> points,
                        std::pair<int, int> dims,
                        const std::filesystem::path& path) {
    const int size = 560;
    const int margin = 56;
    const int plot = size - 2 * margin;

    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    if (!points.empty()) {
        min_x = max_x = points[0].x;
        min_y = max_y = points[0].y;
        for (const auto& p : points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    // Pad degenerate ranges so the mapping below stays finite.
    if (max_x - min_x < 1e-12) { min_x -= 1.0; max_x += 1.0; }
    if (max_y - min_y < 1e-12) { min_y -= 1.0; max_y += 1.0; }
    const double pad_x = 0.06 * (max_x - min_x);
    const double pad_y = 0.06 * (max_y - min_y);
    min_x -= pad_x; max_x += pad_x;
    min_y -= pad_y; max_y += pad_y;

    auto sx = [&](double x) {
        return margin + plot * (x - min_x) / (max_x - min_x);
    };
    auto sy = [&](double y) {
        return size - margin - plot * (y - min_y) / (max_y - min_y);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << ' '
        << size << "\">\n";
    svg << "  <rect width=\"" << size << "\" height=\"" << size
        << "\" fill=\"#ffffff\"/>\n";
    svg << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
        << plot << "\" height=\"" << plot
        << "\" fill=\"none\" stroke=\"#999999\"/>\n";
    svg << "  <text x=\"" << (size / 2) << "\" y=\"" << (size - 16)
        << "\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\" fill=\"#000000\">dimension "
        << dims.first << "</text>\n";
    svg << "  <text x=\"18\" y=\"" << (size / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\" fill=\"#000000\" transform=\"rotate(-90 18 "
        << (size / 2) << ")\">dimension " << dims.second << "</text>\n";

    for (const auto& p : points) {
        const double x = sx(p.x);
        const double y = sy(p.y);
        if (p.polarity == WordPolarity::positive) {
            svg << "  <circle class=\"pt\" cx=\"" << x << "\" cy=\"" << y
                << "\" r=\"5\" fill=\"#c43c39\" fill-opacity=\"0.85\"/>\n";
        } else {
            svg << "  <polygon class=\"pt\" points=\"" << x << ',' << (y - 6)
                << ' ' << (x - 5.2) << ',' << (y + 4) << ' ' << (x + 5.2)
                << ',' << (y + 4)
                << "\" fill=\"#3b6fb6\" fill-opacity=\"0.85\"/>\n";
        }
        svg << "  <text x=\"" << (x + 7) << "\" y=\"" << (y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"10\" "
               "fill=\"#333333\">"
            << xml_escape(p.word) << "</text>\n";
    }
    svg << "</svg>\n";
    write_file(path, svg.str());
}

}  // namespace emospace
