#pragma once

#include <filesystem>
#include <span>
#include <utility>

#include "emospace/emotion_space.hpp"
#include "emospace/interpret.hpp"

namespace emospace {

// Standalone SVG heatmap: one rect per cell on a diverging blue/white/red
// scale (-1 cold, 0 neutral, +1 warm), axis labels, the value printed to
// two decimals inside each cell, absent cells hatched.
void render_heatmap(const SimilarityMatrix& matrix,
                    const std::filesystem::path& path);

// Standalone SVG scatter of polarity words over two embedding dimensions:
// positive words as circles, negative words as triangles, each labeled.
void render_scatter_svg(std::span<const ScatterPoint> points,
                        std::pair<int, int> dims,
                        const std::filesystem::path& path);

}  // namespace emospace
