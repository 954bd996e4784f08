#pragma once

#include <filesystem>

#include "gcw/distance_matrix.hpp"
#include "gcw/image.hpp"

namespace gcw {

/// n x n image with pixel (i, j) = min(1, scale * d(i, j) / max(d)).
/// Throws std::invalid_argument for an all-zero matrix or scale <= 0.
GrayImage heatmap(const DistanceMatrix& d, double scale = 1.0);

void write_heatmap(const DistanceMatrix& d, const std::filesystem::path& out, double scale = 1.0);

}  // namespace gcw
