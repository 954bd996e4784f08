#pragma once

#include <cstddef>
#include <cstdint>

#include "gcw/dataset.hpp"
#include "gcw/image.hpp"

namespace gcw {

inline constexpr double kSynthBackground = 0.5;

/// Rotates about the image center by `degrees` (counter-clockwise as
/// displayed) with bilinear interpolation; pixels whose source falls
/// outside the image take `fill`.
GrayImage rotate_bilinear(const GrayImage& img, double degrees, double fill = kSynthBackground);

/// Offline stand-in for a turntable capture: `n_objects` seeded random
/// textured blobs, each shown at `n_angles` equally spaced in-plane
/// rotations on a mid-gray background. Image i of an object is rotated by
/// i * 360 / n_angles degrees. Identical arguments give bit-identical output.
LabeledDataset synth_rotated_set(std::size_t n_objects, std::size_t n_angles, std::size_t size,
                                 std::uint64_t seed);

}  // namespace gcw
