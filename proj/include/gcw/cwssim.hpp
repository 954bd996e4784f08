#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcw/image.hpp"
#include "gcw/wavelet.hpp"

namespace gcw {

struct CwSsimConfig {
    double K = 0.01;
    int window = 7;
    int stride = 1;
    PyramidConfig pyramid;

    /// Throws std::invalid_argument unless K > 0, window is odd and >= 3,
    /// and stride >= 1.
    void validate() const;
};

/// Local index over two coefficient sets taken at the same place:
///   (2 |sum cx conj(cy)| + K) / (sum |cx|^2 + sum |cy|^2 + K)
double local_cwssim(std::span<const Complex> cx, std::span<const Complex> cy, double K);

/// Windows per band: ceil((w - window + 1) / stride) * ceil((h - window + 1) / stride),
/// or 0 when the band is smaller than the window.
std::size_t window_count(std::size_t band_width, std::size_t band_height, const CwSsimConfig& cfg);

/// Pyramid of one image plus its per-window coefficient energies, so that
/// comparing two images only needs the cross term. Built once per image
/// and then shared read-only.
class CwSsimFeatures {
public:
    CwSsimFeatures(ComplexPyramid pyramid, const CwSsimConfig& cfg);

    const ComplexPyramid& pyramid() const noexcept { return pyramid_; }
    std::span<const double> energies(std::size_t band) const { return energies_[band]; }
    std::size_t total_windows() const noexcept { return total_windows_; }

private:
    ComplexPyramid pyramid_;
    std::vector<std::vector<double>> energies_;
    std::size_t total_windows_ = 0;
};

CwSsimFeatures make_features(const GrayImage& img, const FilterBank& bank, const CwSsimConfig& cfg);

/// Unweighted mean of the local index over every window position of every
/// band. Both feature sets must come from the same configuration.
double global_cwssim(const CwSsimFeatures& x, const CwSsimFeatures& y, const CwSsimConfig& cfg);

/// Throws std::invalid_argument on dimension mismatch or when no band is
/// large enough to hold a single window.
double global_cwssim(const GrayImage& x, const GrayImage& y, const CwSsimConfig& cfg = {});

/// 1 - global_cwssim(x, y), floored at 0.
double cwssim_distance(const GrayImage& x, const GrayImage& y, const CwSsimConfig& cfg = {});

}  // namespace gcw
