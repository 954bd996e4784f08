#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gcw/image.hpp"

namespace gcw {

using Complex = std::complex<double>;

struct PyramidConfig {
    int n_scales = 2;
    int n_orientations = 6;

    /// Throws std::invalid_argument unless n_scales >= 1 and n_orientations >= 2.
    void validate() const;
    /// Smallest image side the configuration accepts: 2^(n_scales + 2).
    std::size_t min_side() const;
};

/// One oriented complex subband.
struct Band {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Complex> coeffs;  // row-major

    const Complex& at(std::size_t x, std::size_t y) const { return coeffs[y * width + x]; }
};

class ComplexPyramid {
public:
    ComplexPyramid(int n_scales, int n_orientations, std::vector<Band> bands);

    int n_scales() const noexcept { return n_scales_; }
    int n_orientations() const noexcept { return n_orientations_; }
    std::span<const Band> bands() const noexcept { return bands_; }

    /// Throws std::out_of_range for indices outside the pyramid.
    const Band& band(int scale, int orientation) const;

private:
    int n_scales_;
    int n_orientations_;
    std::vector<Band> bands_;  // scale-major
};

/// Frequency-domain oriented analytic filter bank for one image size.
///
/// Band (s, o) keeps frequencies with radius r in (pi/2^(s+2), pi/2^s),
/// weighted by cos(pi/2 * log2(r / (pi/2^(s+1)))), and directions within
/// 90 degrees of theta_o = pi*o/n_orientations, weighted by
/// cos(theta - theta_o)^(n_orientations-1). Only one half-plane is kept, so
/// the coefficients are analytic (complex). The filtered spectrum is cropped
/// to ceil(w/2^s) x ceil(h/2^s) before the inverse transform, which
/// low-passes and downsamples in one step. Boundaries are periodic.
///
/// A FilterBank is immutable once built and may be shared across threads.
class FilterBank {
public:
    FilterBank(std::size_t width, std::size_t height, const PyramidConfig& cfg);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    const PyramidConfig& config() const noexcept { return cfg_; }

    ComplexPyramid analyze(const GrayImage& img) const;

private:
    struct BandFilter {
        std::size_t width;
        std::size_t height;
        std::vector<std::size_t> source;  // index into the full spectrum
        std::vector<double> gain;
    };

    std::size_t width_;
    std::size_t height_;
    PyramidConfig cfg_;
    std::vector<BandFilter> filters_;
};

/// Builds the pyramid of `img`. Throws std::invalid_argument if the image
/// is smaller than cfg.min_side() on either axis.
ComplexPyramid build_pyramid(const GrayImage& img, const PyramidConfig& cfg = {});

}  // namespace gcw
