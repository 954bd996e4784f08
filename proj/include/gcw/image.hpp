#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace gcw {

/// Grayscale raster, row-major, intensities in [0, 1].
///
/// Construction validates the intensity range only. The 16x16 minimum
/// needed by the default wavelet depth is enforced where images enter the
/// system (load_image) and by the pyramid itself.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

    /// Image filled with a single value.
    static GrayImage filled(std::size_t width, std::size_t height, double value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
    std::span<const double> pixels() const noexcept { return pixels_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> pixels_;
};

inline constexpr std::size_t kMinImageSide = 16;

/// Decodes PNG, PGM, PPM or BMP. Color is reduced to luma with
/// 0.299 R + 0.587 G + 0.114 B; 8-bit samples are divided by 255 and 16-bit
/// samples by 65535. Throws DataError on unreadable/unsupported files or
/// images smaller than 16x16.
GrayImage load_image(const std::filesystem::path& path);

/// Writes an 8-bit image (PGM, PNG, ...; chosen by extension). Intensities
/// are quantized as round(255 * p).
void save_image(const GrayImage& img, const std::filesystem::path& path);

/// Circular shift by (dx, dy) pixels: out(x + dx, y + dy) = in(x, y).
GrayImage circular_shift(const GrayImage& img, long dx, long dy);

/// Area-averaged resampling to the requested size.
GrayImage resize(const GrayImage& img, std::size_t width, std::size_t height);

}  // namespace gcw
