#include "gcw/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "gcw/errors.hpp"

namespace gcw {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width == 0 || height == 0)
        throw std::invalid_argument("GrayImage: empty image");
    if (pixels_.size() != width * height)
        throw std::invalid_argument("GrayImage: pixel count does not match " +
                                    std::to_string(width) + "x" + std::to_string(height));
    for (double p : pixels_)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("GrayImage: intensity outside [0, 1]");
}

GrayImage GrayImage::filled(std::size_t width, std::size_t height, double value) {
    return GrayImage(width, height, std::vector<double>(width * height, value));
}

namespace {

bool supported_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm" || ext == ".bmp";
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path))
        throw DataError("cannot read image: " + path.string());
    if (!supported_extension(path))
        throw DataError("unsupported image format: " + path.string());

    const cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED | cv::IMREAD_ANYDEPTH);
    if (raw.empty())
        throw DataError("failed to decode image: " + path.string());

    double full_scale;
    switch (raw.depth()) {
    case CV_8U: full_scale = 255.0; break;
    case CV_16U: full_scale = 65535.0; break;
    default: throw DataError("unsupported sample depth: " + path.string());
    }

    const auto width = static_cast<std::size_t>(raw.cols);
    const auto height = static_cast<std::size_t>(raw.rows);
    if (width < kMinImageSide || height < kMinImageSide)
        throw DataError("image smaller than 16x16: " + path.string());

    cv::Mat samples;
    raw.convertTo(samples, CV_64F);
    const int channels = samples.channels();
    if (channels != 1 && channels != 3 && channels != 4)
        throw DataError("unsupported channel count: " + path.string());

    std::vector<double> pixels(width * height);
    for (int y = 0; y < samples.rows; ++y) {
        const double* row = samples.ptr<double>(y);
        for (int x = 0; x < samples.cols; ++x) {
            const double* px = row + x * channels;
            // OpenCV stores color as BGR(A).
            const double v =
                (channels == 1 ? px[0] : 0.299 * px[2] + 0.587 * px[1] + 0.114 * px[0]) / full_scale;
            pixels[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)] =
                std::clamp(v, 0.0, 1.0);
        }
    }
    return GrayImage(width, height, std::move(pixels));
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
    cv::Mat out(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC1);
    for (std::size_t y = 0; y < img.height(); ++y) {
        auto* row = out.ptr<unsigned char>(static_cast<int>(y));
        for (std::size_t x = 0; x < img.width(); ++x)
            row[x] = static_cast<unsigned char>(std::lround(img.at(x, y) * 255.0));
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), out);
    } catch (const cv::Exception& e) {
        throw DataError("cannot write image " + path.string() + ": " + e.what());
    }
    if (!ok)
        throw DataError("cannot write image: " + path.string());
}

GrayImage circular_shift(const GrayImage& img, long dx, long dy) {
    const auto w = static_cast<long>(img.width());
    const auto h = static_cast<long>(img.height());
    std::vector<double> out(img.size());
    for (long y = 0; y < h; ++y) {
        const long ty = ((y + dy) % h + h) % h;
        for (long x = 0; x < w; ++x) {
            const long tx = ((x + dx) % w + w) % w;
            out[static_cast<std::size_t>(ty * w + tx)] = img.at(static_cast<std::size_t>(x),
                                                                static_cast<std::size_t>(y));
        }
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage resize(const GrayImage& img, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0)
        throw std::invalid_argument("resize: empty target size");
    if (width == img.width() && height == img.height())
        return img;
    cv::Mat src(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_64FC1,
                const_cast<double*>(img.pixels().data()));
    cv::Mat dst;
    cv::resize(src, dst, cv::Size(static_cast<int>(width), static_cast<int>(height)), 0, 0,
               cv::INTER_AREA);
    std::vector<double> pixels(width * height);
    for (int y = 0; y < dst.rows; ++y)
        for (int x = 0; x < dst.cols; ++x)
            pixels[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)] =
                std::clamp(dst.at<double>(y, x), 0.0, 1.0);
    return GrayImage(width, height, std::move(pixels));
}

}  // namespace gcw
