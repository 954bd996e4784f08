#include "gcw/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <opencv2/core.hpp>

namespace gcw {

void PyramidConfig::validate() const {
    if (n_scales < 1)
        throw std::invalid_argument("pyramid: n_scales must be >= 1");
    if (n_orientations < 2)
        throw std::invalid_argument("pyramid: n_orientations must be >= 2");
    if (n_scales > 20)
        throw std::invalid_argument("pyramid: n_scales too large");
}

std::size_t PyramidConfig::min_side() const {
    return std::size_t{1} << static_cast<unsigned>(n_scales + 2);
}

ComplexPyramid::ComplexPyramid(int n_scales, int n_orientations, std::vector<Band> bands)
    : n_scales_(n_scales), n_orientations_(n_orientations), bands_(std::move(bands)) {
    if (bands_.size() != static_cast<std::size_t>(n_scales) * static_cast<std::size_t>(n_orientations))
        throw std::invalid_argument("pyramid: band count does not match scales x orientations");
}

const Band& ComplexPyramid::band(int scale, int orientation) const {
    if (scale < 0 || scale >= n_scales_ || orientation < 0 || orientation >= n_orientations_)
        throw std::out_of_range("pyramid band (" + std::to_string(scale) + ", " +
                                std::to_string(orientation) + ") out of range");
    return bands_[static_cast<std::size_t>(scale * n_orientations_ + orientation)];
}

namespace {

/// Signed frequency of DFT bin `m` in a length-`n` transform.
long signed_frequency(std::size_t m, std::size_t n) {
    return m < (n + 1) / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

/// Normalization making the squared angular windows of a real steerable
/// pyramid sum to one: 2^(n-1) (n-1)! / sqrt(n (2(n-1))!).
double angular_gain(int n_orientations) {
    const int order = n_orientations - 1;
    const double log_value = order * std::log(2.0) + std::lgamma(order + 1.0) -
                             0.5 * (std::log(static_cast<double>(n_orientations)) +
                                    std::lgamma(2.0 * order + 1.0));
    return std::exp(log_value);
}

}  // namespace

FilterBank::FilterBank(std::size_t width, std::size_t height, const PyramidConfig& cfg)
    : width_(width), height_(height), cfg_(cfg) {
    cfg.validate();
    if (width < cfg.min_side() || height < cfg.min_side())
        throw std::invalid_argument("pyramid: image " + std::to_string(width) + "x" +
                                    std::to_string(height) + " smaller than " +
                                    std::to_string(cfg.min_side()) + " on a side for " +
                                    std::to_string(cfg.n_scales) + " scales");

    const double pi = std::numbers::pi;
    const double alpha = angular_gain(cfg.n_orientations);
    const int order = cfg.n_orientations - 1;

    for (int s = 0; s < cfg.n_scales; ++s) {
        const std::size_t div = std::size_t{1} << static_cast<unsigned>(s);
        const std::size_t bw = (width + div - 1) / div;
        const std::size_t bh = (height + div - 1) / div;
        const double peak = pi / static_cast<double>(2 * div);

        for (int o = 0; o < cfg.n_orientations; ++o) {
            const double theta_o = pi * o / cfg.n_orientations;
            BandFilter f{bw, bh, std::vector<std::size_t>(bw * bh), std::vector<double>(bw * bh)};
            for (std::size_t my = 0; my < bh; ++my) {
                const long fy = signed_frequency(my, bh);
                const std::size_t sy = static_cast<std::size_t>(fy < 0 ? fy + static_cast<long>(height) : fy);
                const double wy = 2 * pi * static_cast<double>(fy) / static_cast<double>(height);
                for (std::size_t mx = 0; mx < bw; ++mx) {
                    const long fx = signed_frequency(mx, bw);
                    const std::size_t sx = static_cast<std::size_t>(fx < 0 ? fx + static_cast<long>(width) : fx);
                    const double wx = 2 * pi * static_cast<double>(fx) / static_cast<double>(width);
                    const std::size_t at = my * bw + mx;
                    f.source[at] = sy * width + sx;

                    const double r = std::hypot(wx, wy);
                    double gain = 0.0;
                    if (r > 0.0) {
                        const double u = std::log2(r / peak);
                        const double dir = std::cos(std::atan2(wy, wx) - theta_o);
                        if (std::abs(u) < 1.0 && dir > 0.0)
                            gain = 2.0 * std::cos(0.5 * pi * u) * alpha * std::pow(dir, order);
                    }
                    f.gain[at] = gain;
                }
            }
            filters_.push_back(std::move(f));
        }
    }
}

ComplexPyramid FilterBank::analyze(const GrayImage& img) const {
    if (img.width() != width_ || img.height() != height_)
        throw std::invalid_argument("pyramid: image size differs from the filter bank's");

    const int w = static_cast<int>(width_);
    const int h = static_cast<int>(height_);
    cv::Mat spatial(h, w, CV_64FC1, const_cast<double*>(img.pixels().data()));
    cv::Mat spectrum;
    cv::dft(spatial, spectrum, cv::DFT_COMPLEX_OUTPUT);
    const auto* spec = reinterpret_cast<const Complex*>(spectrum.ptr<cv::Vec2d>(0));
    const double norm = 1.0 / (static_cast<double>(width_) * static_cast<double>(height_));

    std::vector<Band> bands;
    bands.reserve(filters_.size());
    for (const auto& f : filters_) {
        cv::Mat filtered(static_cast<int>(f.height), static_cast<int>(f.width), CV_64FC2);
        auto* dst = reinterpret_cast<Complex*>(filtered.ptr<cv::Vec2d>(0));
        for (std::size_t i = 0; i < f.gain.size(); ++i)
            dst[i] = f.gain[i] == 0.0 ? Complex{} : spec[f.source[i]] * f.gain[i];

        cv::Mat coeffs;
        cv::dft(filtered, coeffs, cv::DFT_INVERSE | cv::DFT_COMPLEX_OUTPUT);
        const auto* src = reinterpret_cast<const Complex*>(coeffs.ptr<cv::Vec2d>(0));

        Band b{f.width, f.height, std::vector<Complex>(f.gain.size())};
        for (std::size_t i = 0; i < b.coeffs.size(); ++i)
            b.coeffs[i] = src[i] * norm;
        bands.push_back(std::move(b));
    }
    return ComplexPyramid(cfg_.n_scales, cfg_.n_orientations, std::move(bands));
}

ComplexPyramid build_pyramid(const GrayImage& img, const PyramidConfig& cfg) {
    return FilterBank(img.width(), img.height(), cfg).analyze(img);
}

}  // namespace gcw
