#include "gcw/cwssim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcw {

void CwSsimConfig::validate() const {
    if (!(K > 0.0))
        throw std::invalid_argument("cwssim: K must be > 0");
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("cwssim: window must be odd and >= 3");
    if (stride < 1)
        throw std::invalid_argument("cwssim: stride must be >= 1");
    pyramid.validate();
}

double local_cwssim(std::span<const Complex> cx, std::span<const Complex> cy, double K) {
    if (cx.size() != cy.size())
        throw std::invalid_argument("local_cwssim: coefficient sets differ in length");
    if (cx.empty())
        throw std::invalid_argument("local_cwssim: empty coefficient sets");
    if (!(K > 0.0))
        throw std::invalid_argument("local_cwssim: K must be > 0");

    Complex cross{};
    double ex = 0.0, ey = 0.0;
    for (std::size_t i = 0; i < cx.size(); ++i) {
        cross += cx[i] * std::conj(cy[i]);
        ex += std::norm(cx[i]);
        ey += std::norm(cy[i]);
    }
    return (2.0 * std::abs(cross) + K) / (ex + ey + K);
}

namespace {

struct WindowGrid {
    std::size_t nx = 0;
    std::size_t ny = 0;
};

WindowGrid grid_for(std::size_t bw, std::size_t bh, const CwSsimConfig& cfg) {
    const auto win = static_cast<std::size_t>(cfg.window);
    const auto stride = static_cast<std::size_t>(cfg.stride);
    if (bw < win || bh < win)
        return {};
    return {(bw - win) / stride + 1, (bh - win) / stride + 1};
}

/// Sum of `values` over every window position: a horizontal pass per row,
/// then a vertical pass over the row sums. Energies and cross terms go
/// through this same routine, so identical inputs give identical sums.
void window_sums(const double* values, std::size_t bw, std::size_t bh, const WindowGrid& grid,
                 const CwSsimConfig& cfg, std::vector<double>& rows, std::vector<double>& out) {
    const auto win = static_cast<std::size_t>(cfg.window);
    const auto stride = static_cast<std::size_t>(cfg.stride);
    rows.resize(bh * grid.nx);
    for (std::size_t y = 0; y < bh; ++y) {
        const double* row = values + y * bw;
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const double* p = row + ix * stride;
            double s = 0.0;
            for (std::size_t d = 0; d < win; ++d)
                s += p[d];
            rows[y * grid.nx + ix] = s;
        }
    }
    out.resize(grid.nx * grid.ny);
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            double s = 0.0;
            for (std::size_t d = 0; d < win; ++d)
                s += rows[(iy * stride + d) * grid.nx + ix];
            out[iy * grid.nx + ix] = s;
        }
    }
}

}  // namespace

std::size_t window_count(std::size_t band_width, std::size_t band_height, const CwSsimConfig& cfg) {
    const auto g = grid_for(band_width, band_height, cfg);
    return g.nx * g.ny;
}

CwSsimFeatures::CwSsimFeatures(ComplexPyramid pyramid, const CwSsimConfig& cfg)
    : pyramid_(std::move(pyramid)) {
    cfg.validate();
    std::vector<double> power, rows;
    for (const Band& b : pyramid_.bands()) {
        const auto grid = grid_for(b.width, b.height, cfg);
        power.resize(b.coeffs.size());
        for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
            const double re = b.coeffs[i].real(), im = b.coeffs[i].imag();
            power[i] = re * re + im * im;
        }
        std::vector<double> sums;
        window_sums(power.data(), b.width, b.height, grid, cfg, rows, sums);
        total_windows_ += sums.size();
        energies_.push_back(std::move(sums));
    }
}

CwSsimFeatures make_features(const GrayImage& img, const FilterBank& bank, const CwSsimConfig& cfg) {
    return CwSsimFeatures(bank.analyze(img), cfg);
}

double global_cwssim(const CwSsimFeatures& x, const CwSsimFeatures& y, const CwSsimConfig& cfg) {
    const auto xb = x.pyramid().bands();
    const auto yb = y.pyramid().bands();
    if (xb.size() != yb.size())
        throw std::invalid_argument("global_cwssim: pyramids differ in band count");
    if (x.total_windows() == 0)
        throw std::invalid_argument("global_cwssim: every band is smaller than the " +
                                    std::to_string(cfg.window) + "x" + std::to_string(cfg.window) +
                                    " window");

    thread_local std::vector<double> cross_re, cross_im, rows, sum_re, sum_im;
    double total = 0.0;
    for (std::size_t b = 0; b < xb.size(); ++b) {
        const Band& bx = xb[b];
        const Band& by = yb[b];
        if (bx.width != by.width || bx.height != by.height)
            throw std::invalid_argument("global_cwssim: band dimensions differ");
        const auto grid = grid_for(bx.width, bx.height, cfg);
        if (grid.nx == 0)
            continue;

        // cx * conj(cy), written out so that swapping x and y yields the
        // exact conjugate.
        const std::size_t m = bx.coeffs.size();
        cross_re.resize(m);
        cross_im.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double ar = bx.coeffs[i].real(), ai = bx.coeffs[i].imag();
            const double br = by.coeffs[i].real(), bi = by.coeffs[i].imag();
            cross_re[i] = ar * br + ai * bi;
            cross_im[i] = ai * br - ar * bi;
        }
        window_sums(cross_re.data(), bx.width, bx.height, grid, cfg, rows, sum_re);
        window_sums(cross_im.data(), bx.width, bx.height, grid, cfg, rows, sum_im);

        const auto ex = x.energies(b);
        const auto ey = y.energies(b);
        for (std::size_t w = 0; w < sum_re.size(); ++w)
            total += (2.0 * std::hypot(sum_re[w], sum_im[w]) + cfg.K) / (ex[w] + ey[w] + cfg.K);
    }
    return total / static_cast<double>(x.total_windows());
}

double global_cwssim(const GrayImage& x, const GrayImage& y, const CwSsimConfig& cfg) {
    cfg.validate();
    if (x.width() != y.width() || x.height() != y.height())
        throw std::invalid_argument("global_cwssim: image dimensions differ");
    const FilterBank bank(x.width(), x.height(), cfg.pyramid);
    return global_cwssim(make_features(x, bank, cfg), make_features(y, bank, cfg), cfg);
}

double cwssim_distance(const GrayImage& x, const GrayImage& y, const CwSsimConfig& cfg) {
    // The index cannot exceed 1; rounding at identical inputs may push it an ulp over.
    return std::max(0.0, 1.0 - global_cwssim(x, y, cfg));
}

}  // namespace gcw
