#include "gcw/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcw/rng.hpp"

namespace gcw {

GrayImage rotate_bilinear(const GrayImage& img, double degrees, double fill) {
    const double theta = degrees * std::numbers::pi / 180.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto w = static_cast<long>(img.width());
    const auto h = static_cast<long>(img.height());
    const double cx = 0.5 * static_cast<double>(w - 1);
    const double cy = 0.5 * static_cast<double>(h - 1);

    auto sample = [&](long x, long y) {
        if (x < 0 || y < 0 || x >= w || y >= h)
            return fill;
        return img.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
    };

    std::vector<double> out(img.size());
    for (long y = 0; y < h; ++y) {
        for (long x = 0; x < w; ++x) {
            // Inverse map of a counter-clockwise (as displayed, y down) rotation.
            const double qx = static_cast<double>(x) - cx;
            const double qy = static_cast<double>(y) - cy;
            const double sx = qx * c - qy * s + cx;
            const double sy = qx * s + qy * c + cy;
            const double fx = std::floor(sx);
            const double fy = std::floor(sy);
            const double ax = sx - fx;
            const double ay = sy - fy;
            const auto x0 = static_cast<long>(fx);
            const auto y0 = static_cast<long>(fy);
            const double v = (1 - ay) * ((1 - ax) * sample(x0, y0) + ax * sample(x0 + 1, y0)) +
                             ay * ((1 - ax) * sample(x0, y0 + 1) + ax * sample(x0 + 1, y0 + 1));
            out[static_cast<std::size_t>(y * w + x)] = std::clamp(v, 0.0, 1.0);
        }
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// No multiples of four, so a quarter turn never maps the arms onto themselves.
constexpr std::array<double, 7> kArmCounts{5, 6, 7, 9, 10, 11, 13};

// Edge contrast against the background; also dealt so that objects differ.
constexpr std::array<double, 5> kContrasts{0.018, 0.042, 0.066, 0.09, 0.114};

// Wavelengths of the concentric rings, relative to the image size. Rings are
// unchanged by rotation about the center and mostly tell objects apart.
constexpr std::array<double, 5> kRingWavelengths{0.07, 0.094, 0.125, 0.164, 0.22};

struct Spiral {
    double arms;     // angular frequency (integer)
    double radial;   // radial wavenumber, rad per pixel
    double phase;
    double amplitude;
};

struct Wave {
    double kx, ky, phase, amplitude;
};

struct Spot {
    double x, y, radius, amplitude;
};

/// Random star-shaped blob textured with a spiral grating, concentric rings,
/// a few plane waves and a few spots. Lengths are in output pixels, relative to the image
/// center. The gratings stop a few pixels inside the boundary.
struct BlobObject {
    double radius;
    std::vector<double> harmonic_amp;
    std::vector<double> harmonic_phase;
    double brightness;
    Spiral spiral;
    double ring_k, ring_phase, ring_amp;
    std::vector<Wave> waves;
    std::vector<Spot> spots;

    BlobObject(Rng& rng, double size, double arms, double contrast, double ring_wavelength) {
        constexpr double two_pi = 2 * std::numbers::pi;
        radius = size * rng.uniform(0.36, 0.42);
        for (int k = 2; k <= 4; ++k) {
            harmonic_amp.push_back(rng.uniform(0.0, 0.06));
            harmonic_phase.push_back(rng.uniform(0.0, two_pi));
        }
        brightness = kSynthBackground + (rng.uniform() < 0.5 ? -contrast : contrast);

        const double radial_wavelength = size * rng.uniform(0.12, 0.4);
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        spiral = {arms, sign * two_pi / radial_wavelength, rng.uniform(0.0, two_pi), rng.uniform(0.1, 0.18)};

        ring_k = two_pi / (size * ring_wavelength);
        ring_phase = rng.uniform(0.0, two_pi);
        ring_amp = rng.uniform(0.08, 0.12);
        const auto n_waves = 3 + rng.below(3);
        for (std::uint64_t m = 0; m < n_waves; ++m) {
            const double k = two_pi / (size * rng.uniform(0.125, 0.25));
            const double th = rng.uniform(0.0, std::numbers::pi);
            waves.push_back({k * std::cos(th), k * std::sin(th), rng.uniform(0.0, two_pi), rng.uniform(0.04, 0.08)});
        }

        const auto n_spots = 1 + rng.below(2);
        for (std::uint64_t m = 0; m < n_spots; ++m) {
            const double r = radius * rng.uniform(0.0, 0.8);
            const double a = rng.uniform(0.0, two_pi);
            const double s = rng.uniform() < 0.5 ? -1.0 : 1.0;
            spots.push_back({r * std::cos(a), r * std::sin(a), size * rng.uniform(0.04, 0.07), s * rng.uniform(0.1, 0.2)});
        }
    }

    double boundary(double angle) const {
        double r = 1.0;
        for (std::size_t k = 0; k < harmonic_amp.size(); ++k)
            r += harmonic_amp[k] * std::cos(static_cast<double>(k + 2) * angle + harmonic_phase[k]);
        return radius * r;
    }

    double value(double x, double y) const {
        const double dist = std::hypot(x, y);
        const double angle = std::atan2(y, x);
        const double bnd = boundary(angle);
        // Soft edge, two pixels wide.
        const double mask = std::clamp(0.5 * (bnd - dist) + 0.5, 0.0, 1.0);
        if (mask == 0.0)
            return kSynthBackground;
        const double fade_out = std::clamp((bnd - 3.0 - dist) / 4.0, 0.0, 1.0);
        // The spiral fades in once the arc between arms exceeds ~4.5 px;
        // closer to the center the arms would alias.
        const double r0 = 4.5 * spiral.arms / (2 * std::numbers::pi);
        const double fade_in = std::clamp((dist - r0) / 4.0, 0.0, 1.0);
        double tex = brightness + fade_in * fade_out * spiral.amplitude *
                                      std::cos(spiral.arms * angle + spiral.radial * dist + spiral.phase);
        tex += fade_out * ring_amp * std::cos(ring_k * dist + ring_phase);
        for (const auto& w : waves)
            tex += fade_out * w.amplitude * std::cos(w.kx * x + w.ky * y + w.phase);
        for (const auto& s : spots) {
            const double dx = x - s.x, dy = y - s.y;
            tex += s.amplitude * std::exp(-(dx * dx + dy * dy) / (2 * s.radius * s.radius));
        }
        return mask * std::clamp(tex, 0.0, 1.0) + (1 - mask) * kSynthBackground;
    }
};

GrayImage downsample2(const GrayImage& img) {
    const std::size_t w = img.width() / 2, h = img.height() / 2;
    std::vector<double> out(w * h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            out[y * w + x] = 0.25 * (img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) +
                                     img.at(2 * x, 2 * y + 1) + img.at(2 * x + 1, 2 * y + 1));
    return GrayImage(w, h, std::move(out));
}

std::string angle_label(std::size_t i, std::size_t n_angles) {
    if ((i * 360) % n_angles == 0)
        return std::to_string(i * 360 / n_angles);
    return std::to_string(i);
}

}  // namespace

LabeledDataset synth_rotated_set(std::size_t n_objects, std::size_t n_angles, std::size_t size,
                                 std::uint64_t seed) {
    if (n_objects < 1)
        throw std::invalid_argument("synth: n_objects must be >= 1");
    if (n_angles < 2)
        throw std::invalid_argument("synth: n_angles must be >= 2");
    if (size < 32)
        throw std::invalid_argument("synth: size must be >= 32");

    // Objects are drawn on a 2x raster, rotated there, then box-downsampled.
    const std::size_t fine = 2 * size;
    const double center = 0.5 * static_cast<double>(fine - 1);

    // Per-object traits are dealt without replacement so that objects differ.
    Rng deck(splitmix64(seed));
    const auto deal = [&deck](auto values) {
        for (std::size_t i = values.size() - 1; i > 0; --i)
            std::swap(values[i], values[deck.below(i + 1)]);
        return values;
    };
    const auto arm_counts = deal(kArmCounts);
    const auto contrasts = deal(kContrasts);
    const auto ring_wavelengths = deal(kRingWavelengths);

    LabeledDataset ds;
    for (std::size_t o = 0; o < n_objects; ++o) {
        Rng rng(splitmix64(seed ^ splitmix64(o + 1)));
        const BlobObject object(rng, static_cast<double>(size), arm_counts[o % arm_counts.size()],
                                contrasts[o % contrasts.size()], ring_wavelengths[o % ring_wavelengths.size()]);

        std::vector<double> base(fine * fine);
        for (std::size_t y = 0; y < fine; ++y)
            for (std::size_t x = 0; x < fine; ++x)
                base[y * fine + x] = object.value(0.5 * (static_cast<double>(x) - center),
                                                  0.5 * (static_cast<double>(y) - center));
        const GrayImage base_img(fine, fine, std::move(base));

        ds.class_names.push_back(std::to_string(o + 1));
        for (std::size_t i = 0; i < n_angles; ++i) {
            const double degrees = 360.0 * static_cast<double>(i) / static_cast<double>(n_angles);
            const GrayImage rotated = i == 0 ? base_img : rotate_bilinear(base_img, degrees);
            ds.images.push_back(downsample2(rotated));
            ds.labels.push_back(o);
            ds.names.push_back("synth/obj" + std::to_string(o + 1) + "__" + angle_label(i, n_angles));
        }
    }
    ds.validate();
    return ds;
}

}  // namespace gcw
