#include "gcw/heatmap.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gcw {

GrayImage heatmap(const DistanceMatrix& d, double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("heatmap: scale must be > 0");
    const double peak = d.max();
    if (!(peak > 0.0))
        throw std::invalid_argument("heatmap: matrix is all zeros");
    std::vector<double> px(d.values().size());
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = std::min(1.0, scale * (d.values()[i] / peak));
    return GrayImage(d.n(), d.n(), std::move(px));
}

void write_heatmap(const DistanceMatrix& d, const std::filesystem::path& out, double scale) {
    save_image(heatmap(d, scale), out);
}

}  // namespace gcw
