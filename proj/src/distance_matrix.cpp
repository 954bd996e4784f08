#include "gcw/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcw {

std::string_view to_string(DistanceKind kind) {
    switch (kind) {
    case DistanceKind::L2: return "L2";
    case DistanceKind::CwSsim: return "CWSSIM";
    case DistanceKind::GeoL2: return "GEO_L2";
    case DistanceKind::GcwSsim: return "GCWSSIM";
    }
    return "UNKNOWN";
}

DistanceKind distance_kind_from_string(std::string_view name) {
    for (auto k : {DistanceKind::L2, DistanceKind::CwSsim, DistanceKind::GeoL2, DistanceKind::GcwSsim})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown distance kind '" + std::string(name) + "'");
}

DistanceMatrix::DistanceMatrix(std::size_t n, DistanceKind kind, std::vector<double> values)
    : n_(n), kind_(kind), values_(std::move(values)) {
    if (values_.size() != n * n)
        throw std::invalid_argument("DistanceMatrix: expected " + std::to_string(n * n) + " values");
    for (std::size_t i = 0; i < n; ++i) {
        if (values_[i * n + i] != 0.0)
            throw std::invalid_argument("DistanceMatrix: non-zero diagonal at " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values_[i * n + j];
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("DistanceMatrix: entry (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ") is negative or not finite");
            if (j > i && v != values_[j * n + i])
                throw std::invalid_argument("DistanceMatrix: asymmetric at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
        }
    }
}

double DistanceMatrix::max() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const std::size_t> idx) const {
    std::vector<double> out(idx.size() * idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        if (idx[a] >= n_)
            throw std::out_of_range("submatrix: index out of range");
        for (std::size_t b = 0; b < idx.size(); ++b)
            out[a * idx.size() + b] = (*this)(idx[a], idx[b]);
    }
    return DistanceMatrix(idx.size(), kind_, std::move(out));
}

}  // namespace gcw
