#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gcw {

enum class DistanceKind : std::uint8_t { L2 = 0, CwSsim = 1, GeoL2 = 2, GcwSsim = 3 };

std::string_view to_string(DistanceKind kind);
/// Accepts the names produced by to_string; throws std::invalid_argument otherwise.
DistanceKind distance_kind_from_string(std::string_view name);

/// Dense n x n dissimilarity matrix: zero diagonal, symmetric, finite and
/// non-negative. The constructor enforces all three.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, DistanceKind kind, std::vector<double> values);

    std::size_t n() const noexcept { return n_; }
    DistanceKind kind() const noexcept { return kind_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }
    std::span<const double> values() const noexcept { return values_; }

    double max() const;

    /// Rows and columns `idx`, in that order.
    DistanceMatrix submatrix(std::span<const std::size_t> idx) const;

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    DistanceKind kind_ = DistanceKind::L2;
    std::vector<double> values_;
};

}  // namespace gcw
