#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcw {

/// Raised for unreadable, malformed or inconsistent input data (files,
/// datasets, matrix containers). Precondition violations on arguments use
/// std::invalid_argument instead.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The t-nn neighborhood graph has more than one connected component, so
/// some geodesic distances are infinite.
class DisconnectedGraph : public std::runtime_error {
public:
    explicit DisconnectedGraph(std::vector<std::size_t> component_sizes);

    const std::vector<std::size_t>& component_sizes() const noexcept { return sizes_; }

private:
    std::vector<std::size_t> sizes_;
};

}  // namespace gcw
