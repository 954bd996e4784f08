#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcw/image.hpp"

namespace gcw {

/// Images with their true categories.
///
/// `labels` holds contiguous class indices 0..num_classes()-1, and
/// `class_names[c]` keeps the original identifier of class c (the COIL
/// object number, or the manifest label string).
struct LabeledDataset {
    std::vector<GrayImage> images;
    std::vector<std::size_t> labels;
    std::vector<std::string> names;
    std::vector<std::string> class_names;

    std::size_t size() const noexcept { return images.size(); }
    std::size_t num_classes() const noexcept { return class_names.size(); }

    /// Throws DataError if the dataset invariants do not hold.
    void validate() const;
};

/// Loads a directory either through a manifest (`relative_path,label` rows,
/// `#` comments) or through COIL-style names `obj<label>__<angle>.<ext>`.
/// Images are ordered by (label, name), where numeric labels compare
/// numerically and names compare in natural (digit-aware) order.
LabeledDataset load_dataset(const std::filesystem::path& root,
                            const std::optional<std::filesystem::path>& manifest = std::nullopt);

/// Positions of the images whose original class identifier is in `keep`.
/// Throws std::invalid_argument for an empty `keep` or an unknown identifier.
std::vector<std::size_t> indices_with_labels(const LabeledDataset& ds,
                                             std::span<const std::string> keep);

/// Keeps the images whose original class identifier is in `keep`,
/// re-indexing classes contiguously in their existing order.
LabeledDataset subset_by_labels(const LabeledDataset& ds, std::span<const std::string> keep);

/// Resamples every image to width x height.
LabeledDataset resize_dataset(const LabeledDataset& ds, std::size_t width, std::size_t height);

/// Natural ordering: runs of digits compare by numeric value.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace gcw
