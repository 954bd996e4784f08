#pragma once

#include <filesystem>
#include <string>

#include "gcw/distance_matrix.hpp"

namespace gcw {

/// GDM1 container: "GDM1", n as u64 little-endian, kind tag (1 byte),
/// then n*n little-endian IEEE-754 doubles, row-major.
void write_gdm(const std::filesystem::path& path, const DistanceMatrix& m);
DistanceMatrix read_gdm(const std::filesystem::path& path);

/// Comma-separated rows. `comment` lines (without the leading "# ") are
/// written first; the kind is recorded as "# kind=<name>".
void write_matrix_text(const std::filesystem::path& path, const DistanceMatrix& m,
                       const std::string& comment = {});
DistanceMatrix read_matrix_text(const std::filesystem::path& path);

/// Dispatches on the GDM1 magic; anything else is parsed as text.
DistanceMatrix read_matrix(const std::filesystem::path& path);

}  // namespace gcw
