#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gcw {

/// Categorization criteria, all in percent.
struct EvalReport {
    double error_rate = 0.0;         // r_e, lower is better
    double true_association = 0.0;   // r_t, higher is better
    double false_association = 0.0;  // r_f, lower is better
    std::size_t n = 0;
    std::size_t k_learned = 0;
    std::size_t k_true = 0;
    /// learned cluster id -> majority true category (ties to smaller id)
    std::vector<std::pair<std::size_t, std::size_t>> label_map;
};

/// Each learned cluster takes its majority true category; returns the
/// percentage of points whose category differs from their cluster's.
double error_rate(std::span<const std::size_t> assignments, std::span<const std::size_t> truth);

/// Percentage of same-category pairs that share a learned cluster.
/// Throws std::invalid_argument if there is no same-category pair.
double true_association_rate(std::span<const std::size_t> assignments,
                             std::span<const std::size_t> truth);

/// Percentage of cross-category pairs that share a learned cluster.
/// Throws std::invalid_argument if there is no cross-category pair.
double false_association_rate(std::span<const std::size_t> assignments,
                              std::span<const std::size_t> truth);

/// All three criteria. r_t / r_f are reported as 0 when undefined.
EvalReport evaluate(std::span<const std::size_t> assignments, std::span<const std::size_t> truth);

}  // namespace gcw
