#ifndef MEMCLUST_REPORT_HPP
#define MEMCLUST_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "memclust/clustering.hpp"

namespace memclust {

/// Everything one training run produced, ready for serialization.
struct RunReport {
    std::string engine;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    int epochs = 0;
    bool shuffle = false;
    std::size_t clusters = 0;
    std::size_t dim = 0;
    std::size_t input_count = 0;
    std::size_t image_width = 0;
    std::size_t image_height = 0;
    double noise_std = 0.0;
    int levels = 0;  // 0 for the ideal engine
    std::vector<double> cost_trace;
    std::vector<std::uint64_t> win_counts;
    std::vector<WeightVector> centroids;
    double train_seconds = 0.0;
};

/// Writes via a temp file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// "epoch,cost\n" header followed by one row per epoch; epochs are 1-based.
std::string cost_csv(std::span<const double> trace);

/// Binary PGM (P5, maxval 255); pixel = round((w + 1) / 2 * 255).
std::string encode_pgm(std::span<const double> weights, std::size_t width,
                       std::size_t height);

/// report.json text. Timing lives under the single top-level key
/// "timing" so consumers can strip it when diffing runs.
std::string report_json(const RunReport& report);

}  // namespace memclust

#endif
