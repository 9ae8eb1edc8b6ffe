#ifndef MEMCLUST_DATA_HPP
#define MEMCLUST_DATA_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "memclust/clustering.hpp"

namespace memclust {

/// A set of grayscale images plus optional labels. Labels are never used
/// by training; they only support evaluation tooling.
struct ImageSet {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::vector<std::uint8_t>> images;
    std::vector<std::uint8_t> labels;  // empty when absent

    std::size_t pixel_count() const { return width * height; }
    std::size_t size() const { return images.size(); }
};

struct IdxError : std::runtime_error {
    enum class Kind { bad_magic, truncated, dimension_overflow };
    IdxError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

/// Parses the MNIST IDX image container: big-endian magic 0x00000803,
/// big-endian counts/dims, then row-major unsigned bytes.
ImageSet parse_idx_images(std::span<const std::uint8_t> bytes);

/// Inverse of parse_idx_images (labels are not serialized).
std::vector<std::uint8_t> serialize_idx_images(const ImageSet& set);

ImageSet load_idx_images(const std::filesystem::path& path);

/// Keeps the central target window; offsets are floor((src - tgt) / 2).
ImageSet center_crop(const ImageSet& set, std::size_t target_width,
                     std::size_t target_height);

/// First m images in file order.
ImageSet take_first(const ImageSet& set, std::size_t m);

BipolarVector to_bipolar(const ImageSet& set, std::size_t index);
std::vector<BipolarVector> to_bipolar_all(const ImageSet& set);

struct SynthData {
    std::vector<BipolarVector> inputs;
    std::vector<std::size_t> ground_truth;   // prototype index per input
    std::vector<BipolarVector> prototypes;
};

/// k random vertex prototypes; each point is its prototype with
/// independent component flips at flip_prob. flip_prob must be in [0, 0.5).
SynthData synth_clusters(std::size_t k, std::size_t points_per_cluster,
                         std::size_t dim, double flip_prob, std::uint64_t seed);

}  // namespace memclust

#endif
