#include "memclust/data.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

namespace memclust {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t off) {
    return (std::uint32_t{bytes[off]} << 24) | (std::uint32_t{bytes[off + 1]} << 16) |
           (std::uint32_t{bytes[off + 2]} << 8) | std::uint32_t{bytes[off + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

ImageSet parse_idx_images(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4)
        throw IdxError(IdxError::Kind::truncated, "IDX: file shorter than magic");
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != kImageMagic)
        throw IdxError(IdxError::Kind::bad_magic,
                       "IDX: expected image magic 0x00000803, got 0x" +
                           [&] { char b[16]; std::snprintf(b, sizeof b, "%08x", magic); return std::string(b); }());
    if (bytes.size() < 16)
        throw IdxError(IdxError::Kind::truncated, "IDX: header truncated");

    const std::uint64_t count = read_be32(bytes, 4);
    const std::uint64_t rows = read_be32(bytes, 8);
    const std::uint64_t cols = read_be32(bytes, 12);
    if (rows == 0 || cols == 0 ||
        rows > std::numeric_limits<std::uint32_t>::max() / cols ||
        count > std::numeric_limits<std::uint64_t>::max() / (rows * cols))
        throw IdxError(IdxError::Kind::dimension_overflow,
                       "IDX: dimension product overflows");
    const std::uint64_t payload = count * rows * cols;
    if (bytes.size() - 16 < payload)
        throw IdxError(IdxError::Kind::truncated,
                       "IDX: payload truncated (" + std::to_string(bytes.size() - 16) +
                           " of " + std::to_string(payload) + " bytes)");

    ImageSet set;
    set.width = cols;
    set.height = rows;
    set.images.reserve(count);
    const std::uint8_t* p = bytes.data() + 16;
    for (std::uint64_t i = 0; i < count; ++i, p += rows * cols)
        set.images.emplace_back(p, p + rows * cols);
    return set;
}

std::vector<std::uint8_t> serialize_idx_images(const ImageSet& set) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + set.size() * set.pixel_count());
    write_be32(out, kImageMagic);
    write_be32(out, static_cast<std::uint32_t>(set.size()));
    write_be32(out, static_cast<std::uint32_t>(set.height));
    write_be32(out, static_cast<std::uint32_t>(set.width));
    for (const auto& img : set.images) {
        if (img.size() != set.pixel_count())
            throw std::invalid_argument("serialize_idx_images: image size mismatch");
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

ImageSet load_idx_images(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    return parse_idx_images(bytes);
}

ImageSet center_crop(const ImageSet& set, std::size_t target_width,
                     std::size_t target_height) {
    if (target_width > set.width || target_height > set.height)
        throw std::invalid_argument("center_crop: target larger than source");
    if (target_width == set.width && target_height == set.height) return set;

    const std::size_t x0 = (set.width - target_width) / 2;
    const std::size_t y0 = (set.height - target_height) / 2;
    ImageSet out;
    out.width = target_width;
    out.height = target_height;
    out.labels = set.labels;
    out.images.reserve(set.size());
    for (const auto& img : set.images) {
        std::vector<std::uint8_t> cropped;
        cropped.reserve(target_width * target_height);
        for (std::size_t y = 0; y < target_height; ++y) {
            const std::uint8_t* row = img.data() + (y0 + y) * set.width + x0;
            cropped.insert(cropped.end(), row, row + target_width);
        }
        out.images.push_back(std::move(cropped));
    }
    return out;
}

ImageSet take_first(const ImageSet& set, std::size_t m) {
    if (m > set.size())
        throw std::invalid_argument("take_first: asked for " + std::to_string(m) +
                                    " of " + std::to_string(set.size()) + " images");
    ImageSet out;
    out.width = set.width;
    out.height = set.height;
    out.images.assign(set.images.begin(), set.images.begin() + m);
    if (!set.labels.empty())
        out.labels.assign(set.labels.begin(), set.labels.begin() + m);
    return out;
}

BipolarVector to_bipolar(const ImageSet& set, std::size_t index) {
    return map_to_hypercube(set.images.at(index));
}

std::vector<BipolarVector> to_bipolar_all(const ImageSet& set) {
    std::vector<BipolarVector> out;
    out.reserve(set.size());
    for (const auto& img : set.images) out.push_back(map_to_hypercube(img));
    return out;
}

SynthData synth_clusters(std::size_t k, std::size_t points_per_cluster,
                         std::size_t dim, double flip_prob, std::uint64_t seed) {
    if (k == 0 || dim == 0)
        throw std::invalid_argument("synth_clusters: k and dim must be >= 1");
    if (!(flip_prob >= 0.0 && flip_prob < 0.5))
        throw std::invalid_argument("synth_clusters: flip_prob outside [0, 0.5)");

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution sign(0.5);
    std::bernoulli_distribution flip(flip_prob);

    SynthData data;
    data.prototypes.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        BipolarVector proto(dim);
        for (auto& c : proto) c = sign(rng) ? 1 : -1;
        data.prototypes.push_back(std::move(proto));
    }
    data.inputs.reserve(k * points_per_cluster);
    data.ground_truth.reserve(k * points_per_cluster);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p = 0; p < points_per_cluster; ++p) {
            BipolarVector u = data.prototypes[i];
            if (flip_prob > 0.0)
                for (auto& c : u)
                    if (flip(rng)) c = static_cast<std::int8_t>(-c);
            data.inputs.push_back(std::move(u));
            data.ground_truth.push_back(i);
        }
    }
    return data;
}

}  // namespace memclust
