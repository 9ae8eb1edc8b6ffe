#include "memclust/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace memclust {
namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string cost_csv(std::span<const double> trace) {
    std::string out = "epoch,cost\n";
    for (std::size_t e = 0; e < trace.size(); ++e)
        out += std::to_string(e + 1) + "," + fmt_double(trace[e]) + "\n";
    return out;
}

std::string encode_pgm(std::span<const double> weights, std::size_t width,
                       std::size_t height) {
    if (weights.size() != width * height)
        throw std::invalid_argument("encode_pgm: weight count != width * height");
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) +
                      "\n255\n";
    out.reserve(out.size() + weights.size());
    for (double w : weights) {
        const double v = std::round((w + 1.0) / 2.0 * 255.0);
        out.push_back(static_cast<char>(static_cast<unsigned char>(
            std::clamp(v, 0.0, 255.0))));
    }
    return out;
}

std::string report_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["engine"] = r.engine;
    j["seed"] = r.seed;
    j["config"] = {{"alpha", r.alpha},
                   {"epochs", r.epochs},
                   {"shuffle", r.shuffle},
                   {"clusters", r.clusters},
                   {"dim", r.dim},
                   {"inputs", r.input_count},
                   {"image_width", r.image_width},
                   {"image_height", r.image_height},
                   {"noise_std", r.noise_std},
                   {"levels", r.levels}};
    j["cost_trace"] = r.cost_trace;
    j["win_counts"] = r.win_counts;
    j["centroids"] = r.centroids;
    j["timing"] = {{"train_seconds", r.train_seconds}};
    return j.dump(2) + "\n";
}

}  // namespace memclust
