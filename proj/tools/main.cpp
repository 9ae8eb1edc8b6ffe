// memclust command line: train the crossbar clustering model on IDX
// image files, run the k-means baseline on the same data, or compare the
// ideal and circuit engines head to head.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "memclust/baseline.hpp"
#include "memclust/clustering.hpp"
#include "memclust/data.hpp"
#include "memclust/report.hpp"

namespace fs = std::filesystem;
using namespace memclust;

namespace {

struct DataFlags {
    std::string input;       // IDX image file
    std::string crop;        // "WxH", empty = no crop
    std::size_t take = 0;    // 0 = all
};

void add_data_flags(CLI::App& cmd, DataFlags& f, bool required_input = true) {
    auto* in = cmd.add_option("--input", f.input, "IDX image file");
    if (required_input) in->required()->check(CLI::ExistingFile);
    cmd.add_option("--crop", f.crop, "center crop to WxH, e.g. 20x20");
    cmd.add_option("--take", f.take, "use only the first N images");
}

std::pair<std::size_t, std::size_t> parse_crop(const std::string& s) {
    std::size_t w = 0, h = 0;
    if (std::sscanf(s.c_str(), "%zux%zu", &w, &h) != 2 || w == 0 || h == 0)
        throw std::invalid_argument("--crop expects WxH, got '" + s + "'");
    return {w, h};
}

ImageSet load_images(const DataFlags& f) {
    ImageSet set = load_idx_images(f.input);
    if (!f.crop.empty()) {
        auto [w, h] = parse_crop(f.crop);
        set = center_crop(set, w, h);
    }
    if (f.take > 0) set = take_first(set, f.take);
    return set;
}

std::vector<std::vector<double>> as_real(const std::vector<BipolarVector>& inputs) {
    std::vector<std::vector<double>> out;
    out.reserve(inputs.size());
    for (const auto& u : inputs)
        out.emplace_back(u.begin(), u.end());
    return out;
}

struct EngineFlags {
    std::string engine = "ideal";
    double noise_std = 0.0;
    int levels = 256;
};

DeviceParams device_for(const EngineFlags& f) {
    DeviceParams dev;
    dev = dev.with_levels(f.levels);
    return dev;
}

CrossbarConfig crossbar_for(const EngineFlags& f) {
    CrossbarConfig cfg;
    cfg.output_noise_std = f.noise_std;
    return cfg;
}

int run_cluster(const DataFlags& data_flags, const EngineFlags& eng,
                std::size_t clusters, int epochs, double alpha,
                std::uint64_t seed, bool shuffle, const fs::path& out_dir) {
    const ImageSet set = load_images(data_flags);
    const std::vector<BipolarVector> inputs = to_bipolar_all(set);

    const Engine engine = engine_from_string(eng.engine);
    ClusterModel model = init_weights(inputs, clusters, seed, engine,
                                      device_for(eng), crossbar_for(eng));

    TrainConfig cfg;
    cfg.alpha = alpha;
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.shuffle = shuffle;

    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult result = train(model, inputs, cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    RunReport report;
    report.engine = eng.engine;
    report.seed = seed;
    report.alpha = alpha;
    report.epochs = epochs;
    report.shuffle = shuffle;
    report.clusters = clusters;
    report.dim = model.dim();
    report.input_count = inputs.size();
    report.image_width = set.width;
    report.image_height = set.height;
    report.noise_std = eng.noise_std;
    report.levels = engine == Engine::circuit ? eng.levels : 0;
    report.cost_trace = result.cost_trace;
    report.win_counts = result.win_counts;
    for (std::size_t i = 0; i < clusters; ++i)
        report.centroids.push_back(model.weight(i));
    report.train_seconds = elapsed.count();

    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "cost.csv", cost_csv(result.cost_trace));
    for (std::size_t i = 0; i < clusters; ++i)
        write_file_atomic(out_dir / ("centroid_" + std::to_string(i) + ".pgm"),
                          encode_pgm(report.centroids[i], set.width, set.height));
    write_file_atomic(out_dir / "report.json", report_json(report));

    std::printf("trained %zu clusters on %zu inputs (%s engine), final cost %.6g\n",
                clusters, inputs.size(), eng.engine.c_str(),
                result.cost_trace.back());
    return 0;
}

int run_baseline(const DataFlags& data_flags, std::size_t k, int restarts,
                 int max_iters, double tolerance, std::uint64_t seed,
                 const fs::path& out_dir) {
    const ImageSet set = load_images(data_flags);
    const std::vector<std::vector<double>> inputs = as_real(to_bipolar_all(set));

    KMeansConfig cfg;
    cfg.k = k;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.tolerance = tolerance;
    cfg.seed = seed;

    const auto t0 = std::chrono::steady_clock::now();
    const KMeansResult result = kmeans(inputs, cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    const double j_l1 = cost_l1(result.centroids, inputs);

    nlohmann::ordered_json j;
    j["k"] = k;
    j["seed"] = seed;
    j["config"] = {{"restarts", restarts},
                   {"max_iters", max_iters},
                   {"tolerance", tolerance}};
    j["cost_l1"] = j_l1;
    j["inertia"] = result.inertia;
    j["centroids"] = result.centroids;
    j["timing"] = {{"seconds", elapsed.count()}};

    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "baseline.json", j.dump(2) + "\n");
    std::printf("k-means (k=%zu, %d restarts): l1 cost %.6g, inertia %.6g\n", k,
                restarts, j_l1, result.inertia);
    return 0;
}

int run_compare(const DataFlags& data_flags, std::size_t clusters, int epochs,
                std::uint64_t seed, int levels, double noise_std,
                std::size_t synth_dim, std::size_t synth_count,
                const fs::path& out_dir) {
    std::vector<BipolarVector> inputs;
    if (!data_flags.input.empty()) {
        inputs = to_bipolar_all(load_images(data_flags));
    } else {
        // Random hypercube vertices; flip_prob 0.5 is disallowed by the
        // generator, so draw k=1 prototypes per point instead.
        std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
        std::bernoulli_distribution sign(0.5);
        inputs.assign(synth_count, BipolarVector(synth_dim));
        for (auto& u : inputs)
            for (auto& c : u) c = sign(rng) ? 1 : -1;
    }
    if (inputs.size() < clusters) {
        std::fprintf(stderr, "compare-engines: %zu inputs < %zu clusters\n",
                     inputs.size(), clusters);
        return 1;
    }

    DeviceParams dev;
    dev = dev.with_levels(levels);
    CrossbarConfig cfg;
    cfg.output_noise_std = noise_std;

    ClusterModel ideal = init_weights(inputs, clusters, seed, Engine::ideal);
    ClusterModel circuit =
        init_weights(inputs, clusters, seed, Engine::circuit, dev, cfg);
    if (ideal.dim() != circuit.dim()) {
        std::fprintf(stderr, "compare-engines: engine dimensions differ\n");
        return 1;
    }
    // Match the ideal learning rate to the hardware step so both engines
    // move by the same amount per win.
    const double alpha = circuit.circuit_step();

    std::uint64_t agree = 0, total = 0;
    std::vector<double> ideal_costs, circuit_costs;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        for (const auto& u : inputs) {
            const std::size_t wi = ideal.train_step(u, alpha);
            const std::size_t wc = circuit.train_step(u, alpha);
            agree += wi == wc;
            ++total;
        }
        ideal_costs.push_back(cost(ideal, inputs));
        circuit_costs.push_back(cost(circuit, inputs));
    }

    const double agreement = static_cast<double>(agree) / static_cast<double>(total);
    double max_rel = 0.0;
    std::vector<double> rel_delta(ideal_costs.size());
    for (std::size_t e = 0; e < ideal_costs.size(); ++e) {
        const double denom = std::max(std::abs(ideal_costs[e]), 1e-12);
        rel_delta[e] = std::abs(circuit_costs[e] - ideal_costs[e]) / denom;
        max_rel = std::max(max_rel, rel_delta[e]);
    }

    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["clusters"] = clusters;
    j["epochs"] = epochs;
    j["levels"] = levels;
    j["noise_std"] = noise_std;
    j["alpha"] = alpha;
    j["presentations"] = total;
    j["winner_agreement"] = agreement;
    j["max_cost_rel_delta"] = max_rel;
    j["ideal_cost_trace"] = ideal_costs;
    j["circuit_cost_trace"] = circuit_costs;
    j["cost_rel_delta"] = rel_delta;

    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "compare.json", j.dump(2) + "\n");
    std::printf("winner agreement %.4f over %llu presentations, "
                "max per-epoch cost delta %.4f%%\n",
                agreement, static_cast<unsigned long long>(total), 100.0 * max_rel);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memristor crossbar clustering simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML key=value file");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "train the clustering model");
    DataFlags c_data;
    EngineFlags c_eng;
    std::size_t c_clusters = 10;
    int c_epochs = 500;
    double c_alpha = 0.005;
    std::uint64_t c_seed = 0;
    bool c_shuffle = false;
    std::string c_out = "out";
    add_data_flags(*cluster, c_data);
    cluster->add_option("--clusters", c_clusters, "cluster count M")->check(CLI::PositiveNumber);
    cluster->add_option("--epochs", c_epochs, "training epochs")->check(CLI::PositiveNumber);
    cluster->add_option("--alpha", c_alpha, "learning rate (ideal engine)");
    cluster->add_option("--seed", c_seed, "rng seed");
    cluster->add_option("--engine", c_eng.engine, "ideal | circuit")
        ->check(CLI::IsMember({"ideal", "circuit"}));
    cluster->add_flag("--shuffle", c_shuffle, "reshuffle input order each epoch");
    cluster->add_option("--noise-std", c_eng.noise_std, "readout noise std (volts)");
    cluster->add_option("--levels", c_eng.levels, "conductance levels (circuit engine)")
        ->check(CLI::PositiveNumber);
    cluster->add_option("--out", c_out, "output directory");

    // baseline
    auto* baseline = app.add_subcommand("baseline", "k-means on the same data");
    DataFlags b_data;
    std::size_t b_k = 10;
    int b_restarts = 5, b_max_iters = 300;
    double b_tolerance = 1e-6;
    std::uint64_t b_seed = 0;
    std::string b_out = "out";
    add_data_flags(*baseline, b_data);
    baseline->add_option("--k", b_k, "cluster count")->check(CLI::PositiveNumber);
    baseline->add_option("--restarts", b_restarts, "independent restarts")->check(CLI::PositiveNumber);
    baseline->add_option("--max-iters", b_max_iters, "Lloyd iteration cap")->check(CLI::PositiveNumber);
    baseline->add_option("--tolerance", b_tolerance, "relative movement stop");
    baseline->add_option("--seed", b_seed, "rng seed");
    baseline->add_option("--out", b_out, "output directory");

    // compare-engines
    auto* compare = app.add_subcommand("compare-engines",
                                       "run ideal and circuit engines in lockstep");
    DataFlags x_data;
    std::size_t x_clusters = 4;
    int x_epochs = 20, x_levels = 1024;
    double x_noise = 0.0;
    std::uint64_t x_seed = 0;
    std::size_t x_dim = 16, x_count = 50;
    std::string x_out = "out";
    add_data_flags(*compare, x_data, /*required_input=*/false);
    compare->add_option("--clusters", x_clusters, "cluster count M")->check(CLI::PositiveNumber);
    compare->add_option("--epochs", x_epochs, "training epochs")->check(CLI::PositiveNumber);
    compare->add_option("--seed", x_seed, "rng seed");
    compare->add_option("--levels", x_levels, "conductance levels")->check(CLI::PositiveNumber);
    compare->add_option("--noise-std", x_noise, "readout noise std (volts)");
    compare->add_option("--synth-dim", x_dim, "synthetic input dimension (no --input)");
    compare->add_option("--synth-count", x_count, "synthetic input count (no --input)");
    compare->add_option("--out", x_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cluster->parsed())
            return run_cluster(c_data, c_eng, c_clusters, c_epochs, c_alpha, c_seed,
                               c_shuffle, c_out);
        if (baseline->parsed())
            return run_baseline(b_data, b_k, b_restarts, b_max_iters, b_tolerance,
                                b_seed, b_out);
        if (compare->parsed())
            return run_compare(x_data, x_clusters, x_epochs, x_seed, x_levels,
                               x_noise, x_dim, x_count, x_out);
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
