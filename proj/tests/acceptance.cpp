// Acceptance suite: one pass/fail line per criterion, exit code equals
// the number of failed criteria.
//
// Criteria 3 and 4 need the real MNIST training images
// (train-images-idx3-ubyte). Point MEMCLUST_MNIST at the file, or place
// it in ./data/. Without it those two criteria fail with a message;
// everything else runs offline.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "memclust/baseline.hpp"
#include "memclust/clustering.hpp"
#include "memclust/data.hpp"
#include "memclust/device.hpp"
#include "memclust/report.hpp"

using namespace memclust;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

BipolarVector random_vertex(std::size_t n, std::mt19937_64& rng) {
    std::bernoulli_distribution sign(0.5);
    BipolarVector u(n);
    for (auto& c : u) c = sign(rng) ? 1 : -1;
    return u;
}

// --- criterion 1: l1 identity ------------------------------------------

void criterion_identity() {
    const auto t0 = clock_type::now();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    double worst = 0.0;
    for (std::size_t n : {1, 2, 8, 64, 400}) {
        for (int rep = 0; rep < 1000; ++rep) {
            WeightVector w(n);
            for (auto& c : w) c = wdist(rng);
            const BipolarVector u = random_vertex(n, rng);
            double dot = 0.0, l1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                dot += w[j] * static_cast<double>(u[j]);
                l1 += std::abs(w[j] - static_cast<double>(u[j]));
            }
            worst = std::max(worst, std::abs(manhattan_distance(dot, n) - l1));
        }
    }
    const double secs = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "max |error| %.3g (< 1e-9), %.2fs (< 1s)",
                  worst, secs);
    report(1, "l1 distance identity", worst < 1e-9 && secs < 1.0, detail);
}

// --- criterion 2: engine equivalence ------------------------------------

void criterion_engine_equivalence() {
    const auto t0 = clock_type::now();
    const std::size_t n = 16, m = 50, clusters = 4;
    const int epochs = 20;
    const std::uint64_t seed = 7;

    std::mt19937_64 rng(seed);
    std::vector<BipolarVector> inputs;
    for (std::size_t p = 0; p < m; ++p) inputs.push_back(random_vertex(n, rng));

    const DeviceParams dev = DeviceParams{}.with_levels(1024);
    ClusterModel ideal = init_weights(inputs, clusters, seed, Engine::ideal);
    ClusterModel circuit =
        init_weights(inputs, clusters, seed, Engine::circuit, dev, {});
    const double alpha = circuit.circuit_step();

    std::uint64_t agree = 0, total = 0;
    double max_rel = 0.0;
    for (int e = 0; e < epochs; ++e) {
        for (const auto& u : inputs) {
            agree += ideal.train_step(u, alpha) == circuit.train_step(u, alpha);
            ++total;
        }
        const double ci = cost(ideal, inputs);
        const double cc = cost(circuit, inputs);
        max_rel = std::max(max_rel, std::abs(cc - ci) / std::max(ci, 1e-12));
    }
    const double agreement = static_cast<double>(agree) / static_cast<double>(total);
    const double secs = seconds_since(t0);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "winner agreement %.4f (>= 0.99), max cost rel delta %.4f (<= 0.02), "
                  "%.2fs (< 10s)",
                  agreement, max_rel, secs);
    report(2, "ideal vs circuit engine equivalence",
           agreement >= 0.99 && max_rel <= 0.02 && secs < 10.0, detail);
}

// --- criteria 3 and 4: MNIST experiment ---------------------------------

std::optional<fs::path> find_mnist() {
    std::vector<fs::path> candidates;
    if (const char* env = std::getenv("MEMCLUST_MNIST")) candidates.emplace_back(env);
    candidates.emplace_back("data/train-images-idx3-ubyte");
    candidates.emplace_back(fs::path(MEMCLUST_TEST_DATA_DIR) /
                            "train-images-idx3-ubyte");
    for (const auto& c : candidates)
        if (fs::exists(c)) return c;
    return std::nullopt;
}

void criteria_mnist() {
    const auto mnist = find_mnist();
    if (!mnist) {
        const std::string why =
            "MNIST train-images-idx3-ubyte not found (set MEMCLUST_MNIST or place it "
            "in ./data/); cannot run the reproduction offline";
        report(3, "MNIST cost vs k-means", false, why);
        report(4, "centroid sanity", false, why);
        return;
    }

    const auto t0 = clock_type::now();
    const ImageSet set =
        take_first(center_crop(load_idx_images(*mnist), 20, 20), 1000);
    const std::vector<BipolarVector> inputs = to_bipolar_all(set);
    std::vector<std::vector<double>> real_inputs;
    for (const auto& u : inputs) real_inputs.emplace_back(u.begin(), u.end());

    KMeansConfig kcfg;
    kcfg.k = 10;
    kcfg.restarts = 5;
    kcfg.seed = 12345;
    const KMeansResult km = kmeans(real_inputs, kcfg);
    const double j_kmeans = cost_l1(km.centroids, real_inputs);

    int wins = 0;
    bool sane = true;
    std::string sanity_notes;
    std::vector<double> finals;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ClusterModel model = init_weights(inputs, 10, seed, Engine::ideal);
        TrainConfig cfg;
        cfg.alpha = 0.005;
        cfg.epochs = 500;
        cfg.seed = seed;
        const TrainResult r = train(model, inputs, cfg);
        finals.push_back(r.cost_trace.back());
        if (r.cost_trace.back() <= 1.10 * j_kmeans) ++wins;

        // criterion 4 checks on every trained model
        for (std::size_t i = 0; i < 10; ++i) {
            if (r.win_counts[i] == 0) {
                sane = false;
                sanity_notes += " dead cluster (seed " + std::to_string(seed) + ")";
            }
            const WeightVector w = model.weight(i);
            const std::string pgm = encode_pgm(w, set.width, set.height);
            std::istringstream in(pgm);
            std::string magic;
            std::size_t pw = 0, ph = 0;
            int maxval = 0;
            in >> magic >> pw >> ph >> maxval;
            in.get();
            std::size_t bright = 0, dark = 0, pixels = 0;
            for (int c = in.get(); c != EOF; c = in.get(), ++pixels)
                (c >= 128 ? bright : dark) += 1;
            if (magic != "P5" || pw != set.width || ph != set.height ||
                maxval != 255 || pixels != pw * ph) {
                sane = false;
                sanity_notes += " malformed pgm";
            }
            const double frac = static_cast<double>(pw * ph);
            if (bright < 0.10 * frac || dark < 0.10 * frac) {
                sane = false;
                sanity_notes += " degenerate centroid (seed " +
                                std::to_string(seed) + ", cluster " +
                                std::to_string(i) + ")";
            }
        }
    }
    const double secs = seconds_since(t0);
    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "k-means J %.1f; final J per seed %.1f/%.1f/%.1f/%.1f/%.1f; "
                  "%d/5 seeds within 1.10x (need >= 4); %.1fs (target < 300s)",
                  j_kmeans, finals[0], finals[1], finals[2], finals[3], finals[4],
                  wins, secs);
    report(3, "MNIST cost vs k-means", wins >= 4, detail);
    report(4, "centroid sanity", sane,
           sane ? "all clusters win, all centroids valid non-degenerate PGMs"
                : "issues:" + sanity_notes);
}

// --- criterion 5: descent property ---------------------------------------

void criterion_descent() {
    std::mt19937_64 rng(5);
    const std::size_t n = 20, clusters = 4;
    const double alpha = 0.01;
    std::uniform_real_distribution<double> interior(-1.0 + alpha, 1.0 - alpha);

    auto l1 = [](const WeightVector& w, const BipolarVector& u) {
        double acc = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j)
            acc += std::abs(w[j] - static_cast<double>(u[j]));
        return acc;
    };

    double worst = 0.0;
    bool clipped_ok = true;
    for (int rep = 0; rep < 10000; ++rep) {
        ClusterModel model = ClusterModel::make_ideal(clusters, n);
        for (std::size_t i = 0; i < clusters; ++i) {
            WeightVector w(n);
            for (auto& c : w) c = interior(rng);
            model.set_weight(i, w);
        }
        const BipolarVector u = random_vertex(n, rng);
        std::vector<double> d = model.distance_star(u);
        const std::size_t expect =
            static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
        const double before = l1(model.weight(expect), u);
        const std::size_t winner = model.train_step(u, alpha);
        const double after = l1(model.weight(winner), u);
        worst = std::max(worst,
                         std::abs((before - after) - alpha * static_cast<double>(n)));

        // clipped variant: winner pinned to the vertex, distance must not grow
        ClusterModel pinned = ClusterModel::make_ideal(1, n);
        pinned.set_weight(0, WeightVector(u.begin(), u.end()));
        const double b2 = l1(pinned.weight(0), u);
        pinned.train_step(u, alpha);
        clipped_ok = clipped_ok && l1(pinned.weight(0), u) <= b2 + 1e-12;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "max |descent error| %.3g (< 1e-9); clipped never increases: %s",
                  worst, clipped_ok ? "yes" : "NO");
    report(5, "exact descent by alpha*N", worst < 1e-9 && clipped_ok, detail);
}

// --- criterion 6: device suite -------------------------------------------

void criterion_device() {
    DeviceParams p;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> volt(-2.0, 2.0);
    std::uniform_real_distribution<double> g0(p.g_min, p.g_max);

    bool bounds_ok = true, threshold_ok = true;
    MemristorState s{g0(rng)};
    for (int i = 0; i < 1000000; ++i) {
        const double v = volt(rng);
        const double before = s.g;
        s = apply_pulse(s, v, p);
        bounds_ok = bounds_ok && s.g >= p.g_min && s.g <= p.g_max;
        if (std::abs(v) <= p.v_th) threshold_ok = threshold_ok && s.g == before;
    }

    bool program_ok = true;
    double worst = 0.0;
    std::uniform_real_distribution<double> t(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double target = t(rng);
        const DiffPairColumn c = program_pair(midpoint_column(p), target, p);
        const double err =
            std::abs(pair_weight(c) - std::clamp(target, p.w_lo(), p.w_hi()));
        worst = std::max(worst, err);
        program_ok = program_ok && err <= p.weight_resolution();
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "1e6 pulses in bounds: %s; sub-threshold inert: %s; "
                  "programming max err %.3g (<= %.3g)",
                  bounds_ok ? "yes" : "NO", threshold_ok ? "yes" : "NO", worst,
                  p.weight_resolution());
    report(6, "device fuzz and programming", bounds_ok && threshold_ok && program_ok,
           detail);
}

// --- criterion 7: synthetic recovery --------------------------------------

void criterion_synth_recovery() {
    const auto t0 = clock_type::now();
    const std::size_t k = 4, n = 64, per_cluster = 100;
    int good_seeds = 0;
    std::string fracs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SynthData data = synth_clusters(k, per_cluster, n, 0.1, seed);

        // componentwise majority vote per ground-truth cluster
        std::vector<std::vector<int>> votes(k, std::vector<int>(n, 0));
        for (std::size_t p = 0; p < data.inputs.size(); ++p)
            for (std::size_t j = 0; j < n; ++j)
                votes[data.ground_truth[p]][j] += data.inputs[p][j];

        ClusterModel model = init_weights(data.inputs, k, seed, Engine::ideal);
        // A hot learning rate plus per-epoch shuffling lets a centroid
        // that starts trapped inside an already-claimed cluster escape
        // to an unclaimed one.
        TrainConfig cfg;
        cfg.alpha = 0.3;
        cfg.epochs = 100;
        cfg.seed = seed;
        cfg.shuffle = true;
        train(model, data.inputs, cfg);

        // best one-to-one matching of trained centroids to clusters
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::size_t best_agree = 0;
        do {
            std::size_t agree = 0;
            for (std::size_t i = 0; i < k; ++i) {
                const WeightVector w = model.weight(perm[i]);
                for (std::size_t j = 0; j < n; ++j) {
                    const int maj = votes[i][j] >= 0 ? 1 : -1;
                    agree += (w[j] >= 0.0 ? 1 : -1) == maj;
                }
            }
            best_agree = std::max(best_agree, agree);
        } while (std::next_permutation(perm.begin(), perm.end()));

        const double frac =
            static_cast<double>(best_agree) / static_cast<double>(k * n);
        fracs += (fracs.empty() ? "" : "/") + std::to_string(frac).substr(0, 5);
        if (frac >= 0.95) ++good_seeds;
    }
    const double secs = seconds_since(t0);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "majority agreement %s; %d/5 seeds >= 0.95 (need >= 4); %.2fs (< 10s)",
                  fracs.c_str(), good_seeds, secs);
    report(7, "synthetic prototype recovery", good_seeds >= 4 && secs < 10.0, detail);
}

// --- criterion 8: CLI determinism ------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void criterion_determinism() {
    const fs::path fixture =
        fs::path(MEMCLUST_TEST_DATA_DIR) / "digits-images-idx3-ubyte";
    if (!fs::exists(fixture)) {
        report(8, "byte-identical reruns", false,
               "test fixture " + fixture.string() + " missing");
        return;
    }
    const fs::path base = fs::temp_directory_path() / "memclust_acceptance";
    fs::remove_all(base);
    const fs::path out_a = base / "a", out_b = base / "b";

    auto run = [&](const fs::path& out) {
        const std::string cmd = std::string(MEMCLUST_CLI_PATH) +
                                " cluster --input " + fixture.string() +
                                " --crop 20x20 --take 200 --clusters 4" +
                                " --epochs 20 --alpha 0.01 --seed 77 --out " +
                                out.string() + " > /dev/null";
        return std::system(cmd.c_str());
    };
    if (run(out_a) != 0 || run(out_b) != 0) {
        report(8, "byte-identical reruns", false, "CLI invocation failed");
        return;
    }

    const bool csv_equal = slurp(out_a / "cost.csv") == slurp(out_b / "cost.csv");
    nlohmann::json ja = nlohmann::json::parse(slurp(out_a / "report.json"));
    nlohmann::json jb = nlohmann::json::parse(slurp(out_b / "report.json"));
    ja.erase("timing");
    jb.erase("timing");
    const bool json_equal = ja == jb;
    fs::remove_all(base);

    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "cost.csv byte-identical: %s; report.json (minus timing) equal: %s",
                  csv_equal ? "yes" : "NO", json_equal ? "yes" : "NO");
    report(8, "byte-identical reruns", csv_equal && json_equal, detail);
}

}  // namespace

int main() {
    criterion_identity();
    criterion_engine_equivalence();
    criteria_mnist();
    criterion_descent();
    criterion_device();
    criterion_synth_recovery();
    criterion_determinism();
    if (failures > 0)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
