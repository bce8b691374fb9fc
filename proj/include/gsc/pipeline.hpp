#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsc/cluster.hpp"
#include "gsc/data.hpp"
#include "gsc/energy.hpp"

#include "json.hpp"

namespace gsc {

inline constexpr const char* kVersion = "0.1.0";

/// True when every vertex can reach every other (forward and reverse BFS
/// from vertex 0).
bool strongly_connected(const Digraph& g);

/// Configuration of one clustering run (the `cluster` subcommand).
struct RunConfig {
    std::optional<std::string> data_path;
    std::optional<std::pair<int, int>> toy;  // n1, n2
    std::optional<int> label_column;
    int k = 2;
    std::string method = "gsc1";
    std::vector<double> alpha_grid{0.0};
    std::vector<double> gamma_grid;  // defaulted per method when empty
    int t_max = 0;
    std::vector<double> tau_grid{1.0};
    std::string select = "nmi";  // nmi | ari | ch
    std::uint64_t seed = 0;
    int workers = 1;
    bool standardize_features = true;
    std::optional<int> knn;  // overrides ceil(log N)
    int kmeans_restarts = 100;
    std::string out_dir = ".";
};

struct ClusterRun {
    nlohmann::json result;  // full result.json payload
    Partition best;
    GridResult grid;
    std::string scores_csv;
};

ClusterRun run_cluster(const RunConfig& cfg);

/// Writes result.json, scores.csv and best_labels.csv under cfg.out_dir.
void write_cluster_outputs(const ClusterRun& run, const std::string& out_dir);

/// Runs run_cluster and writes outputs; returns a process exit code and
/// prints diagnostics on failure.
int cmd_cluster(const RunConfig& cfg);

/// Configuration of the unbalanced-toy demonstration. The default seed is a
/// draw whose K-NN graph bridges the blobs strongly enough that plain
/// spectral clustering splits the large cluster; most draws at these
/// parameters are easier than that, so other seeds may show smaller contrast.
struct ToyDemoConfig {
    std::uint64_t seed = 4;
    int n1 = 30;
    int n2 = 300;
    double b = 0.08;
    double c = 0.29;
    double rho = 0.75;
    std::vector<double> gsc_alphas;    // defaults to 0..5 step 0.25
    std::vector<double> sweep_alphas;  // defaults to 0..5 step 0.1
    int kmeans_restarts = 100;
    std::string out_dir = ".";
};

struct ToyDemoResult {
    PointCloud cloud;
    Partition kmeans_partition;
    Partition vsc_partition;
    Partition gsc_partition;
    double nmi_kmeans = 0.0;
    double nmi_vsc = 0.0;
    double nmi_gsc = 0.0;
    double gsc_alpha = 0.0;  // grid-optimal exponent
    CrossoverSweep sweep;
    std::optional<double> alpha_xp;
    double alpha_th = 0.0;

    nlohmann::json summary_json(const ToyDemoConfig& cfg) const;
};

/// Generates the toy cloud, builds the K-NN digraph, symmetrizes, and runs
/// k-means on raw features, SC-SYM (VSC) and GSC with nu = pi^alpha, plus
/// the energy crossover sweep.
ToyDemoResult run_toy_demo(const ToyDemoConfig& cfg);

/// Runs the demo and writes toy_points.csv, toy_partitions.csv,
/// crossover.csv and toy_summary.json under cfg.out_dir.
int cmd_toy_demo(const ToyDemoConfig& cfg);

struct BuildGraphConfig {
    std::string input_csv;
    std::string output_path = "graph.txt";
    std::optional<int> knn;
    std::optional<int> label_column;
    bool standardize_features = true;
};

struct BuildGraphInfo {
    int n = 0;
    int k = 0;
    std::size_t edges = 0;
    bool is_strongly_connected = false;
};

BuildGraphInfo run_build_graph(const BuildGraphConfig& cfg);
int cmd_build_graph(const BuildGraphConfig& cfg);

}  // namespace gsc
