#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsc/pipeline.hpp"

namespace {

// grids accept "a:b:step", "v1,v2,v3" or a single value
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0;
        double hi = 0.0;
        double step = 0.0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 ||
            hi < lo) {
            throw CLI::ValidationError("grid", "expected a:b:step with step > 0, got '" + text +
                                                   "'");
        }
        for (int i = 0;; ++i) {
            const double v = lo + i * step;
            if (v > hi + 1e-9) break;
            grid.push_back(v);
        }
        return grid;
    }
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("grid", "not a number: '" + item + "'");
        }
    }
    if (grid.empty()) throw CLI::ValidationError("grid", "empty grid '" + text + "'");
    return grid;
}

std::optional<std::pair<int, int>> parse_toy(const std::string& text) {
    int n1 = 0;
    int n2 = 0;
    if (std::sscanf(text.c_str(), "%d:%d", &n1, &n2) != 2 || n1 < 1 || n2 < 1) {
        throw CLI::ValidationError("toy", "expected n1:n2 with positive counts, got '" + text +
                                              "'");
    }
    return std::make_pair(n1, n2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized spectral clustering for directed and undirected graphs"};
    app.set_version_flag("--version", std::string(gsc::kVersion));
    app.require_subcommand(1);

    // cluster
    gsc::RunConfig run;
    std::string data_path;
    std::string toy_spec;
    int label_col = -1;
    std::string alpha_grid;
    std::string gamma_grid;
    std::string tau_grid;
    int knn = 0;
    bool no_standardize = false;

    auto* cluster = app.add_subcommand("cluster", "grid-searched graph clustering of a dataset");
    cluster->add_option("--data", data_path, "CSV dataset path");
    cluster->add_option("--toy", toy_spec, "toy blob spec n1:n2 instead of --data");
    cluster->add_option("--label-col", label_col, "0-based ground-truth column in the CSV");
    cluster->add_option("--k", run.k, "number of clusters")->required();
    cluster
        ->add_option("--method", run.method,
                     "gsc1|gsc2|gsc3|sc-sym1|sc-sym2|dsc-plus|di-sim-l|di-sim-r")
        ->required();
    cluster->add_option("--alpha-grid", alpha_grid, "alpha grid (a:b:step | list | value)");
    cluster->add_option("--gamma-grid", gamma_grid, "gamma grid");
    cluster->add_option("--tau-grid", tau_grid, "tau grid (di-sim)");
    cluster->add_option("--t-max", run.t_max, "largest walk power t");
    cluster->add_option("--select", run.select, "selection metric: nmi|ari|ch");
    cluster->add_option("--seed", run.seed, "master seed");
    cluster->add_option("--workers", run.workers, "worker threads for grid points");
    cluster->add_option("--knn", knn, "neighbor count (default ceil(log N))");
    cluster->add_option("--restarts", run.kmeans_restarts, "k-means restarts per grid point");
    cluster->add_flag("--no-standardize", no_standardize, "skip per-column z-scoring");
    cluster->add_option("--out", run.out_dir, "output directory");

    // toy-demo
    gsc::ToyDemoConfig toy;
    auto* toy_demo = app.add_subcommand("toy-demo", "unbalanced two-blob demonstration");
    toy_demo->add_option("--seed", toy.seed, "generator seed");
    toy_demo->add_option("--n1", toy.n1, "small cluster size");
    toy_demo->add_option("--n2", toy.n2, "large cluster size");
    toy_demo->add_option("--b", toy.b, "toy model b");
    toy_demo->add_option("--c", toy.c, "toy model c");
    toy_demo->add_option("--rho", toy.rho, "toy model rho");
    toy_demo->add_option("--restarts", toy.kmeans_restarts, "k-means restarts");
    toy_demo->add_option("--out", toy.out_dir, "output directory");

    // build-graph
    gsc::BuildGraphConfig build;
    int build_label_col = -1;
    int build_knn = 0;
    bool build_no_standardize = false;
    auto* build_graph = app.add_subcommand("build-graph", "directed K-NN graph from a CSV");
    build_graph->add_option("--data", build.input_csv, "CSV dataset path")->required();
    build_graph->add_option("--out", build.output_path, "edge-list output path");
    build_graph->add_option("--knn", build_knn, "neighbor count (default ceil(log N))");
    build_graph->add_option("--label-col", build_label_col, "column to strip as labels");
    build_graph->add_flag("--no-standardize", build_no_standardize, "skip z-scoring");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cluster->parsed()) {
            try {
                gsc::method_from_string(run.method);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n\n" << cluster->help() << "\n";
                return 1;
            }
            if (!data_path.empty()) run.data_path = data_path;
            if (!toy_spec.empty()) run.toy = parse_toy(toy_spec);
            if (label_col >= 0) run.label_column = label_col;
            if (!alpha_grid.empty()) run.alpha_grid = parse_grid(alpha_grid);
            if (!gamma_grid.empty()) run.gamma_grid = parse_grid(gamma_grid);
            if (!tau_grid.empty()) run.tau_grid = parse_grid(tau_grid);
            if (knn > 0) run.knn = knn;
            run.standardize_features = !no_standardize;
            return gsc::cmd_cluster(run);
        }
        if (toy_demo->parsed()) {
            return gsc::cmd_toy_demo(toy);
        }
        if (build_graph->parsed()) {
            if (build_label_col >= 0) build.label_column = build_label_col;
            if (build_knn > 0) build.knn = build_knn;
            build.standardize_features = !build_no_standardize;
            return gsc::cmd_build_graph(build);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help() << "\n";
    return 1;
}
