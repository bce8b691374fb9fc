#include "gsc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gsc/laplacian.hpp"
#include "gsc/metrics.hpp"
#include "gsc/rng.hpp"
#include "gsc/spectral.hpp"

namespace gsc {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    os << content;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

bool strongly_connected(const Digraph& g) {
    const int n = g.n();
    if (n == 0) return true;
    auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n;
    };
    std::vector<std::vector<int>> forward(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> reverse(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : g.out_edges(i)) {
            (void)w;
            forward[static_cast<std::size_t>(i)].push_back(j);
            reverse[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    return reaches_all(forward) && reaches_all(reverse);
}

namespace {

struct LoadedData {
    PointCloud raw;       // as loaded (features unstandardized)
    PointCloud prepared;  // what the graph is built from
};

LoadedData load_run_data(const RunConfig& cfg) {
    LoadedData data;
    if (cfg.toy) {
        data.raw = toy_unbalanced(cfg.toy->first, cfg.toy->second, derive_seed(cfg.seed, 11));
    } else if (cfg.data_path) {
        data.raw = load_csv(*cfg.data_path, cfg.label_column);
    } else {
        throw InvalidParameter("either a dataset path or a toy spec is required");
    }
    data.prepared = cfg.standardize_features ? standardize(data.raw) : data.raw;
    return data;
}

nlohmann::json config_to_json(const RunConfig& cfg, int effective_knn) {
    nlohmann::json j;
    j["method"] = cfg.method;
    j["k"] = cfg.k;
    j["select"] = cfg.select;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["standardize"] = cfg.standardize_features;
    j["knn"] = effective_knn;
    j["alpha_grid"] = cfg.alpha_grid;
    j["gamma_grid"] = cfg.gamma_grid;
    j["t_max"] = cfg.t_max;
    j["tau_grid"] = cfg.tau_grid;
    j["kmeans_restarts"] = cfg.kmeans_restarts;
    j["data"] = cfg.data_path ? nlohmann::json(*cfg.data_path) : nlohmann::json();
    j["toy"] = cfg.toy ? nlohmann::json::array({cfg.toy->first, cfg.toy->second})
                       : nlohmann::json();
    j["label_column"] = cfg.label_column ? nlohmann::json(*cfg.label_column) : nlohmann::json();
    return j;
}

std::string render_scores_csv(const GridResult& grid) {
    std::ostringstream os;
    os << "method,alpha,gamma,t,tau,nmi,ari,ch\n";
    for (const auto& entry : grid.entries) {
        const auto& prov = entry.partition.provenance;
        os << prov.method << ",";
        os << (prov.alpha ? format_double(*prov.alpha) : "") << ",";
        os << (prov.gamma ? format_double(*prov.gamma) : "") << ",";
        os << (prov.t ? std::to_string(*prov.t) : "") << ",";
        os << (prov.tau ? format_double(*prov.tau) : "");
        for (const char* key : {"nmi", "ari", "ch"}) {
            os << ",";
            const auto it = entry.scores.find(key);
            if (it != entry.scores.end()) os << format_double(it->second);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace

ClusterRun run_cluster(const RunConfig& cfg) {
    const Method method = method_from_string(cfg.method);
    const LoadedData data = load_run_data(cfg);
    const int n = data.prepared.n();
    const int effective_knn = std::min(cfg.knn.value_or(default_knn_count(n)), n - 1);
    const Digraph graph = knn_digraph(data.prepared, effective_knn);

    Selection selection;
    if (cfg.select == "ch") {
        selection = Selection::unsupervised_ch(data.raw.points);
        if (data.raw.labels) selection.labels = data.raw.labels;  // extra reporting
    } else {
        if (!data.raw.labels) {
            throw InvalidParameter("supervised selection needs ground-truth labels");
        }
        selection = Selection::supervised(cfg.select, *data.raw.labels);
        selection.features = data.raw.points;  // extra reporting
    }

    Grids grids;
    grids.alphas = cfg.alpha_grid;
    grids.gammas = cfg.gamma_grid;
    grids.t_max = cfg.t_max;
    grids.taus = cfg.tau_grid;
    if (grids.gammas.empty()) {
        if (method == Method::Gsc1) grids.gammas = {1.0};
        if (method == Method::Gsc2 || method == Method::Gsc3 || method == Method::DscPlus) {
            grids.gammas = {0.95};
        }
    }

    const SearchResult search = grid_search(graph, cfg.k, method, grids, selection,
                                            derive_seed(cfg.seed, 23), cfg.workers,
                                            cfg.kmeans_restarts);

    ClusterRun run;
    run.best = search.best;
    run.grid = search.grid;
    run.scores_csv = render_scores_csv(search.grid);

    nlohmann::json result;
    result["config"] = config_to_json(cfg, effective_knn);
    nlohmann::json best;
    best["params"] = params_to_json(search.best.provenance);
    best["labels"] = search.best.labels;
    best["scores"] = search.grid.entries[static_cast<std::size_t>(search.best_index)].scores;
    result["best"] = std::move(best);
    nlohmann::json grid_json = nlohmann::json::array();
    for (const auto& entry : search.grid.entries) {
        nlohmann::json e;
        e["params"] = params_to_json(entry.partition.provenance);
        e["scores"] = entry.scores;
        grid_json.push_back(std::move(e));
    }
    result["grid"] = std::move(grid_json);
    result["provenance"] = {{"seed", cfg.seed}, {"version", kVersion}, {"timestamp", utc_timestamp()}};
    run.result = std::move(result);
    return run;
}

void write_cluster_outputs(const ClusterRun& run, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_text_file((dir / "result.json").string(), run.result.dump(2) + "\n");
    write_text_file((dir / "scores.csv").string(), run.scores_csv);
    std::ostringstream labels;
    write_labels_csv(run.best, labels);
    write_text_file((dir / "best_labels.csv").string(), labels.str());
}

int cmd_cluster(const RunConfig& cfg) {
    try {
        const ClusterRun run = run_cluster(cfg);
        write_cluster_outputs(run, cfg.out_dir);
        const auto& best = run.result["best"];
        std::cout << "best params: " << best["params"].dump()
                  << " scores: " << best["scores"].dump() << "\n";
        std::cout << "wrote " << cfg.out_dir << "/result.json\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

std::vector<double> linear_grid(double lo, double hi, double step) {
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + 1e-9) break;
        grid.push_back(v);
    }
    return grid;
}

}  // namespace

nlohmann::json ToyDemoResult::summary_json(const ToyDemoConfig& cfg) const {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["n1"] = cfg.n1;
    j["n2"] = cfg.n2;
    j["nmi_kmeans"] = nmi_kmeans;
    j["nmi_vsc"] = nmi_vsc;
    j["nmi_gsc"] = nmi_gsc;
    j["gsc_alpha"] = gsc_alpha;
    j["alpha_xp"] = alpha_xp ? nlohmann::json(*alpha_xp) : nlohmann::json();
    j["alpha_th"] = alpha_th;
    j["toy_model"] = {{"b", cfg.b}, {"c", cfg.c}, {"rho", cfg.rho}};
    return j;
}

ToyDemoResult run_toy_demo(const ToyDemoConfig& cfg) {
    ToyDemoResult out;
    out.cloud = toy_unbalanced(cfg.n1, cfg.n2, cfg.seed);
    const std::vector<int>& truth = *out.cloud.labels;
    const int n = out.cloud.n();
    const Rng rng(cfg.seed);

    // k-means directly on the raw coordinates
    out.kmeans_partition =
        kmeans(out.cloud.points, 2, cfg.kmeans_restarts, rng.split(1).next_u64());
    out.nmi_kmeans = nmi(out.kmeans_partition.labels, truth);

    const Digraph knn = knn_digraph(out.cloud);
    const Digraph sym = symmetrize(knn);

    // VSC baseline on the symmetrized graph
    out.vsc_partition = sc_sym(knn, 2, SymVariant::Sym1, rng.split(2).next_u64(),
                               cfg.kmeans_restarts);
    out.nmi_vsc = nmi(out.vsc_partition.labels, truth);

    // GSC with the explicit regularizer nu = pi^alpha, pi ~ degree
    const TransitionMatrix p = transition_matrix(sym);
    Eigen::VectorXd pi(n);
    for (int i = 0; i < n; ++i) pi[i] = sym.out_degree(i);
    pi /= pi.sum();
    std::vector<double> alphas = cfg.gsc_alphas;
    if (alphas.empty()) alphas = linear_grid(0.0, 5.0, 0.25);
    const std::uint64_t eig_seed = rng.split(3).next_u64();
    const std::uint64_t km_seed = rng.split(4).next_u64();
    double best_nmi = -1.0;
    for (double alpha : alphas) {
        const VertexMeasure nu(pi.array().pow(alpha).matrix(), "pi^alpha");
        const GeneralizedLaplacian lap = generalized_laplacian(nu, p);
        const SpectralEmbedding emb = smallest_eigenpairs(lap.matrix, 2, eig_seed);
        Partition part = kmeans(emb.vectors, 2, cfg.kmeans_restarts, km_seed);
        part.provenance.method = "gsc-pi-alpha";
        part.provenance.alpha = alpha;
        part.provenance.seed = cfg.seed;
        const double score = nmi(part.labels, truth);
        if (score > best_nmi) {
            best_nmi = score;
            out.gsc_partition = std::move(part);
            out.gsc_alpha = alpha;
        }
    }
    out.nmi_gsc = best_nmi;

    // Crossover sweep between the true small cluster and the VSC cluster
    // that swallowed it
    std::vector<int> small;
    for (int i = 0; i < n; ++i)
        if (truth[static_cast<std::size_t>(i)] == 0) small.push_back(i);
    std::vector<long long> votes(2, 0);
    for (int i : small) ++votes[static_cast<std::size_t>(
        out.vsc_partition.labels[static_cast<std::size_t>(i)])];
    const int vsc_cluster = votes[0] >= votes[1] ? 0 : 1;
    std::vector<int> merged = small;
    for (int i = 0; i < n; ++i) {
        if (out.vsc_partition.labels[static_cast<std::size_t>(i)] == vsc_cluster) {
            merged.push_back(i);
        }
    }
    std::vector<double> sweep_alphas = cfg.sweep_alphas;
    if (sweep_alphas.empty()) sweep_alphas = linear_grid(0.0, 5.0, 0.1);
    out.sweep = energy_crossover_sweep(sym, VertexSet(small), VertexSet(merged), sweep_alphas);
    out.alpha_xp = out.sweep.alpha_crossover;
    out.alpha_th = theoretical_alpha(ToyModelParams(cfg.b, cfg.c, cfg.rho));
    return out;
}

int cmd_toy_demo(const ToyDemoConfig& cfg) {
    try {
        const ToyDemoResult res = run_toy_demo(cfg);
        std::filesystem::create_directories(cfg.out_dir);
        const std::filesystem::path dir(cfg.out_dir);
        {
            std::ofstream os(dir / "toy_points.csv");
            write_points_csv(res.cloud, os);
        }
        {
            std::ofstream os(dir / "toy_partitions.csv");
            os << "x,y,truth,kmeans,vsc,gsc\n";
            for (int i = 0; i < res.cloud.n(); ++i) {
                os << format_double(res.cloud.points(i, 0)) << ","
                   << format_double(res.cloud.points(i, 1)) << ","
                   << (*res.cloud.labels)[static_cast<std::size_t>(i)] << ","
                   << res.kmeans_partition.labels[static_cast<std::size_t>(i)] << ","
                   << res.vsc_partition.labels[static_cast<std::size_t>(i)] << ","
                   << res.gsc_partition.labels[static_cast<std::size_t>(i)] << "\n";
            }
        }
        {
            std::ofstream os(dir / "crossover.csv");
            res.sweep.write_csv(os);
        }
        write_text_file((dir / "toy_summary.json").string(),
                        res.summary_json(cfg).dump(2) + "\n");
        std::cout << "nmi: kmeans=" << format_double(res.nmi_kmeans)
                  << " vsc=" << format_double(res.nmi_vsc)
                  << " gsc=" << format_double(res.nmi_gsc) << " (alpha=" << res.gsc_alpha << ")\n";
        std::cout << "alpha_xp="
                  << (res.alpha_xp ? format_double(*res.alpha_xp) : std::string("none"))
                  << " alpha_th=" << format_double(res.alpha_th) << "\n";
        std::cout << "wrote " << cfg.out_dir << "/toy_summary.json\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

BuildGraphInfo run_build_graph(const BuildGraphConfig& cfg) {
    PointCloud pc = load_csv(cfg.input_csv, cfg.label_column);
    if (cfg.standardize_features) pc = standardize(pc);
    const int n = pc.n();
    const int k = std::min(cfg.knn.value_or(default_knn_count(n)), n - 1);
    const Digraph g = knn_digraph(pc, k);
    g.save_edge_list(cfg.output_path);
    BuildGraphInfo info;
    info.n = n;
    info.k = k;
    info.edges = g.edge_count();
    info.is_strongly_connected = strongly_connected(g);
    return info;
}

int cmd_build_graph(const BuildGraphConfig& cfg) {
    try {
        const BuildGraphInfo info = run_build_graph(cfg);
        std::cout << "n=" << info.n << " k=" << info.k << " edges=" << info.edges
                  << " strongly_connected=" << (info.is_strongly_connected ? 1 : 0) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gsc
