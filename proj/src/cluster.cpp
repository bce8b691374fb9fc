#include "gsc/cluster.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "gsc/laplacian.hpp"
#include "gsc/measure.hpp"
#include "gsc/metrics.hpp"
#include "gsc/parallel.hpp"
#include "gsc/rng.hpp"
#include "gsc/spectral.hpp"

namespace gsc {

namespace {

struct LloydOutcome {
    std::vector<int> labels;
    double inertia = 0.0;
    bool empty_cluster = false;
};

double squared_distance(const Eigen::MatrixXd& pts, int i, const Eigen::RowVectorXd& c) {
    return (pts.row(i) - c).squaredNorm();
}

LloydOutcome lloyd_once(const Eigen::MatrixXd& pts, int k, Rng rng) {
    const int n = static_cast<int>(pts.rows());
    const int d = static_cast<int>(pts.cols());
    Eigen::MatrixXd centers(k, d);
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);

    // k-means++ seeding
    {
        const int first = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        centers.row(0) = pts.row(first);
        chosen[static_cast<std::size_t>(first)] = 1;
        Eigen::VectorXd d2(n);
        for (int i = 0; i < n; ++i) d2[i] = squared_distance(pts, i, centers.row(0));
        for (int c = 1; c < k; ++c) {
            const double total = d2.sum();
            int pick = -1;
            if (total > 0.0) {
                const double r = rng.next_double() * total;
                double acc = 0.0;
                for (int i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (acc >= r) {
                        pick = i;
                        break;
                    }
                }
                if (pick < 0) pick = n - 1;
            } else {
                // all remaining mass is zero (duplicate points): take the
                // first index not picked yet
                for (int i = 0; i < n; ++i) {
                    if (!chosen[static_cast<std::size_t>(i)]) {
                        pick = i;
                        break;
                    }
                }
                if (pick < 0) pick = 0;
            }
            centers.row(c) = pts.row(pick);
            chosen[static_cast<std::size_t>(pick)] = 1;
            for (int i = 0; i < n; ++i) {
                d2[i] = std::min(d2[i], squared_distance(pts, i, centers.row(c)));
            }
        }
    }

    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::vector<long long> counts(static_cast<std::size_t>(k), 0);
    double prev_inertia = std::numeric_limits<double>::infinity();
    double inertia = prev_inertia;
    constexpr int kMaxIterations = 300;
    constexpr double kInertiaTol = 1e-10;

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = squared_distance(pts, i, centers.row(0));
            for (int c = 1; c < k; ++c) {
                const double dist = squared_distance(pts, i, centers.row(c));
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            labels[static_cast<std::size_t>(i)] = best;
            ++counts[static_cast<std::size_t>(best)];
        }
        // re-seed empty clusters from the farthest point of a non-singleton
        // cluster
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] != 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                const int owner = labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(owner)] <= 1) continue;
                const double dist = squared_distance(pts, i, centers.row(owner));
                if (dist > far_d) {
                    far_d = dist;
                    far = i;
                }
            }
            if (far < 0) continue;  // only duplicates left; cluster stays empty
            --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
            labels[static_cast<std::size_t>(far)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            centers.row(c) = pts.row(far);
        }
        centers.setZero();
        for (int i = 0; i < n; ++i) centers.row(labels[static_cast<std::size_t>(i)]) += pts.row(i);
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
        inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            inertia += squared_distance(pts, i, centers.row(labels[static_cast<std::size_t>(i)]));
        }
        if (std::abs(prev_inertia - inertia) < kInertiaTol) break;
        prev_inertia = inertia;
    }

    LloydOutcome out;
    out.labels = std::move(labels);
    out.inertia = inertia;
    out.empty_cluster =
        std::any_of(counts.begin(), counts.end(), [](long long c) { return c == 0; });
    return out;
}

void check_cluster_count(int k, int n) {
    if (k < 1 || k > n) {
        throw InvalidParameter("cluster count k=" + std::to_string(k) +
                               " out of range for n=" + std::to_string(n));
    }
}

}  // namespace

Partition kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    check_cluster_count(k, n);
    if (restarts < 1) throw InvalidParameter("kmeans requires at least one restart");
    const Rng root(seed);
    LloydOutcome best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        LloydOutcome candidate = lloyd_once(points, k, root.split(static_cast<std::uint64_t>(r)));
        if (candidate.inertia < best.inertia) best = std::move(candidate);
    }
    Partition p;
    p.labels = std::move(best.labels);
    p.k = k;
    p.provenance.method = "kmeans";
    p.provenance.seed = seed;
    p.provenance.restarts = restarts;
    p.provenance.kmeans_inertia = best.inertia;
    p.provenance.empty_cluster = best.empty_cluster;
    return p;
}

GridResult gsc_run(const Digraph& g, int k, GscVariant variant, double alpha, double gamma,
                   int t_max, std::uint64_t seed, int kmeans_restarts) {
    check_cluster_count(k, g.n());
    if (t_max < 0) throw InvalidParameter("t_max must be nonnegative");
    if (variant == GscVariant::Gsc1) {
        if (gamma != 1.0) throw InvalidParameter("GSC1 requires gamma = 1");
    } else if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw InvalidParameter("GSC2/GSC3 require gamma in [0,1)");
    }
    const TransitionMatrix p = transition_matrix(g);
    const TransitionMatrix p_mix = teleport_mix(p, gamma);
    const int n = g.n();
    const Rng rng(seed);
    // one eigensolver/k-means seed pair for the whole t sweep: identical
    // measures at different t then provably give identical partitions
    const std::uint64_t eig_seed = rng.split(0).next_u64();
    const std::uint64_t km_seed = rng.split(1).next_u64();
    const char* name = variant == GscVariant::Gsc1   ? "gsc1"
                       : variant == GscVariant::Gsc2 ? "gsc2"
                                                     : "gsc3";
    Eigen::VectorXd iterate = Eigen::VectorXd::Constant(n, 1.0 / n);
    GridResult out;
    out.entries.reserve(static_cast<std::size_t>(t_max) + 1);
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) iterate = p_mix.transpose_times(iterate);
        const VertexMeasure nu = power_measure_from_iterate(iterate, t, gamma, alpha);
        const GeneralizedLaplacian lap = generalized_laplacian(nu, p);
        SpectralEmbedding emb;
        if (variant == GscVariant::Gsc3) {
            emb = smallest_eigenpairs(normalized_generalized_laplacian(lap), k, eig_seed);
        } else {
            emb = smallest_eigenpairs(lap.matrix, k, eig_seed);
        }
        emb.provenance = lap.measure_label;
        Partition part = kmeans(emb.vectors, k, kmeans_restarts, km_seed);
        part.provenance.method = name;
        part.provenance.alpha = alpha;
        part.provenance.gamma = gamma;
        part.provenance.t = t;
        part.provenance.seed = seed;
        out.entries.push_back(GridEntry{std::move(part), {}});
    }
    return out;
}

Partition sc_sym(const Digraph& g, int k, SymVariant variant, std::uint64_t seed,
                 int kmeans_restarts) {
    check_cluster_count(k, g.n());
    const Digraph sym = symmetrize(g);
    const int n = sym.n();
    Eigen::MatrixXd lap;
    if (variant == SymVariant::Sym1) {
        lap = -sym.dense();
        for (int i = 0; i < n; ++i) lap(i, i) += sym.out_degree(i);
    } else {
        Eigen::VectorXd s(n);
        for (int i = 0; i < n; ++i) {
            const double deg = sym.out_degree(i);
            s[i] = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;  // zero-degree rows/cols stay zero
        }
        lap = Eigen::MatrixXd::Identity(n, n);
        for (int i = 0; i < n; ++i) {
            for (const auto& [j, w] : sym.out_edges(i)) {
                if (j < i) continue;  // mirrored assembly
                const double v = w * (s[i] * s[j]);
                lap(i, j) -= v;
                if (j != i) lap(j, i) -= v;
            }
        }
    }
    const Rng rng(seed);
    const SpectralEmbedding emb = smallest_eigenpairs(lap, k, rng.split(0).next_u64());
    Partition part = kmeans(emb.vectors, k, kmeans_restarts, rng.split(1).next_u64());
    part.provenance.method = variant == SymVariant::Sym1 ? "sc-sym1" : "sc-sym2";
    part.provenance.seed = seed;
    return part;
}

Partition dsc_plus(const Digraph& g, int k, double gamma, std::uint64_t seed,
                   int kmeans_restarts) {
    check_cluster_count(k, g.n());
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidParameter("dsc+ requires gamma in [0,1)");
    const TransitionMatrix p_mix = teleport_mix(transition_matrix(g), gamma);
    const VertexMeasure pi = stationary_distribution(p_mix);
    const int n = g.n();
    const Eigen::VectorXd root = pi.values.cwiseSqrt();
    Eigen::MatrixXd b(n, n);  // Phi^1/2 P~ Phi^-1/2
    const Eigen::MatrixXd dense = p_mix.dense();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = root[i] * dense(i, j) / root[j];
    Eigen::MatrixXd op = -0.5 * (b + b.transpose());
    op.diagonal().array() += 1.0;
    const Rng rng(seed);
    const SpectralEmbedding emb = smallest_eigenpairs(op, k, rng.split(0).next_u64());
    Partition part = kmeans(emb.vectors, k, kmeans_restarts, rng.split(1).next_u64());
    part.provenance.method = "dsc_plus_sym";
    part.provenance.gamma = gamma;
    part.provenance.seed = seed;
    return part;
}

Partition di_sim(const Digraph& g, int k, DiSimSide side, double tau, std::uint64_t seed,
                 int kmeans_restarts) {
    check_cluster_count(k, g.n());
    if (!(tau >= 0.0)) throw InvalidParameter("di-sim requires tau >= 0");
    const int n = g.n();
    if (tau == 0.0) {
        for (int i = 0; i < n; ++i) {
            if (g.out_degree(i) == 0.0 || g.in_degree(i) == 0.0) {
                throw DegenerateMeasure("di-sim with tau=0 needs positive in/out degrees");
            }
        }
    }
    Eigen::VectorXd s_out(n);
    Eigen::VectorXd s_in(n);
    for (int i = 0; i < n; ++i) {
        s_out[i] = 1.0 / std::sqrt(g.out_degree(i) + tau);
        s_in[i] = 1.0 / std::sqrt(g.in_degree(i) + tau);
    }
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, w] : g.out_edges(i)) op(i, j) = w * s_out[i] * s_in[j];
    Eigen::BDCSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::MatrixXd u = svd.matrixU().leftCols(k);
    Eigen::MatrixXd v = svd.matrixV().leftCols(k);
    // deterministic signs; flips are applied to both factors in tandem
    for (int c = 0; c < k; ++c) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(u(i, c));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (u(arg, c) < 0.0) {
            u.col(c) = -u.col(c);
            v.col(c) = -v.col(c);
        }
    }
    Eigen::MatrixXd embedding = side == DiSimSide::Left ? u : v;
    for (int i = 0; i < n; ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }
    const Rng rng(seed);
    Partition part = kmeans(embedding, k, kmeans_restarts, rng.split(1).next_u64());
    part.provenance.method = side == DiSimSide::Left ? "di-sim-l" : "di-sim-r";
    part.provenance.tau = tau;
    part.provenance.seed = seed;
    return part;
}

Method method_from_string(const std::string& name) {
    if (name == "gsc1") return Method::Gsc1;
    if (name == "gsc2") return Method::Gsc2;
    if (name == "gsc3") return Method::Gsc3;
    if (name == "sc-sym1") return Method::ScSym1;
    if (name == "sc-sym2") return Method::ScSym2;
    if (name == "dsc-plus") return Method::DscPlus;
    if (name == "di-sim-l") return Method::DiSimLeft;
    if (name == "di-sim-r") return Method::DiSimRight;
    throw InvalidParameter("unknown method '" + name + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Gsc1: return "gsc1";
        case Method::Gsc2: return "gsc2";
        case Method::Gsc3: return "gsc3";
        case Method::ScSym1: return "sc-sym1";
        case Method::ScSym2: return "sc-sym2";
        case Method::DscPlus: return "dsc-plus";
        case Method::DiSimLeft: return "di-sim-l";
        case Method::DiSimRight: return "di-sim-r";
    }
    throw InvalidParameter("unknown method enum");
}

Selection Selection::supervised(const std::string& metric, std::vector<int> labels) {
    if (metric != "nmi" && metric != "ari") {
        throw InvalidParameter("supervised selection metric must be nmi or ari");
    }
    Selection s;
    s.mode = Mode::Supervised;
    s.metric = metric;
    s.labels = std::move(labels);
    return s;
}

Selection Selection::unsupervised_ch(Eigen::MatrixXd features) {
    Selection s;
    s.mode = Mode::Unsupervised;
    s.metric = "ch";
    s.features = std::move(features);
    return s;
}

namespace {

// CH on the effective clusters of a partition; degenerate partitions score 0
double safe_ch(const Eigen::MatrixXd& features, const std::vector<int>& labels) {
    std::vector<int> compact(labels.size());
    int kk = 0;
    {
        std::vector<int> remap;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const int l = labels[i];
            int idx = -1;
            for (std::size_t r = 0; r < remap.size(); ++r) {
                if (remap[r] == l) {
                    idx = static_cast<int>(r);
                    break;
                }
            }
            if (idx < 0) {
                idx = static_cast<int>(remap.size());
                remap.push_back(l);
            }
            compact[i] = idx;
        }
        kk = static_cast<int>(remap.size());
    }
    const int n = static_cast<int>(labels.size());
    if (kk < 2 || kk > n - 1) return 0.0;
    return calinski_harabasz(features, compact, kk);
}

void score_entry(GridEntry& entry, const Selection& sel) {
    if (sel.labels) {
        entry.scores["nmi"] = nmi(entry.partition.labels, *sel.labels);
        entry.scores["ari"] = ari(entry.partition.labels, *sel.labels);
    }
    if (sel.features) {
        entry.scores["ch"] = safe_ch(*sel.features, entry.partition.labels);
    }
}

// tie-break order: smaller t, smaller alpha, larger gamma, first tau
bool params_preferred(const PartitionProvenance& a, const PartitionProvenance& b) {
    const int ta = a.t.value_or(0);
    const int tb = b.t.value_or(0);
    if (ta != tb) return ta < tb;
    const double aa = a.alpha.value_or(0.0);
    const double ab = b.alpha.value_or(0.0);
    if (aa != ab) return aa < ab;
    const double ga = a.gamma.value_or(0.0);
    const double gb = b.gamma.value_or(0.0);
    if (ga != gb) return ga > gb;
    return false;
}

}  // namespace

SearchResult grid_search(const Digraph& g, int k, Method method, const Grids& grids,
                         const Selection& selection, std::uint64_t seed, int workers,
                         int kmeans_restarts) {
    if (selection.mode == Selection::Mode::Supervised) {
        if (!selection.labels) throw InvalidParameter("supervised selection requires labels");
        if (static_cast<int>(selection.labels->size()) != g.n()) {
            throw ShapeMismatch("ground-truth label count does not match graph");
        }
        if (selection.metric != "nmi" && selection.metric != "ari") {
            throw InvalidParameter("supervised metric must be nmi or ari");
        }
    } else {
        if (!selection.features) throw InvalidParameter("unsupervised selection requires features");
        if (static_cast<int>(selection.features->rows()) != g.n()) {
            throw ShapeMismatch("feature row count does not match graph");
        }
        if (selection.metric != "ch") throw InvalidParameter("unsupervised metric must be ch");
    }

    const bool is_gsc =
        method == Method::Gsc1 || method == Method::Gsc2 || method == Method::Gsc3;
    std::vector<double> gammas = grids.gammas;
    if (is_gsc) {
        if (grids.alphas.empty()) throw InvalidParameter("alpha grid must not be empty");
        if (method == Method::Gsc1) {
            if (gammas.empty()) gammas = {1.0};
            for (double gamma : gammas) {
                if (gamma != 1.0) throw InvalidParameter("GSC1 grid requires gamma = 1");
            }
        } else if (gammas.empty()) {
            throw InvalidParameter("GSC2/GSC3 require a gamma grid");
        }
    }
    if (method == Method::DscPlus && gammas.empty()) {
        throw InvalidParameter("DSC+ requires a gamma grid");
    }
    if ((method == Method::DiSimLeft || method == Method::DiSimRight) && grids.taus.empty()) {
        throw InvalidParameter("DI-SIM requires a tau grid");
    }

    // one task per independent grid point; GSC tasks expand over t internally
    struct Task {
        double alpha = 0.0;
        double gamma = 1.0;
        double tau = 0.0;
    };
    std::vector<Task> tasks;
    switch (method) {
        case Method::Gsc1:
        case Method::Gsc2:
        case Method::Gsc3:
            for (double alpha : grids.alphas)
                for (double gamma : gammas) tasks.push_back({alpha, gamma, 0.0});
            break;
        case Method::ScSym1:
        case Method::ScSym2:
            tasks.push_back({});
            break;
        case Method::DscPlus:
            for (double gamma : gammas) tasks.push_back({0.0, gamma, 0.0});
            break;
        case Method::DiSimLeft:
        case Method::DiSimRight:
            for (double tau : grids.taus) tasks.push_back({0.0, 1.0, tau});
            break;
    }

    const Rng rng(seed);
    std::vector<std::vector<GridEntry>> slots(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), workers, [&](int idx) {
        const Task& task = tasks[static_cast<std::size_t>(idx)];
        const std::uint64_t task_seed = rng.split(static_cast<std::uint64_t>(idx)).next_u64();
        std::vector<GridEntry> produced;
        switch (method) {
            case Method::Gsc1:
            case Method::Gsc2:
            case Method::Gsc3: {
                const GscVariant variant = method == Method::Gsc1   ? GscVariant::Gsc1
                                           : method == Method::Gsc2 ? GscVariant::Gsc2
                                                                    : GscVariant::Gsc3;
                produced = gsc_run(g, k, variant, task.alpha, task.gamma, grids.t_max, task_seed,
                                   kmeans_restarts)
                               .entries;
                break;
            }
            case Method::ScSym1:
            case Method::ScSym2: {
                const SymVariant variant =
                    method == Method::ScSym1 ? SymVariant::Sym1 : SymVariant::Sym2;
                produced.push_back(
                    GridEntry{sc_sym(g, k, variant, task_seed, kmeans_restarts), {}});
                break;
            }
            case Method::DscPlus:
                produced.push_back(
                    GridEntry{dsc_plus(g, k, task.gamma, task_seed, kmeans_restarts), {}});
                break;
            case Method::DiSimLeft:
            case Method::DiSimRight: {
                const DiSimSide side =
                    method == Method::DiSimLeft ? DiSimSide::Left : DiSimSide::Right;
                produced.push_back(
                    GridEntry{di_sim(g, k, side, task.tau, task_seed, kmeans_restarts), {}});
                break;
            }
        }
        for (auto& entry : produced) score_entry(entry, selection);
        slots[static_cast<std::size_t>(idx)] = std::move(produced);
    });

    SearchResult result;
    for (auto& slot : slots) {
        for (auto& entry : slot) result.grid.entries.push_back(std::move(entry));
    }
    if (result.grid.entries.empty()) throw InvalidParameter("empty grid");

    result.best_index = 0;
    double best_score = result.grid.entries[0].scores.at(selection.metric);
    for (std::size_t i = 1; i < result.grid.entries.size(); ++i) {
        const auto& entry = result.grid.entries[i];
        const double score = entry.scores.at(selection.metric);
        const auto& incumbent =
            result.grid.entries[static_cast<std::size_t>(result.best_index)].partition.provenance;
        if (score > best_score ||
            (score == best_score &&
             params_preferred(entry.partition.provenance, incumbent))) {
            best_score = score;
            result.best_index = static_cast<int>(i);
        }
    }
    result.best = result.grid.entries[static_cast<std::size_t>(result.best_index)].partition;
    return result;
}

nlohmann::json params_to_json(const PartitionProvenance& prov) {
    nlohmann::json j;
    j["method"] = prov.method;
    if (prov.alpha) j["alpha"] = *prov.alpha;
    if (prov.gamma) j["gamma"] = *prov.gamma;
    if (prov.t) j["t"] = *prov.t;
    if (prov.tau) j["tau"] = *prov.tau;
    return j;
}

nlohmann::json to_json(const GridResult& grid) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& entry : grid.entries) {
        nlohmann::json e;
        e["params"] = params_to_json(entry.partition.provenance);
        e["labels"] = entry.partition.labels;
        e["scores"] = entry.scores;
        arr.push_back(std::move(e));
    }
    return arr;
}

void write_labels_csv(const Partition& partition, std::ostream& os) {
    os << "label\n";
    for (int label : partition.labels) os << label << "\n";
}

}  // namespace gsc
