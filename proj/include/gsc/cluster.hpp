#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsc/digraph.hpp"

#include "json.hpp"

namespace gsc {

struct PartitionProvenance {
    std::string method = "kmeans";
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<double> tau;
    std::optional<int> t;
    std::uint64_t seed = 0;
    int restarts = 0;
    double kmeans_inertia = 0.0;
    bool empty_cluster = false;
};

/// Vertex-to-cluster assignment with k clusters and run provenance.
struct Partition {
    std::vector<int> labels;
    int k = 0;
    PartitionProvenance provenance;
};

struct GridEntry {
    Partition partition;
    std::map<std::string, double> scores;
};

/// One entry per evaluated grid point, in deterministic grid order.
struct GridResult {
    std::vector<GridEntry> entries;
};

/// k-means with k-means++ initialization and Lloyd iterations, best of
/// `restarts` runs by inertia. Empty clusters are re-seeded from the point
/// farthest from its centroid.
Partition kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed);

enum class GscVariant { Gsc1, Gsc2, Gsc3 };

/// Generalized spectral clustering sweep over t in [0, t_max]: power measure
/// from the teleport-mixed walk, generalized Laplacian of the ORIGINAL walk,
/// spectral embedding, k-means. Gsc1 requires gamma = 1; Gsc2/Gsc3 require
/// gamma in [0, 1). Gsc3 embeds the normalized Laplacian.
GridResult gsc_run(const Digraph& g, int k, GscVariant variant, double alpha, double gamma,
                   int t_max, std::uint64_t seed, int kmeans_restarts = 100);

enum class SymVariant { Sym1, Sym2 };

/// Spectral clustering on the symmetrized adjacency: Sym1 embeds D - W~,
/// Sym2 the normalized I - D^-1/2 W~ D^-1/2.
Partition sc_sym(const Digraph& g, int k, SymVariant variant, std::uint64_t seed,
                 int kmeans_restarts = 100);

/// Directed spectral clustering via the teleporting walk: embeds
/// I - (Phi^1/2 P~ Phi^-1/2 + Phi^-1/2 P~^T Phi^1/2)/2 with Phi = diag(pi~).
Partition dsc_plus(const Digraph& g, int k, double gamma, std::uint64_t seed,
                   int kmeans_restarts = 100);

enum class DiSimSide { Left, Right };

/// Co-clustering from singular vectors of the regularized operator
/// (D_out + tau I)^-1/2 W (D_in + tau I)^-1/2; rows L2-normalized.
Partition di_sim(const Digraph& g, int k, DiSimSide side, double tau, std::uint64_t seed,
                 int kmeans_restarts = 100);

enum class Method { Gsc1, Gsc2, Gsc3, ScSym1, ScSym2, DscPlus, DiSimLeft, DiSimRight };

/// Parses "gsc1", "sc-sym2", "di-sim-l", ... ; throws InvalidParameter.
Method method_from_string(const std::string& name);
std::string method_name(Method m);

struct Grids {
    std::vector<double> alphas{0.0};
    std::vector<double> gammas;  // empty selects {1} for Gsc1, error otherwise
    int t_max = 0;
    std::vector<double> taus{1.0};
};

/// How grid points are scored and the best one chosen. Supervised modes
/// maximize NMI or ARI against ground-truth labels; the unsupervised mode
/// maximizes the Calinski-Harabasz index on the original features. Labels
/// and features may both be present; everything available is scored.
struct Selection {
    enum class Mode { Supervised, Unsupervised };

    Mode mode = Mode::Supervised;
    std::string metric = "nmi";  // nmi | ari | ch
    std::optional<std::vector<int>> labels;
    std::optional<Eigen::MatrixXd> features;

    static Selection supervised(const std::string& metric, std::vector<int> labels);
    static Selection unsupervised_ch(Eigen::MatrixXd features);
};

struct SearchResult {
    Partition best;
    GridResult grid;
    int best_index = -1;
};

/// Evaluates every grid point of the chosen method, scores the partitions,
/// and returns the argmax of the selection metric. Ties break toward smaller
/// t, then smaller alpha, then larger gamma, then first tau. Grid points run
/// on a worker pool; results are merged in grid order regardless of timing.
SearchResult grid_search(const Digraph& g, int k, Method method, const Grids& grids,
                         const Selection& selection, std::uint64_t seed, int workers = 1,
                         int kmeans_restarts = 100);

nlohmann::json params_to_json(const PartitionProvenance& prov);
nlohmann::json to_json(const GridResult& grid);
void write_labels_csv(const Partition& partition, std::ostream& os);

}  // namespace gsc
