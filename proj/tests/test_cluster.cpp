#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsc/cluster.hpp"
#include "gsc/data.hpp"
#include "gsc/metrics.hpp"
#include "test_support.hpp"

using namespace gsc;

namespace {

Eigen::MatrixXd line_points() {
    Eigen::MatrixXd pts(4, 1);
    pts << 0, 1, 10, 11;
    return pts;
}

// exhaustive minimum-inertia 2-partition oracle for tiny inputs
double best_two_cluster_inertia(const Eigen::MatrixXd& pts) {
    const int n = static_cast<int>(pts.rows());
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        Eigen::RowVectorXd c0 = Eigen::RowVectorXd::Zero(pts.cols());
        Eigen::RowVectorXd c1 = Eigen::RowVectorXd::Zero(pts.cols());
        int n0 = 0;
        int n1 = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) {
                c0 += pts.row(i);
                ++n0;
            } else {
                c1 += pts.row(i);
                ++n1;
            }
        }
        c0 /= n0;
        c1 /= n1;
        double inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            inertia += (mask & (1 << i)) ? (pts.row(i) - c0).squaredNorm()
                                         : (pts.row(i) - c1).squaredNorm();
        }
        best = std::min(best, inertia);
    }
    return best;
}

Digraph two_cliques() {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
    w(0, 1) = w(1, 0) = 1;
    w(2, 3) = w(3, 2) = 1;
    return Digraph::from_adjacency(w);
}

// 2-cliques give di-sim a fully degenerate singular spectrum; 3-cliques have
// a proper gap after the two block-indicator directions
Digraph two_triangles() {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(6, 6);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b) {
                w(a, b) = 1;
                w(3 + a, 3 + b) = 1;
            }
    return Digraph::from_adjacency(w);
}

}  // namespace

TEST_CASE("kmeans recovers the separated pairs") {
    const Partition p = kmeans(line_points(), 2, 10, 1);
    CHECK(p.labels[0] == p.labels[1]);
    CHECK(p.labels[2] == p.labels[3]);
    CHECK(p.labels[0] != p.labels[2]);
    CHECK(p.provenance.kmeans_inertia ==
          doctest::Approx(best_two_cluster_inertia(line_points())));
    CHECK_FALSE(p.provenance.empty_cluster);
}

TEST_CASE("kmeans edge cases") {
    const Eigen::MatrixXd pts = line_points();

    SUBCASE("k equals n gives zero inertia") {
        const Partition p = kmeans(pts, 4, 3, 7);
        CHECK(p.provenance.kmeans_inertia == 0.0);
        std::vector<int> sorted = p.labels;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<int>{0, 1, 2, 3});
    }

    SUBCASE("k=1 centers on the mean") {
        const Partition p = kmeans(pts, 1, 1, 3);
        CHECK(p.labels == std::vector<int>{0, 0, 0, 0});
        // inertia = sum of squared distances to the mean 5.5
        CHECK(p.provenance.kmeans_inertia == doctest::Approx(30.25 + 20.25 + 20.25 + 30.25));
    }

    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(kmeans(pts, 5, 1, 0), InvalidParameter);
        CHECK_THROWS_AS(kmeans(pts, 0, 1, 0), InvalidParameter);
        CHECK_THROWS_AS(kmeans(pts, 2, 0, 0), InvalidParameter);
    }

    SUBCASE("duplicate points: re-seeding keeps every cluster non-empty") {
        Eigen::MatrixXd dup(4, 1);
        dup << 0, 0, 0, 1;
        const Partition p = kmeans(dup, 3, 2, 11);
        CHECK_FALSE(p.provenance.empty_cluster);
        CHECK(p.provenance.kmeans_inertia == 0.0);
        std::vector<int> used(3, 0);
        for (int label : p.labels) {
            REQUIRE(label >= 0);
            REQUIRE(label < 3);
            used[static_cast<std::size_t>(label)] = 1;
        }
        CHECK(used == std::vector<int>{1, 1, 1});
    }
}

TEST_CASE("kmeans is deterministic in the seed") {
    Rng rng(55);
    Eigen::MatrixXd pts(40, 3);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 3; ++j) pts(i, j) = rng.next_double();
    const Partition a = kmeans(pts, 4, 8, 99);
    const Partition b = kmeans(pts, 4, 8, 99);
    CHECK(a.labels == b.labels);
    CHECK(a.provenance.kmeans_inertia == b.provenance.kmeans_inertia);
}

TEST_CASE("gsc_run recovers components and validates parameters") {
    const Digraph g = two_cliques();

    SUBCASE("components at alpha=0, t=0") {
        const GridResult res = gsc_run(g, 2, GscVariant::Gsc1, 0.0, 1.0, 0, 3);
        REQUIRE(res.entries.size() == 1);
        const std::vector<int> truth = gsc_test::component_labels(g);
        CHECK(ari(res.entries[0].partition.labels, truth) == 1.0);
    }

    SUBCASE("k=1 puts everything together") {
        const GridResult res = gsc_run(g, 1, GscVariant::Gsc1, 0.5, 1.0, 2, 3);
        for (const auto& e : res.entries) {
            CHECK(e.partition.labels == std::vector<int>{0, 0, 0, 0});
        }
    }

    SUBCASE("gamma validation per variant") {
        CHECK_THROWS_AS(gsc_run(g, 2, GscVariant::Gsc1, 0.0, 0.9, 0, 3), InvalidParameter);
        CHECK_THROWS_AS(gsc_run(g, 2, GscVariant::Gsc2, 0.0, 1.0, 0, 3), InvalidParameter);
        CHECK_THROWS_AS(gsc_run(g, 2, GscVariant::Gsc3, 0.0, -0.1, 0, 3), InvalidParameter);
        CHECK_THROWS_AS(gsc_run(g, 2, GscVariant::Gsc1, 0.0, 1.0, -1, 3), InvalidParameter);
    }

    SUBCASE("alpha=0 yields identical partitions for every t") {
        const GridResult res = gsc_run(g, 2, GscVariant::Gsc1, 0.0, 1.0, 6, 3);
        REQUIRE(res.entries.size() == 7);
        for (std::size_t i = 1; i < res.entries.size(); ++i) {
            CHECK(res.entries[i].partition.labels == res.entries[0].partition.labels);
        }
    }

    SUBCASE("provenance carries the sweep parameters") {
        const GridResult res = gsc_run(g, 2, GscVariant::Gsc2, 0.3, 0.8, 2, 3);
        REQUIRE(res.entries.size() == 3);
        CHECK(res.entries[2].partition.provenance.method == "gsc2");
        CHECK(res.entries[2].partition.provenance.alpha == 0.3);
        CHECK(res.entries[2].partition.provenance.gamma == 0.8);
        CHECK(res.entries[2].partition.provenance.t == 2);
    }
}

TEST_CASE("gsc variants agree on easy components") {
    const Digraph g = two_cliques();
    const std::vector<int> truth = gsc_test::component_labels(g);
    for (GscVariant variant : {GscVariant::Gsc2, GscVariant::Gsc3}) {
        const GridResult res = gsc_run(g, 2, variant, 0.5, 0.9, 1, 3);
        for (const auto& e : res.entries) CHECK(ari(e.partition.labels, truth) == 1.0);
    }
}

TEST_CASE("sc_sym on fixtures") {
    SUBCASE("components recovered by both variants") {
        const Digraph g = two_cliques();
        const std::vector<int> truth = gsc_test::component_labels(g);
        CHECK(ari(sc_sym(g, 2, SymVariant::Sym1, 3).labels, truth) == 1.0);
        CHECK(ari(sc_sym(g, 2, SymVariant::Sym2, 3).labels, truth) == 1.0);
    }

    SUBCASE("2-cycle splits into singletons") {
        Eigen::MatrixXd w(2, 2);
        w << 0, 1, 1, 0;
        const Partition p = sc_sym(Digraph::from_adjacency(w), 2, SymVariant::Sym1, 3);
        CHECK(p.labels[0] != p.labels[1]);
    }

    SUBCASE("k=1") {
        const Partition p = sc_sym(two_cliques(), 1, SymVariant::Sym2, 3);
        CHECK(p.labels == std::vector<int>{0, 0, 0, 0});
    }
}

TEST_CASE("dsc_plus operator and fixtures") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    const Digraph cycle = Digraph::from_adjacency(w);

    SUBCASE("near-limit gamma approaches I - P") {
        const TransitionMatrix p_mix = teleport_mix(transition_matrix(cycle), 0.99);
        const VertexMeasure pi = stationary_distribution(p_mix);
        CHECK(pi.values[0] == doctest::Approx(0.5));
        const Partition part = dsc_plus(cycle, 2, 0.99, 3);
        CHECK(part.labels[0] != part.labels[1]);
        CHECK(part.provenance.method == "dsc_plus_sym");
    }

    SUBCASE("gamma validation") {
        CHECK_THROWS_AS(dsc_plus(cycle, 2, 1.0, 3), InvalidParameter);
        CHECK_THROWS_AS(dsc_plus(cycle, 2, -0.2, 3), InvalidParameter);
    }

    SUBCASE("components with mild teleport") {
        const Digraph g = two_cliques();
        const std::vector<int> truth = gsc_test::component_labels(g);
        CHECK(ari(dsc_plus(g, 2, 0.8, 3).labels, truth) == 1.0);
    }
}

TEST_CASE("di_sim singular embeddings") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    const Digraph cycle = Digraph::from_adjacency(w);

    SUBCASE("identity adjacency with tau=0") {
        const Digraph self = Digraph::from_adjacency(Eigen::MatrixXd::Identity(3, 3));
        CHECK_NOTHROW(di_sim(self, 2, DiSimSide::Left, 0.0, 3));
    }

    SUBCASE("tau=0 with a missing in-degree is degenerate") {
        Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(2, 2);
        chain(0, 1) = 1;  // vertex 0 has no in-edges, vertex 1 no out-edges
        CHECK_THROWS_AS(di_sim(Digraph::from_adjacency(chain), 2, DiSimSide::Left, 0.0, 3),
                        DegenerateMeasure);
        CHECK_NOTHROW(di_sim(Digraph::from_adjacency(chain), 2, DiSimSide::Left, 1.0, 3));
    }

    SUBCASE("tau validation") {
        CHECK_THROWS_AS(di_sim(cycle, 2, DiSimSide::Right, -1.0, 3), InvalidParameter);
    }

    SUBCASE("both sides separate the triangles") {
        const Digraph g = two_triangles();
        const std::vector<int> truth = gsc_test::component_labels(g);
        CHECK(ari(di_sim(g, 2, DiSimSide::Left, 1.0, 3).labels, truth) == 1.0);
        CHECK(ari(di_sim(g, 2, DiSimSide::Right, 1.0, 3).labels, truth) == 1.0);
    }
}

TEST_CASE("method name round trip") {
    for (const char* name :
         {"gsc1", "gsc2", "gsc3", "sc-sym1", "sc-sym2", "dsc-plus", "di-sim-l", "di-sim-r"}) {
        CHECK(method_name(method_from_string(name)) == name);
    }
    CHECK_THROWS_AS(method_from_string("spectral"), InvalidParameter);
}

TEST_CASE("grid_search selects and breaks ties deterministically") {
    const Digraph g = two_cliques();
    const std::vector<int> truth = gsc_test::component_labels(g);

    SUBCASE("single grid point matches a direct run") {
        Grids grids;
        grids.alphas = {0.5};
        grids.t_max = 0;
        const SearchResult sr = grid_search(g, 2, Method::Gsc1, grids,
                                            Selection::supervised("nmi", truth), 9, 1, 3);
        const GridResult direct = gsc_run(g, 2, GscVariant::Gsc1, 0.5, 1.0, 0, derive_seed(9, 0), 3);
        CHECK(sr.best.labels == direct.entries[0].partition.labels);
        CHECK(sr.grid.entries.size() == 1);
        CHECK(sr.grid.entries[0].scores.at("nmi") == 1.0);
    }

    SUBCASE("ties prefer smaller t then smaller alpha") {
        Grids grids;
        grids.alphas = {0.4, 0.0};
        grids.t_max = 2;
        const SearchResult sr = grid_search(g, 2, Method::Gsc1, grids,
                                            Selection::supervised("nmi", truth), 9, 1, 3);
        // everything scores 1 on this easy graph; the winner must be the
        // smallest (t, alpha) combination
        CHECK(sr.best.provenance.t == 0);
        CHECK(sr.best.provenance.alpha == 0.0);
    }

    SUBCASE("worker count does not change the outcome") {
        Grids grids;
        grids.alphas = {0.0, 0.3, 0.9};
        grids.t_max = 2;
        const SearchResult serial = grid_search(g, 2, Method::Gsc1, grids,
                                                Selection::supervised("nmi", truth), 5, 1, 3);
        const SearchResult parallel = grid_search(g, 2, Method::Gsc1, grids,
                                                  Selection::supervised("nmi", truth), 5, 4, 3);
        REQUIRE(serial.grid.entries.size() == parallel.grid.entries.size());
        CHECK(serial.best_index == parallel.best_index);
        for (std::size_t i = 0; i < serial.grid.entries.size(); ++i) {
            CHECK(serial.grid.entries[i].partition.labels ==
                  parallel.grid.entries[i].partition.labels);
            CHECK(serial.grid.entries[i].scores == parallel.grid.entries[i].scores);
        }
    }

    SUBCASE("unsupervised CH selection") {
        Eigen::MatrixXd features(4, 1);
        features << 0, 1, 10, 11;
        Grids grids;
        grids.alphas = {0.0};
        const SearchResult sr = grid_search(g, 2, Method::Gsc1, grids,
                                            Selection::unsupervised_ch(features), 5, 1, 3);
        CHECK(sr.grid.entries[0].scores.count("ch") == 1);
        CHECK(ari(sr.best.labels, truth) == 1.0);
    }

    SUBCASE("validation") {
        Grids grids;
        CHECK_THROWS_AS(grid_search(g, 2, Method::Gsc2, grids,
                                    Selection::supervised("nmi", truth), 5, 1, 3),
                        InvalidParameter);  // missing gamma grid
        CHECK_THROWS_AS(grid_search(g, 2, Method::Gsc1, grids,
                                    Selection::supervised("nmi", {0, 1}), 5, 1, 3),
                        ShapeMismatch);
        CHECK_THROWS_AS(Selection::supervised("ch", truth), InvalidParameter);
    }
}

TEST_CASE("grid search over baseline methods") {
    const Digraph g = two_triangles();
    const std::vector<int> truth = gsc_test::component_labels(g);

    Grids grids;
    grids.gammas = {0.5, 0.8};
    grids.taus = {1.0, 2.0};
    for (Method m : {Method::ScSym1, Method::ScSym2, Method::DscPlus, Method::DiSimLeft,
                     Method::DiSimRight}) {
        const SearchResult sr =
            grid_search(g, 2, m, grids, Selection::supervised("ari", truth), 5, 1, 3);
        CHECK(ari(sr.best.labels, truth) == 1.0);
    }
}

TEST_CASE("grid result serialization") {
    const Digraph g = two_cliques();
    const std::vector<int> truth = gsc_test::component_labels(g);
    Grids grids;
    grids.alphas = {0.0};
    grids.t_max = 1;
    const SearchResult sr =
        grid_search(g, 2, Method::Gsc1, grids, Selection::supervised("nmi", truth), 5, 1, 3);
    const nlohmann::json j = to_json(sr.grid);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0].contains("params"));
    CHECK(j[0].contains("labels"));
    CHECK(j[0].contains("scores"));
    CHECK(j[0]["params"]["method"] == "gsc1");
    CHECK(j[0]["params"]["t"] == 0);

    std::ostringstream os;
    write_labels_csv(sr.best, os);
    const std::string csv = os.str();
    CHECK(csv.substr(0, 6) == "label\n");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("component recovery across random clique unions") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_below(4));
        const auto [g, truth] = gsc_test::random_clique_union(rng, k);
        const std::uint64_t seed = rng.next_u64();
        const GridResult gsc = gsc_run(g, k, GscVariant::Gsc1, 0.0, 1.0, 0, seed, 5);
        CHECK(ari(gsc.entries[0].partition.labels, truth) == 1.0);
        CHECK(ari(sc_sym(g, k, SymVariant::Sym1, seed, 5).labels, truth) == 1.0);
        CHECK(ari(sc_sym(g, k, SymVariant::Sym2, seed, 5).labels, truth) == 1.0);
    }
}
