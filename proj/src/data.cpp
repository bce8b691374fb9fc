#include "gsc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "gsc/errors.hpp"
#include "gsc/parallel.hpp"
#include "gsc/rng.hpp"

namespace gsc {

int default_knn_count(int n) {
    return static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
}

Digraph knn_digraph(const PointCloud& pc, std::optional<int> k_neighbors) {
    const int n = pc.n();
    if (n < 2) throw InvalidParameter("knn graph needs at least two points");
    int k = k_neighbors.value_or(default_knn_count(n));
    if (k < 1) throw InvalidParameter("neighbor count must be positive");
    if (k > n - 1) k = n - 1;

    const Eigen::MatrixXd& x = pc.points;
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(n));
    const int workers = std::max(1u, std::thread::hardware_concurrency());
    parallel_for(n, std::min(workers, 8), [&](int i) {
        Eigen::VectorXd d2(n);
        for (int j = 0; j < n; ++j) d2[j] = (x.row(i) - x.row(j)).squaredNorm();
        // K-th nearest among the OTHER points
        std::vector<double> others;
        others.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) others.push_back(d2[j]);
        std::nth_element(others.begin(), others.begin() + (k - 1), others.end());
        const double radius2 = others[static_cast<std::size_t>(k - 1)];
        auto& row = neighbors[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (d2[j] <= radius2) row.push_back(j);  // includes self and ties
        }
    });

    std::vector<std::tuple<int, int, double>> triplets;
    for (int i = 0; i < n; ++i)
        for (int j : neighbors[static_cast<std::size_t>(i)]) triplets.emplace_back(i, j, 1.0);
    return Digraph::from_triplets(n, triplets);
}

PointCloud toy_unbalanced(int n1, int n2, std::uint64_t seed) {
    if (n1 < 1 || n2 < 1) throw InvalidParameter("toy clusters need at least one point each");
    Rng rng(seed);
    PointCloud pc;
    pc.points.resize(n1 + n2, 2);
    std::vector<int> labels(static_cast<std::size_t>(n1 + n2));
    for (int i = 0; i < n1 + n2; ++i) {
        const double center = i < n1 ? -2.0 : 2.0;
        pc.points(i, 0) = center + rng.next_gaussian();
        pc.points(i, 1) = center + rng.next_gaussian();
        labels[static_cast<std::size_t>(i)] = i < n1 ? 0 : 1;
    }
    pc.labels = std::move(labels);
    return pc;
}

namespace {

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
    if (begin == end) return false;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

PointCloud load_csv(const std::string& path, std::optional<int> label_column) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trimmed(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw ParseError(path + ": empty file");

    const auto first = split_csv_line(lines[0]);
    const int ncols = static_cast<int>(first.size());
    if (label_column && (*label_column < 0 || *label_column >= ncols)) {
        throw InvalidParameter("label column " + std::to_string(*label_column) +
                               " out of range for " + std::to_string(ncols) + " columns");
    }
    const int nfeatures = ncols - (label_column ? 1 : 0);
    if (nfeatures < 1) throw ParseError(path + ": no feature columns");

    // header: first row whose feature fields are not all numeric
    bool has_header = false;
    for (int c = 0; c < ncols; ++c) {
        if (label_column && c == *label_column) continue;
        double ignored;
        if (!parse_double(first[static_cast<std::size_t>(c)], ignored)) {
            has_header = true;
            break;
        }
    }
    const std::size_t start = has_header ? 1 : 0;
    if (start >= lines.size()) throw ParseError(path + ": no data rows");

    const std::size_t nrows = lines.size() - start;
    Eigen::MatrixXd features(nrows, nfeatures);
    std::vector<std::string> raw_labels;
    raw_labels.reserve(label_column ? nrows : 0);
    for (std::size_t r = 0; r < nrows; ++r) {
        const auto fields = split_csv_line(lines[start + r]);
        if (static_cast<int>(fields.size()) != ncols) {
            throw ParseError(path + ": row " + std::to_string(start + r + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(ncols));
        }
        int f = 0;
        for (int c = 0; c < ncols; ++c) {
            if (label_column && c == *label_column) {
                raw_labels.push_back(trimmed(fields[static_cast<std::size_t>(c)]));
                continue;
            }
            double value;
            if (!parse_double(fields[static_cast<std::size_t>(c)], value) || !std::isfinite(value)) {
                throw ParseError(path + ": row " + std::to_string(start + r + 1) + " col " +
                                 std::to_string(c + 1) + ": not a number '" +
                                 fields[static_cast<std::size_t>(c)] + "'");
            }
            features(static_cast<Eigen::Index>(r), f++) = value;
        }
    }

    PointCloud pc;
    pc.points = std::move(features);
    if (label_column) {
        std::vector<std::string> seen;
        std::vector<int> labels(nrows);
        for (std::size_t i = 0; i < nrows; ++i) {
            const auto it = std::find(seen.begin(), seen.end(), raw_labels[i]);
            if (it == seen.end()) {
                labels[i] = static_cast<int>(seen.size());
                seen.push_back(raw_labels[i]);
            } else {
                labels[i] = static_cast<int>(it - seen.begin());
            }
        }
        pc.labels = std::move(labels);
    }
    return pc;
}

PointCloud standardize(const PointCloud& pc) {
    const int n = pc.n();
    const int d = pc.dim();
    if (n < 1) throw InvalidParameter("standardize needs at least one point");
    std::vector<int> kept;
    std::vector<double> means;
    std::vector<double> sds;
    for (int c = 0; c < d; ++c) {
        const double mean = pc.points.col(c).mean();
        const double var = (pc.points.col(c).array() - mean).square().sum() / n;
        const double sd = std::sqrt(var);
        if (sd > 1e-12 * std::max(1.0, std::abs(mean))) {
            kept.push_back(c);
            means.push_back(mean);
            sds.push_back(sd);
        }
    }
    if (kept.empty()) throw InvalidParameter("standardize: all columns are constant");
    PointCloud out;
    out.points.resize(n, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        out.points.col(static_cast<Eigen::Index>(c)) =
            (pc.points.col(kept[c]).array() - means[c]) / sds[c];
    }
    out.labels = pc.labels;
    return out;
}

void write_points_csv(const PointCloud& pc, std::ostream& os) {
    const int d = pc.dim();
    if (d == 2) {
        os << "x,y";
    } else {
        for (int c = 0; c < d; ++c) os << (c ? "," : "") << "f" << c;
    }
    if (pc.labels) os << ",label";
    os << "\n";
    char buf[64];
    for (int i = 0; i < pc.n(); ++i) {
        for (int c = 0; c < d; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", pc.points(i, c));
            os << (c ? "," : "") << buf;
        }
        if (pc.labels) os << "," << (*pc.labels)[static_cast<std::size_t>(i)];
        os << "\n";
    }
}

}  // namespace gsc
