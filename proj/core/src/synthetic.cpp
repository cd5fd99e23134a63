#include "pathchain/synthetic.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "pathchain/errors.hpp"

namespace pathchain::synthetic {

PointCloud gaussian_blobs(const Matrix& centers, int points_per_blob, double sigma, std::uint64_t seed) {
    if (centers.rows() < 1 || centers.cols() < 1) throw ParameterError("blobs: need at least one center");
    if (points_per_blob < 1) throw ParameterError("blobs: points_per_blob must be >= 1");
    if (!(sigma > 0.0)) throw ParameterError("blobs: sigma must be > 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);

    const Eigen::Index n = centers.rows() * points_per_blob;
    Matrix points(n, centers.cols());
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    Eigen::Index row = 0;
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        for (int i = 0; i < points_per_blob; ++i, ++row) {
            for (Eigen::Index j = 0; j < centers.cols(); ++j) points(row, j) = centers(c, j) + normal(rng);
            labels.push_back(std::to_string(c));
        }
    }
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return PointCloud(std::move(points), std::move(ids), std::move(labels));
}

namespace {

enum State : int { root = 0, mid, left, right, side, n_states };

constexpr std::array<const char*, n_states> kNames = {"root", "mid", "left", "right", "side"};
constexpr std::array<int, n_states> kParent = {root, root, mid, mid, root};

// Mean abundance of each state. Features are split into three blocks: the
// mid lineage uses the first, the side lineage the last; left and right split
// the first block between them.
Matrix state_means(int features) {
    const int block = features / 3;
    Matrix means(n_states, features);
    for (int j = 0; j < features; ++j) {
        const bool first = j < 2 * block;
        const bool low_half = j < block;
        means(root, j) = 1.0;
        means(mid, j) = first ? 2.0 : 0.2;
        means(left, j) = first && low_half ? 4.0 : 0.05;
        means(right, j) = first && !low_half ? 4.0 : 0.05;
        means(side, j) = first ? 0.05 : 3.0;
    }
    return means;
}

}  // namespace

PointCloud branching_profiles(const BranchingOptions& options) {
    if (options.n_points < n_states) throw ParameterError("branching: need at least one point per state");
    if (options.n_features < 3) throw ParameterError("branching: need at least 3 features");
    if (!(options.noise >= 0.0)) throw ParameterError("branching: noise must be >= 0");

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> progress(0.35, 1.0);
    const Matrix means = state_means(options.n_features);

    Matrix points(options.n_points, options.n_features);
    std::vector<std::string> labels;
    std::vector<std::string> ids;
    for (int i = 0; i < options.n_points; ++i) {
        const int state = i * n_states / options.n_points;
        const double t = state == root ? 0.0 : progress(rng);
        const Vector mean = (1.0 - t) * means.row(kParent[static_cast<std::size_t>(state)]).transpose() +
                            t * means.row(state).transpose();
        for (int j = 0; j < options.n_features; ++j)
            points(i, j) = mean(j) * std::exp(options.noise * normal(rng));
        labels.emplace_back(kNames[static_cast<std::size_t>(state)]);
        ids.push_back("cell" + std::to_string(i));
    }
    return PointCloud(std::move(points), std::move(ids), std::move(labels));
}

}  // namespace pathchain::synthetic
