#include "pathchain/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "pathchain/errors.hpp"

namespace pathchain {

namespace {

std::vector<std::string> default_ids(Eigen::Index n) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return ids;
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 2) {
        std::ostringstream os;
        os << what << ": expected a square matrix with N >= 2, got " << m.rows() << "x" << m.cols();
        throw InputError(os.str());
    }
}

}  // namespace

PointCloud::PointCloud(Matrix points, std::vector<std::string> ids,
                       std::optional<std::vector<std::string>> labels)
    : points_(std::move(points)), ids_(std::move(ids)), labels_(std::move(labels)) {
    if (points_.rows() < 2) throw InputError("point cloud needs at least 2 points");
    if (points_.cols() < 1) throw InputError("point cloud needs at least 1 coordinate");
    if (static_cast<Eigen::Index>(ids_.size()) != points_.rows())
        throw InputError("point cloud: id count does not match point count");
    if (labels_ && static_cast<Eigen::Index>(labels_->size()) != points_.rows())
        throw InputError("point cloud: label count does not match point count");
    for (Eigen::Index i = 0; i < points_.rows(); ++i) {
        for (Eigen::Index j = 0; j < points_.cols(); ++j) {
            if (!std::isfinite(points_(i, j))) {
                std::ostringstream os;
                os << "point cloud: non-finite coordinate at point '" << ids_[static_cast<std::size_t>(i)]
                   << "', column " << j;
                throw InputError(os.str());
            }
        }
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_) {
        if (!seen.insert(id).second) throw InputError("point cloud: duplicate id '" + id + "'");
    }
}

PointCloud::PointCloud(Matrix points) : PointCloud(points, default_ids(points.rows())) {}

const char* to_string(KernelFamily family) noexcept {
    switch (family) {
        case KernelFamily::gaussian: return "gaussian";
        case KernelFamily::anisotropic: return "anisotropic";
        case KernelFamily::phate: return "phate";
        case KernelFamily::custom: return "custom";
    }
    return "custom";
}

KernelMatrix::KernelMatrix(Matrix delta, KernelMeta meta) : delta_(std::move(delta)), meta_(std::move(meta)) {
    require_square(delta_, "kernel");
}

KernelMatrix KernelMatrix::from_matrix(Matrix delta) {
    require_square(delta, "kernel");
    const Eigen::Index n = delta.rows();
    double scale = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            const double v = delta(a, b);
            if (!std::isfinite(v)) throw InputError("kernel: non-finite entry");
            if (v < 0.0) throw InputError("kernel: negative entry");
            scale = std::max(scale, v);
        }
    }
    if (scale == 0.0) throw DegenerateInputError("kernel: all entries are zero");
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            if (std::abs(delta(a, b) - delta(b, a)) > 1e-12 * scale) {
                std::ostringstream os;
                os << "kernel: not symmetric at (" << a << ", " << b << ")";
                throw InputError(os.str());
            }
            const double v = std::max(0.5 * (delta(a, b) + delta(b, a)), kKernelFloor);
            delta(a, b) = v;
            delta(b, a) = v;
        }
        delta(a, a) = std::max(delta(a, a), kKernelFloor);
    }
    return KernelMatrix(std::move(delta), KernelMeta{});
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    const Matrix& x = cloud.points();
    const Eigen::Index n = x.rows();
    // Row-major copy so each point is contiguous in the inner loop.
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> xr = x;
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double dist = (xr.row(a) - xr.row(b)).norm();
            d(a, b) = dist;
            d(b, a) = dist;
        }
    }
    return DistanceMatrix{std::move(d)};
}

double bandwidth_percentile(const DistanceMatrix& d, double pct) {
    require_square(d.d, "distance matrix");
    if (!(pct > 0.0 && pct <= 100.0)) throw ParameterError("percentile must lie in (0, 100]");
    const Eigen::Index n = d.size();
    std::vector<double> pairs;
    pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) pairs.push_back(d.d(a, b));

    const auto m = pairs.size();
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(m)));
    rank = std::clamp<std::size_t>(rank, 1, m);
    std::nth_element(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(rank - 1), pairs.end());
    const double eps = pairs[rank - 1];
    if (eps <= 0.0) {
        const bool all_zero = std::all_of(pairs.begin(), pairs.end(), [](double v) { return v == 0.0; });
        throw DegenerateInputError(all_zero ? "bandwidth: all pairwise distances are zero"
                                            : "bandwidth: selected percentile is a zero distance "
                                              "(duplicate points dominate)");
    }
    return eps;
}

KernelMatrix gaussian_kernel(const DistanceMatrix& d, double epsilon) {
    require_square(d.d, "distance matrix");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ParameterError("gaussian kernel: epsilon must be > 0");
    const double inv = 1.0 / (2.0 * epsilon * epsilon);
    Matrix delta = d.d.unaryExpr([inv](double x) { return std::max(std::exp(-x * x * inv), kKernelFloor); });
    KernelMeta meta;
    meta.family = KernelFamily::gaussian;
    meta.epsilon = epsilon;
    return KernelMatrix(std::move(delta), std::move(meta));
}

KernelMatrix anisotropic_kernel(const KernelMatrix& kernel, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("anisotropic kernel: alpha must lie in [0, 1]");
    const Matrix& delta = kernel.delta();
    const Vector density = delta.rowwise().sum();
    const Vector weight = density.array().pow(-alpha).matrix();
    Matrix out = (weight.asDiagonal() * delta * weight.asDiagonal()).eval();
    out = out.cwiseMax(kKernelFloor);
    KernelMeta meta = kernel.meta();
    if (meta.family == KernelFamily::gaussian) meta.family = KernelFamily::anisotropic;
    meta.alpha = alpha;
    return KernelMatrix(std::move(out), std::move(meta));
}

KernelMatrix phate_kernel(const DistanceMatrix& d, int k, double beta) {
    require_square(d.d, "distance matrix");
    const Eigen::Index n = d.size();
    if (k < 1 || k > n - 1) throw ParameterError("phate kernel: k must lie in [1, N-1]");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("phate kernel: beta must be > 0");

    Vector radius(n);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n - 1));
    for (Eigen::Index a = 0; a < n; ++a) {
        std::size_t slot = 0;
        for (Eigen::Index b = 0; b < n; ++b)
            if (b != a) order[slot++] = b;
        const auto kth = order.begin() + (k - 1);
        std::nth_element(order.begin(), kth, order.end(), [&](Eigen::Index u, Eigen::Index v) {
            const double du = d.d(a, u);
            const double dv = d.d(a, v);
            return du < dv || (du == dv && u < v);
        });
        radius(a) = d.d(a, *kth);
        if (radius(a) <= 0.0) {
            std::ostringstream os;
            os << "phate kernel: point " << a << " has a zero distance to its " << k
               << "-th nearest neighbour (duplicate points)";
            throw DegenerateInputError(os.str());
        }
    }

    Matrix delta(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        delta(a, a) = 2.0;
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double dist = d.d(a, b);
            const double v = std::exp(-std::pow(dist / radius(a), beta)) + std::exp(-std::pow(dist / radius(b), beta));
            delta(a, b) = delta(b, a) = std::max(v, kKernelFloor);
        }
    }
    KernelMeta meta;
    meta.family = KernelFamily::phate;
    meta.epsilon_k = std::move(radius);
    meta.beta = beta;
    meta.k = k;
    return KernelMatrix(std::move(delta), std::move(meta));
}

}  // namespace pathchain
