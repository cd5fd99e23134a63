#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathchain/types.hpp"

namespace pathchain {

/// N points in R^n with opaque ids and optional categorical labels.
///
/// Construction validates: N >= 2, n >= 1, finite coordinates, unique ids.
/// Labels, when present, must have one entry per point; they are carried
/// through for reporting only.
class PointCloud {
public:
    PointCloud(Matrix points, std::vector<std::string> ids,
               std::optional<std::vector<std::string>> labels = std::nullopt);

    /// Ids default to "0", "1", ...
    explicit PointCloud(Matrix points);

    const Matrix& points() const noexcept { return points_; }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

    Eigen::Index size() const noexcept { return points_.rows(); }
    Eigen::Index dim() const noexcept { return points_.cols(); }

private:
    Matrix points_;
    std::vector<std::string> ids_;
    std::optional<std::vector<std::string>> labels_;
};

struct DistanceMatrix {
    Matrix d;

    Eigen::Index size() const noexcept { return d.rows(); }
};

enum class KernelFamily { gaussian, anisotropic, phate, custom };

const char* to_string(KernelFamily family) noexcept;

/// Provenance of a kernel. Only the fields meaningful for the family are set.
struct KernelMeta {
    KernelFamily family = KernelFamily::custom;
    std::optional<double> epsilon;      // gaussian bandwidth
    std::optional<Vector> epsilon_k;    // phate per-point k-NN radius
    std::optional<double> alpha;        // anisotropic exponent
    std::optional<double> beta;         // phate shape
    std::optional<int> k;               // phate neighbour rank
};

/// Symmetric, strictly positive affinity matrix.
///
/// `from_matrix` validates a user-supplied matrix (square, finite, symmetric
/// to 1e-12 relative, positive after clamping at kKernelFloor) so the solvers
/// can rely on the invariant.
class KernelMatrix {
public:
    KernelMatrix(Matrix delta, KernelMeta meta);

    static KernelMatrix from_matrix(Matrix delta);

    const Matrix& delta() const noexcept { return delta_; }
    const KernelMeta& meta() const noexcept { return meta_; }
    Eigen::Index size() const noexcept { return delta_.rows(); }

private:
    Matrix delta_;
    KernelMeta meta_;
};

DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// Nearest-rank percentile over the strict upper triangle:
/// sorted[ceil(pct/100 * M) - 1] with M = N(N-1)/2. pct must lie in (0, 100].
double bandwidth_percentile(const DistanceMatrix& d, double pct);

/// exp(-d^2 / (2 eps^2)), floored at kKernelFloor.
KernelMatrix gaussian_kernel(const DistanceMatrix& d, double epsilon);

/// Density-normalised kernel Delta(a,b) / (D(a)^alpha D(b)^alpha),
/// D(a) = sum_b Delta(a,b). alpha in [0, 1].
KernelMatrix anisotropic_kernel(const KernelMatrix& kernel, double alpha);

/// Adaptive-bandwidth kernel exp(-(d/eps_k(a))^beta) + exp(-(d/eps_k(b))^beta)
/// where eps_k(a) is the distance from a to its k-th nearest neighbour (self
/// excluded, ties broken by index). Diagonal is exactly 2.
KernelMatrix phate_kernel(const DistanceMatrix& d, int k, double beta);

}  // namespace pathchain
