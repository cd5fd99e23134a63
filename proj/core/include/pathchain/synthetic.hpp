#pragma once

#include <cstdint>
#include <vector>

#include "pathchain/geometry.hpp"

namespace pathchain::synthetic {

/// Isotropic Gaussian blobs; labels are the blob index as a string.
PointCloud gaussian_blobs(const Matrix& centers, int points_per_blob, double sigma, std::uint64_t seed);

struct BranchingOptions {
    int n_points = 500;
    int n_features = 18;
    double noise = 0.25;     // log-normal noise scale on abundances
    std::uint64_t seed = 0;
};

/// Nonnegative abundance profiles of a five-state branching lineage
///
///     root -> mid -> {left, right}
///     root -> side
///
/// The root state expresses every feature at a similar level (high profile
/// entropy); each descendant concentrates mass on its own feature block, so
/// profile entropy drops along every branch. Cells are spread along each
/// branch by a pseudotime and labelled with the state they are closest to.
/// Labels: "root", "mid", "left", "right", "side".
PointCloud branching_profiles(const BranchingOptions& options);

}  // namespace pathchain::synthetic
