#pragma once

#include <Eigen/Dense>

namespace pathchain {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Lower clamp applied to every kernel entry. Gaussian tails underflow to 0 in
// double precision; the Perron and Sinkhorn solvers need strict positivity.
inline constexpr double kKernelFloor = 1e-300;

}  // namespace pathchain
