#include "pathchain/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pathchain/errors.hpp"

namespace pathchain {

Embedding diffusion_map(const MarkovChain& chain, Eigen::Index m, double tol) {
    const Eigen::Index n = chain.size();
    if (m < 1 || m > n - 1) {
        std::ostringstream os;
        os << "diffusion map: requested " << m << " coordinates, need 1 <= m <= " << n - 1;
        throw ParameterError(os.str());
    }
    if (!(tol > 0.0)) throw ParameterError("diffusion map: tolerance must be > 0");
    const Vector& p = chain.p();
    if (p.minCoeff() <= 0.0) throw ContractError("diffusion map: stationary distribution must be strictly positive");

    const Vector root = p.cwiseSqrt();
    Matrix s = root.asDiagonal() * chain.q() * root.cwiseInverse().asDiagonal();

    Embedding out;
    out.symmetry_residual = (s - s.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if (out.symmetry_residual > std::max(tol, 1e-10) * scale) {
        std::ostringstream os;
        os << "diffusion map: chain is not reversible (|S - S^T|_inf = " << out.symmetry_residual << ")";
        throw ContractError(os.str());
    }
    s = (0.5 * (s + s.transpose())).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
    if (solver.info() != Eigen::Success) throw NumericalError("diffusion map: eigensolve failed");
    const Vector& values = solver.eigenvalues();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });

    const Eigen::Index kept = m + 1;
    out.eigenvalues.resize(kept);
    out.psi.resize(n, kept);
    out.residuals.resize(kept);
    out.coords.resize(n, m);
    for (Eigen::Index i = 0; i < kept; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        const double lambda = values(src);
        Vector v = solver.eigenvectors().col(src);
        Vector psi = v.cwiseQuotient(root);

        Eigen::Index pivot = 0;
        psi.cwiseAbs().maxCoeff(&pivot);
        if (psi(pivot) < 0.0) {
            psi = -psi;
            v = -v;
        }
        out.eigenvalues(i) = lambda;
        out.psi.col(i) = psi;
        out.residuals(i) = (s * v - lambda * v).cwiseAbs().maxCoeff();
        if (i > 0) out.coords.col(i - 1) = lambda * psi;
    }

    for (Eigen::Index i = 0; i < kept && i + 1 < n; ++i) {
        const double next = values(order[static_cast<std::size_t>(i + 1)]);
        if (std::abs(out.eigenvalues(i) - next) <= tol) {
            std::ostringstream os;
            os << "eigenvalues " << i << " and " << i + 1 << " are degenerate within " << tol << " ("
               << out.eigenvalues(i) << ", " << next << ")";
            out.warnings.push_back(os.str());
        }
    }
    return out;
}

}  // namespace pathchain
