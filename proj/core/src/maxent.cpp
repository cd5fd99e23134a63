#include "pathchain/maxent.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pathchain/errors.hpp"

namespace pathchain {

namespace {

void require_positive_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ParameterError("solver tolerance must be > 0");
}

void require_matching(const KernelMatrix& kernel, Eigen::Index n, const char* what) {
    if (kernel.size() != n) {
        std::ostringstream os;
        os << what << " has " << n << " entries, kernel is " << kernel.size() << "x" << kernel.size();
        throw InputError(os.str());
    }
}

}  // namespace

PerronPair perron(const KernelMatrix& kernel, double tol) {
    require_positive_tol(tol);
    const Matrix& delta = kernel.delta();
    const Eigen::Index n = kernel.size();
    const int cap = static_cast<int>(100 * n);

    Eigen::SelfAdjointEigenSolver<Matrix> dense(delta);
    if (dense.info() != Eigen::Success) throw NumericalError("perron: dense eigensolve failed");
    // One product with the positive kernel turns |v| into a strictly positive vector.
    Vector nu = delta * dense.eigenvectors().col(n - 1).cwiseAbs();
    nu.normalize();

    std::vector<double> history;
    double last_relative = 0.0;
    PerronPair out;
    for (int it = 0; it <= cap; ++it) {
        const Vector image = delta * nu;
        const double eta = nu.dot(image);
        const double relative = (image.array() / (eta * nu.array()) - 1.0).abs().maxCoeff();
        const double residual = (image - eta * nu).cwiseAbs().maxCoeff();
        if (!std::isfinite(relative) || !(eta > 0.0)) throw NumericalError("perron: non-finite iterate");
        history.push_back(residual);
        last_relative = relative;
        if (relative <= tol) {
            out.eta = eta;
            out.nu = nu;
            out.residual = residual;
            out.iterations = it;
            return out;
        }
        nu = image / image.norm();
    }
    std::ostringstream os;
    os << "perron: no convergence after " << cap << " power iterations (last residual " << history.back()
       << ", componentwise relative " << last_relative << "; the kernel may be nearly disconnected)";
    throw ConvergenceError(os.str(), std::move(history));
}

ScalingVector sinkhorn_scale(const KernelMatrix& kernel, const StationaryTarget& target, double tol, int max_iter) {
    require_positive_tol(tol);
    if (max_iter < 1) throw ParameterError("sinkhorn: max_iter must be >= 1");
    require_matching(kernel, target.size(), "stationary target");
    const Matrix& delta = kernel.delta();
    const Vector& p = target.p();

    ScalingVector out;
    Vector rho = (p.array() / delta.rowwise().sum().array()).sqrt().matrix();
    double previous_spread = std::numeric_limits<double>::infinity();

    for (int it = 0;; ++it) {
        const Vector image = delta * rho;
        const Vector marginal = rho.cwiseProduct(image);
        const Eigen::ArrayXd ratio = marginal.array() / p.array();
        const double relative = (ratio - 1.0).abs().maxCoeff();
        const double residual = (marginal - p).cwiseAbs().maxCoeff();
        if (!std::isfinite(relative)) throw NumericalError("sinkhorn: non-finite iterate");
        out.residual_trace.push_back(residual);

        if (relative <= tol) {
            out.rho = std::move(rho);
            out.residual = residual;
            out.iterations = it;
            return out;
        }
        if (it >= max_iter) {
            std::ostringstream os;
            os << "sinkhorn: no convergence after " << max_iter << " iterations (last residual " << residual << ")";
            throw ConvergenceError(os.str(), std::move(out.residual_trace));
        }

        const double spread = ratio.log().abs().maxCoeff();
        if (spread > previous_spread * (1.0 + 1e-9) + 1e-13) {
            std::ostringstream os;
            os << "sinkhorn: log-ratio spread increased at iteration " << it << " (" << previous_spread << " -> "
               << spread << ")";
            throw NumericalError(os.str());
        }
        previous_spread = spread;

        rho.array() /= ratio.sqrt();
        if (!rho.allFinite() || rho.minCoeff() <= 0.0) {
            std::ostringstream os;
            os << "sinkhorn: scaling vector left the positive orthant at iteration " << it;
            throw NumericalError(os.str());
        }
    }
}

MarkovChain pnmc_free(const KernelMatrix& kernel, double tol, SolverTelemetry* telemetry) {
    const PerronPair pair = perron(kernel, tol);
    const Vector& nu = pair.nu;
    Matrix q = (nu.cwiseInverse() / pair.eta).asDiagonal() * kernel.delta() * nu.asDiagonal();
    Vector p = nu.cwiseAbs2();
    p /= p.sum();
    if (telemetry) {
        telemetry->solver = "perron";
        telemetry->iterations = pair.iterations;
        telemetry->residual = pair.residual;
        telemetry->residual_trace = {pair.residual};
        telemetry->eta = pair.eta;
    }
    return MarkovChain(std::move(q), std::move(p), true, ChainProvenance::pnmc_free);
}

MarkovChain pnmc_prescribed(const KernelMatrix& kernel, const StationaryTarget& target, double tol, int max_iter,
                            SolverTelemetry* telemetry) {
    ScalingVector scaling = sinkhorn_scale(kernel, target, tol, max_iter);
    const Vector& rho = scaling.rho;
    const Vector& p = target.p();
    Matrix q = rho.cwiseQuotient(p).asDiagonal() * kernel.delta() * rho.asDiagonal();
    if (telemetry) {
        telemetry->solver = "sinkhorn";
        telemetry->iterations = scaling.iterations;
        telemetry->residual = scaling.residual;
        telemetry->residual_trace = std::move(scaling.residual_trace);
        telemetry->eta = 0.0;
    }
    return MarkovChain(std::move(q), p, true, ChainProvenance::pnmc_prescribed);
}

KernelMatrix prior_weighted_kernel(const KernelMatrix& kernel, const MarkovChain& prior) {
    const Eigen::Index n = kernel.size();
    require_matching(kernel, prior.size(), "prior chain");
    const Matrix& k = prior.q();
    if (k.minCoeff() < 0.0) throw InputError("prior chain: negative transition probability");

    Matrix weighted(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        bool any = false;
        for (Eigen::Index b = 0; b < n; ++b) {
            const double w = std::sqrt(k(a, b) * k(b, a));
            any = any || w > 0.0;
            weighted(a, b) = std::max(kernel.delta()(a, b) * w, kKernelFloor);
        }
        if (!any) {
            std::ostringstream os;
            os << "prior chain: row " << a << " has no reciprocated transition; updated kernel row is zero";
            throw DegenerateInputError(os.str());
        }
    }
    KernelMeta meta = kernel.meta();
    meta.family = KernelFamily::custom;
    return KernelMatrix(std::move(weighted), std::move(meta));
}

MarkovChain pnmc_update_free(const KernelMatrix& kernel, const MarkovChain& prior, double tol,
                             SolverTelemetry* telemetry) {
    const MarkovChain chain = pnmc_free(prior_weighted_kernel(kernel, prior), tol, telemetry);
    return MarkovChain(chain.q(), chain.p(), true, ChainProvenance::pnmc_update);
}

MarkovChain pnmc_update_prescribed(const KernelMatrix& kernel, const MarkovChain& prior,
                                   const StationaryTarget& target, double tol, int max_iter,
                                   SolverTelemetry* telemetry) {
    const MarkovChain chain = pnmc_prescribed(prior_weighted_kernel(kernel, prior), target, tol, max_iter, telemetry);
    return MarkovChain(chain.q(), chain.p(), true, ChainProvenance::pnmc_update);
}

}  // namespace pathchain
