#include "pathchain/chains.hpp"

#include <cmath>
#include <sstream>

#include "pathchain/errors.hpp"

namespace pathchain {

const char* to_string(ChainProvenance provenance) noexcept {
    switch (provenance) {
        case ChainProvenance::rnmc: return "rnmc";
        case ChainProvenance::pnmc_free: return "pnmc_free";
        case ChainProvenance::pnmc_prescribed: return "pnmc_prescribed";
        case ChainProvenance::pnmc_update: return "pnmc_update";
        case ChainProvenance::external: return "external";
    }
    return "external";
}

MarkovChain::MarkovChain(Matrix q, Vector p, bool reversible, ChainProvenance provenance)
    : q_(std::move(q)), p_(std::move(p)), reversible_(reversible), provenance_(provenance) {
    if (q_.rows() != q_.cols() || q_.rows() < 1) throw InputError("markov chain: q must be square and non-empty");
    if (p_.size() != q_.rows()) {
        std::ostringstream os;
        os << "markov chain: stationary vector has " << p_.size() << " entries, q is " << q_.rows() << "x"
           << q_.cols();
        throw InputError(os.str());
    }
    if (!q_.allFinite() || !p_.allFinite()) throw InputError("markov chain: non-finite entries");
}

ChainReport validate(const MarkovChain& chain, double tol) {
    const Matrix& q = chain.q();
    const Vector& p = chain.p();
    ChainReport r;
    r.tol = tol;

    const Vector rows = q.rowwise().sum();
    r.row_sum_deviation = (rows.array() - 1.0).abs().maxCoeff(&r.worst_row);
    r.min_entry = q.minCoeff();
    r.min_stationary = p.minCoeff();
    r.stationary_sum_deviation = std::abs(p.sum() - 1.0);

    const Vector flow = q.transpose() * p;
    r.stationarity_residual = (flow - p).cwiseAbs().maxCoeff(&r.worst_column);

    const Vector cols = q.colwise().sum().transpose();
    r.column_sum_deviation = (cols.array() - 1.0).abs().maxCoeff();
    r.symmetry_residual = (q - q.transpose()).cwiseAbs().maxCoeff();

    const Matrix measure = p.asDiagonal() * q;
    r.detailed_balance_residual =
        (measure - measure.transpose()).cwiseAbs().maxCoeff(&r.worst_pair_a, &r.worst_pair_b);

    r.passed = r.row_sum_deviation <= tol && r.stationarity_residual <= tol && r.stationary_sum_deviation <= tol &&
               r.min_entry >= 0.0 && r.min_stationary > 0.0 &&
               (!chain.reversible() || r.detailed_balance_residual <= tol);
    return r;
}

MarkovChain rnmc(const KernelMatrix& kernel) {
    const Matrix& delta = kernel.delta();
    const Vector z = delta.rowwise().sum();
    Matrix q = z.cwiseInverse().asDiagonal() * delta;
    Vector p = z / z.sum();
    return MarkovChain(std::move(q), std::move(p), true, ChainProvenance::rnmc);
}

double path_average(const MarkovChain& chain, const Matrix& r) {
    if (r.rows() != chain.size() || r.cols() != chain.size()) {
        std::ostringstream os;
        os << "path average: observable is " << r.rows() << "x" << r.cols() << ", chain has " << chain.size()
           << " states";
        throw InputError(os.str());
    }
    return (chain.p().asDiagonal() * chain.q()).cwiseProduct(r).sum();
}

}  // namespace pathchain
