#include "gpeval/linalg.hpp"

#include "gpeval/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace gpeval {

namespace {

std::optional<Eigen::MatrixXd> try_factor(const Eigen::MatrixXd& matrix) {
    Eigen::LLT<Eigen::MatrixXd> llt(matrix);
    if (llt.info() != Eigen::Success) {
        return std::nullopt;
    }
    Eigen::MatrixXd lower = llt.matrixL();
    const auto diag = lower.diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (!(diag[i] > 0.0) || !std::isfinite(diag[i])) {
            return std::nullopt;
        }
    }
    return lower;
}

}  // namespace

CholeskyResult cholesky_psd(const Eigen::MatrixXd& matrix, const JitterPolicy& policy) {
    if (matrix.rows() != matrix.cols()) {
        throw DimensionMismatch("cholesky_psd needs a square matrix");
    }
    if (matrix.size() == 0) {
        return {Eigen::MatrixXd(0, 0), 0.0};
    }
    if (!matrix.allFinite()) {
        throw CholeskyFailure("matrix has non-finite entries");
    }
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > policy.symmetry_tol * scale) {
        throw AsymmetryError("matrix is not symmetric (max |A - A^T| = " + std::to_string(asym) + ")");
    }

    if (auto lower = try_factor(matrix)) {
        return {std::move(*lower), 0.0};
    }
    for (double jitter = policy.start; jitter <= policy.max * (1.0 + 1e-12); jitter *= policy.factor) {
        Eigen::MatrixXd shifted = matrix;
        shifted.diagonal().array() += jitter;
        if (auto lower = try_factor(shifted)) {
            return {std::move(*lower), jitter};
        }
    }
    throw CholeskyFailure("Cholesky factorization failed with jitter up to " + std::to_string(policy.max));
}

}  // namespace gpeval
