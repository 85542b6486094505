#pragma once

#include <Eigen/Dense>

namespace gpeval {

/// Diagonal jitter escalation: start, start*factor, ... up to max.
struct JitterPolicy {
    double start = 1e-10;
    double factor = 10.0;
    double max = 1e-4;
    double symmetry_tol = 1e-10;
};

struct CholeskyResult {
    Eigen::MatrixXd lower;
    double jitter = 0.0;
};

/**
 * Lower Cholesky factor of a symmetric positive (semi)definite matrix.
 *
 * A plain factorization is attempted first. If it fails, jitter * I is added
 * with jitter escalating geometrically from policy.start to policy.max.
 * Throws AsymmetryError when |A - A^T| exceeds policy.symmetry_tol (scaled by
 * max(1, max|A|)), CholeskyFailure when even the maximum jitter fails.
 */
[[nodiscard]] CholeskyResult cholesky_psd(const Eigen::MatrixXd& matrix,
                                          const JitterPolicy& policy = {});

}  // namespace gpeval
