#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace gpeval {

struct NelderMeadOptions {
    std::size_t max_iters = 10000;
    /// Converged once the largest vertex distance from the best vertex is below
    /// x_tol and |f_worst - f_best| is below f_tol.
    double x_tol = 1e-8;
    double f_tol = 1e-12;
    /// Initial simplex edge along each axis; scaled by |x_i| when x_i != 0.
    double initial_step = 0.1;
};

struct NelderMeadResult {
    Eigen::VectorXd argmin;
    double minimum = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/**
 * Derivative-free simplex minimization with the standard coefficients
 * (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
 *
 * Non-finite objective values after the start are treated as +inf. Throws
 * NonFiniteObjective when the start itself is not finite. The returned point
 * is never worse than the start.
 */
[[nodiscard]] NelderMeadResult nelder_mead(const Objective& objective, const Eigen::VectorXd& start,
                                           const NelderMeadOptions& opts = {});

}  // namespace gpeval
