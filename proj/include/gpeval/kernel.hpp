#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace gpeval {

/// A location in the d-dimensional input space.
using Point = Eigen::VectorXd;

/**
 * Hyperparameters of the powered-exponential kernel
 *
 *   k(a, b) = sigma2 * exp(-beta * sum_k (|a_k - b_k| / l_k)^alpha_k)
 *
 * alpha = 1 gives the Ornstein-Uhlenbeck (exponential) kernel and alpha = 2
 * the squared-exponential kernel. The family is positive semidefinite for
 * every alpha in (0, 2].
 */
struct KernelParams {
    double sigma2 = 1.0;
    double beta = 1.0;
    std::vector<double> lengthscales{1.0};
    std::vector<double> exponents{2.0};

    [[nodiscard]] std::size_t dim() const noexcept { return lengthscales.size(); }

    /// One-dimensional convenience constructor.
    static KernelParams univariate(double sigma2, double beta, double lengthscale, double exponent) {
        return KernelParams{sigma2, beta, {lengthscale}, {exponent}};
    }
};

/// Throws DomainError naming the first offending field; returns params otherwise.
const KernelParams& validate_params(const KernelParams& params);

/// Throws DimensionMismatch when a or b does not have params.dim() entries.
[[nodiscard]] double kernel_value(const KernelParams& params, const Point& a, const Point& b);

/// Scalar-time form for d = 1.
[[nodiscard]] double kernel_value(const KernelParams& params, double a, double b);

[[nodiscard]] Eigen::MatrixXd kernel_matrix(const KernelParams& params,
                                            std::span<const Point> rows,
                                            std::span<const Point> cols);

/// Kernel matrix between two sets of scalar times (d = 1).
[[nodiscard]] Eigen::MatrixXd kernel_matrix(const KernelParams& params,
                                            std::span<const double> rows,
                                            std::span<const double> cols);

}  // namespace gpeval
