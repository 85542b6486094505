#pragma once

#include "gpeval/kernel.hpp"
#include "gpeval/linalg.hpp"
#include "gpeval/simulate.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace gpeval {

/// Posterior predictive moments at a set of query times.
struct Prediction {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    /// Diagonal of cov with roundoff negatives clamped to zero.
    [[nodiscard]] Eigen::VectorXd variance() const;
};

/**
 * Fitted zero-mean GP regression model on one-dimensional time inputs.
 *
 * Holds the lower Cholesky factor of K_xx + noise2 I (+ jitter) and the
 * weights solving that system against the training values. Immutable once
 * built; prediction and sampling are const and can be shared across threads.
 * A model with no training data predicts the prior.
 */
class GPPosterior {
public:
    /// Throws EmptyObservations when obs is empty; CholeskyFailure propagates.
    static GPPosterior fit(const Observations& obs, const KernelParams& params, double noise2,
                           const JitterPolicy& jitter = {});

    static GPPosterior fit(std::span<const double> times, std::span<const double> values,
                           const KernelParams& params, double noise2,
                           const JitterPolicy& jitter = {});

    static GPPosterior prior(const KernelParams& params);

    [[nodiscard]] Eigen::VectorXd predict_mean(std::span<const double> times) const;

    /// Full posterior covariance; may carry tiny negative diagonal roundoff.
    [[nodiscard]] Eigen::MatrixXd predict_cov(std::span<const double> times) const;

    [[nodiscard]] Prediction predict(std::span<const double> times) const;

    /**
     * Draws `count` posterior paths mean + chol(cov) z at the query times.
     * Returns a (times x count) matrix, one path per column.
     */
    [[nodiscard]] Eigen::MatrixXd sample_posterior(std::span<const double> times, std::size_t count,
                                                   std::uint64_t seed,
                                                   const JitterPolicy& jitter = {}) const;

    [[nodiscard]] const KernelParams& params() const noexcept { return params_; }
    [[nodiscard]] double noise2() const noexcept { return noise2_; }
    [[nodiscard]] double jitter() const noexcept { return jitter_; }
    [[nodiscard]] const std::vector<double>& train_times() const noexcept { return train_times_; }
    [[nodiscard]] const Eigen::VectorXd& train_values() const noexcept { return train_values_; }
    [[nodiscard]] const Eigen::MatrixXd& chol() const noexcept { return chol_; }
    [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return weights_; }

private:
    GPPosterior() = default;

    KernelParams params_;
    double noise2_ = 0.0;
    double jitter_ = 0.0;
    std::vector<double> train_times_;
    Eigen::VectorXd train_values_;
    Eigen::MatrixXd chol_;
    Eigen::VectorXd weights_;
};

}  // namespace gpeval
