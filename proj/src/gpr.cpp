#include "gpeval/gpr.hpp"

#include "gpeval/errors.hpp"
#include "gpeval/random.hpp"

#include <cmath>

namespace gpeval {

Eigen::VectorXd Prediction::variance() const {
    return cov.diagonal().cwiseMax(0.0);
}

GPPosterior GPPosterior::fit(const Observations& obs, const KernelParams& params, double noise2,
                             const JitterPolicy& jitter) {
    return fit(obs.times, obs.values, params, noise2, jitter);
}

GPPosterior GPPosterior::fit(std::span<const double> times, std::span<const double> values,
                             const KernelParams& params, double noise2, const JitterPolicy& jitter) {
    validate_params(params);
    if (params.dim() != 1) {
        throw DimensionMismatch("time-series regression needs a one-dimensional kernel");
    }
    if (times.empty()) {
        throw EmptyObservations("cannot fit a GP to zero observations");
    }
    if (times.size() != values.size()) {
        throw DimensionMismatch("times and values differ in length");
    }
    if (!(noise2 >= 0.0) || !std::isfinite(noise2)) {
        throw DomainError("noise2 must be finite and >= 0");
    }

    GPPosterior model;
    model.params_ = params;
    model.noise2_ = noise2;
    model.train_times_.assign(times.begin(), times.end());
    model.train_values_ = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    if (!model.train_values_.allFinite()) {
        throw DomainError("training values must be finite");
    }

    Eigen::MatrixXd gram = kernel_matrix(params, times, times);
    gram.diagonal().array() += noise2;
    auto factor = cholesky_psd(gram, jitter);
    model.chol_ = std::move(factor.lower);
    model.jitter_ = factor.jitter;

    const Eigen::VectorXd half = model.chol_.triangularView<Eigen::Lower>().solve(model.train_values_);
    model.weights_ = model.chol_.transpose().triangularView<Eigen::Upper>().solve(half);
    return model;
}

GPPosterior GPPosterior::prior(const KernelParams& params) {
    validate_params(params);
    if (params.dim() != 1) {
        throw DimensionMismatch("time-series regression needs a one-dimensional kernel");
    }
    GPPosterior model;
    model.params_ = params;
    model.chol_.resize(0, 0);
    model.weights_.resize(0);
    model.train_values_.resize(0);
    return model;
}

Eigen::VectorXd GPPosterior::predict_mean(std::span<const double> times) const {
    if (train_times_.empty()) {
        return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(times.size()));
    }
    const Eigen::MatrixXd cross = kernel_matrix(params_, times, train_times_);
    Eigen::VectorXd mean = cross * weights_;
    if (!mean.allFinite()) {
        throw DomainError("posterior mean is not finite");
    }
    return mean;
}

Eigen::MatrixXd GPPosterior::predict_cov(std::span<const double> times) const {
    Eigen::MatrixXd cov = kernel_matrix(params_, times, times);
    if (train_times_.empty()) {
        return cov;
    }
    // V = L^{-1} K_xq, so K_qx (LL^T)^{-1} K_xq = V^T V.
    const Eigen::MatrixXd cross = kernel_matrix(params_, train_times_, times);
    const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(cross);
    cov.noalias() -= v.transpose() * v;
    // Restore exact symmetry lost to roundoff.
    cov = 0.5 * (cov + cov.transpose()).eval();
    return cov;
}

Prediction GPPosterior::predict(std::span<const double> times) const {
    return Prediction{predict_mean(times), predict_cov(times)};
}

Eigen::MatrixXd GPPosterior::sample_posterior(std::span<const double> times, std::size_t count,
                                              std::uint64_t seed, const JitterPolicy& jitter) const {
    if (count < 1) {
        throw DomainError("count must be >= 1");
    }
    const Eigen::VectorXd mean = predict_mean(times);
    const auto factor = cholesky_psd(predict_cov(times), jitter);
    const auto n = static_cast<Eigen::Index>(times.size());

    Rng rng(seed);
    Eigen::MatrixXd paths(n, static_cast<Eigen::Index>(count));
    for (Eigen::Index c = 0; c < paths.cols(); ++c) {
        paths.col(c) = mean + factor.lower.triangularView<Eigen::Lower>() * standard_normal(rng, n);
    }
    return paths;
}

}  // namespace gpeval
