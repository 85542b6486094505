#include "gpeval/arima.hpp"

#include "gpeval/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace gpeval {

std::vector<double> autocovariance(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (n == 0 || max_lag >= n) {
        throw SeriesTooShort("autocovariance at lag " + std::to_string(max_lag) + " needs more than " +
                             std::to_string(max_lag) + " values");
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        double sum = 0.0;
        for (std::size_t t = lag; t < n; ++t) {
            sum += (values[t] - mean) * (values[t - lag] - mean);
        }
        gamma[lag] = sum / static_cast<double>(n);
    }
    return gamma;
}

std::vector<double> yule_walker_from_autocovariance(std::span<const double> gamma, std::size_t p) {
    if (gamma.size() < p + 1) {
        throw SeriesTooShort("Yule-Walker of order " + std::to_string(p) + " needs " +
                             std::to_string(p + 1) + " autocovariances");
    }
    if (!(gamma[0] > 0.0) || !std::isfinite(gamma[0])) {
        throw SingularToeplitz("zero-variance series: the Toeplitz system is singular");
    }
    // Levinson-Durbin recursion.
    std::vector<double> phi(p, 0.0);
    std::vector<double> previous(p, 0.0);
    double error = gamma[0];
    for (std::size_t k = 0; k < p; ++k) {
        double acc = gamma[k + 1];
        for (std::size_t j = 0; j < k; ++j) {
            acc -= previous[j] * gamma[k - j];
        }
        const double reflection = acc / error;
        if (!std::isfinite(reflection) || std::abs(reflection) >= 1.0 - 1e-12) {
            throw SingularToeplitz("Toeplitz system is singular at order " + std::to_string(k + 1));
        }
        phi[k] = reflection;
        for (std::size_t j = 0; j < k; ++j) {
            phi[j] = previous[j] - reflection * previous[k - 1 - j];
        }
        error *= 1.0 - reflection * reflection;
        previous = phi;
    }
    return phi;
}

ArimaFit fit_ar_yule_walker(std::span<const double> values, std::size_t p) {
    if (values.size() <= 10 * p || values.size() < 2) {
        throw SeriesTooShort("AR(" + std::to_string(p) + ") needs more than " +
                             std::to_string(std::max<std::size_t>(10 * p, 1)) + " values, got " +
                             std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("series contains non-finite values");
    }
    const auto n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    const auto gamma = autocovariance(values, p);
    if (gamma[0] <= 1e-12 * mean * mean || gamma[0] <= 0.0) {
        throw SingularToeplitz("series is (numerically) constant");
    }

    ArimaFit fit;
    fit.order.p = p;
    fit.ar = yule_walker_from_autocovariance(gamma, p);
    double phi_sum = 0.0;
    double explained = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        phi_sum += fit.ar[i];
        explained += fit.ar[i] * gamma[i + 1];
    }
    fit.intercept = mean * (1.0 - phi_sum);
    fit.sigma2_resid = gamma[0] - explained;
    fit.css = fit.sigma2_resid * n;
    fit.tail_values.assign(values.end() - static_cast<std::ptrdiff_t>(p), values.end());
    fit.diff_state = difference(std::vector<double>(values.begin(), values.end()), 0, 0, 1).state;
    return fit;
}

}  // namespace gpeval
