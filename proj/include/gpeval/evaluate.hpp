#pragma once

#include "gpeval/arima.hpp"
#include "gpeval/simulate.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gpeval {

/// The rolling forecaster fitted to each reconstruction prefix.
struct SecondaryModelSpec {
    enum class Kind { PureAr, SeasonalArima };
    /// How a pure AR model is estimated.
    enum class ArEstimator { LeastSquares, YuleWalker };

    Kind kind = Kind::PureAr;
    ArimaOrder order{.p = 2};
    ArEstimator estimator = ArEstimator::LeastSquares;
    /// When the model cannot be fitted, forecast the last prefix value instead.
    bool naive_fallback = true;

    static SecondaryModelSpec pure_ar(std::size_t p, ArEstimator estimator = ArEstimator::LeastSquares);
    static SecondaryModelSpec seasonal_arima(const ArimaOrder& order);

    /// Parses "ar:p" (conditional least squares), "yw:p" (Yule-Walker) or
    /// "sarima:p,d,q,P,D,Q,s". Throws ValidationError.
    static SecondaryModelSpec parse(const std::string& text);
    [[nodiscard]] std::string to_string() const;

    /// Throws ValidationError when the order does not suit the kind.
    void validate() const;
};

struct EvalOptions {
    std::size_t horizon = 1;
    double epsilon = 1e-8;
    /// Keep the sign of (y - y_ar) / y, as in the literal score formula.
    bool signed_errors = false;
};

struct PointForecast {
    std::size_t k = 0;            // 1-based observation number
    std::size_t grid_index = 0;
    double time = 0.0;
    double actual = 0.0;
    double predicted = 0.0;
    double ape = 0.0;             // |actual - predicted| / max(|actual|, eps), or signed
    bool fallback_used = false;
    bool epsilon_guard = false;
    std::string fallback_reason;
};

struct SkippedPoint {
    std::size_t k = 0;
    std::size_t grid_index = 0;
    std::string reason;
};

struct EvalReport {
    std::size_t horizon = 1;
    SecondaryModelSpec secondary;
    bool signed_errors = false;
    double epsilon = 1e-8;
    std::vector<PointForecast> per_point;
    std::vector<SkippedPoint> skipped;
    double mape_ar = 0.0;
};

/// Mean of |a - p| / max(|a|, epsilon). Throws LengthMismatch.
[[nodiscard]] double mape(std::span<const double> actual, std::span<const double> predicted, double epsilon = 1e-8);

/// Mean of (a - p) / a with the same epsilon guard on |a|.
[[nodiscard]] double signed_mape(std::span<const double> actual, std::span<const double> predicted,
                                 double epsilon = 1e-8);

/**
 * h-step forecast of the secondary model fitted to `prefix`. Returns
 * std::nullopt with the reason filled in when the model cannot be fitted.
 */
[[nodiscard]] std::optional<double> secondary_forecast(std::span<const double> prefix, const SecondaryModelSpec& spec,
                                                       std::size_t h, std::string* reason = nullptr);

/**
 * Rolling-origin goodness-of-fit score of a gridded reconstruction.
 *
 * For each observation k = 2..m at grid index j_k, the secondary model is
 * fitted to reconstruction values at indices 0..j_k - h, forecast h steps,
 * and the h-th forecast is compared with the observed y_k. Observations with
 * j_k < h have no prefix and are skipped. Throws NoEvaluablePoints when every
 * observation is skipped.
 */
[[nodiscard]] EvalReport mape_ar(const TimeSeries& reconstruction, const Observations& obs,
                                 const SecondaryModelSpec& spec, const EvalOptions& opts = {});

}  // namespace gpeval
