#pragma once

#include "gpeval/difference.hpp"
#include "gpeval/nelder_mead.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gpeval {

/// Seasonal ARIMA(p,d,q)(P,D,Q)_s order.
struct ArimaOrder {
    std::size_t p = 0;
    std::size_t d = 0;
    std::size_t q = 0;
    std::size_t P = 0;
    std::size_t D = 0;
    std::size_t Q = 0;
    std::size_t s = 1;

    [[nodiscard]] bool seasonal() const noexcept { return P + D + Q > 0; }
    [[nodiscard]] std::size_t coefficient_count() const noexcept { return p + q + P + Q; }
    /// Highest lag of the expanded AR polynomial phi(B) Phi(B^s).
    [[nodiscard]] std::size_t ar_lag() const noexcept { return p + s * P; }
    /// Highest lag of the expanded MA polynomial theta(B) Theta(B^s).
    [[nodiscard]] std::size_t ma_lag() const noexcept { return q + s * Q; }

    /// Throws DomainError when a seasonal component has s <= 1.
    void validate() const;
    [[nodiscard]] std::string to_string() const;
};

/**
 * Estimated secondary model. The differenced series w_t follows
 *
 *   w_t = intercept + sum_i a_i w_{t-i} + sum_j m_j e_{t-j} + e_t
 *
 * with a(B) = 1 - phi(B) Phi(B^s) and m(B) = theta(B) Theta(B^s) - 1.
 */
struct ArimaFit {
    ArimaOrder order;
    std::vector<double> ar;   // phi_1..phi_p
    std::vector<double> ma;   // theta_1..theta_q
    std::vector<double> sar;  // Phi_1..Phi_P
    std::vector<double> sma;  // Theta_1..Theta_Q
    double intercept = 0.0;
    double sigma2_resid = 0.0;
    double css = 0.0;

    /// Last ar_lag() differenced values and last ma_lag() residuals, oldest first.
    std::vector<double> tail_values;
    std::vector<double> tail_residuals;
    DiffState diff_state;
};

/// Coefficients of the expanded AR lag polynomial, a[i-1] multiplies w_{t-i}.
[[nodiscard]] std::vector<double> expanded_ar(const ArimaFit& fit);
/// Coefficients of the expanded MA lag polynomial, m[j-1] multiplies e_{t-j}.
[[nodiscard]] std::vector<double> expanded_ma(const ArimaFit& fit);

/// Smallest root modulus of 1 + sign * sum_i c_i z^i (infinity when constant).
[[nodiscard]] double min_root_modulus(std::span<const double> coeffs, double sign);

/// Biased (1/n) sample autocovariances at lags 0..max_lag of the mean-centred series.
[[nodiscard]] std::vector<double> autocovariance(std::span<const double> values, std::size_t max_lag);

/**
 * Solves the Yule-Walker equations for AR(p) from autocovariances
 * gamma_0..gamma_p with Levinson-Durbin. Throws SingularToeplitz when the
 * Toeplitz system is (numerically) singular.
 */
[[nodiscard]] std::vector<double> yule_walker_from_autocovariance(std::span<const double> gamma, std::size_t p);

/**
 * Pure AR(p) fit by Yule-Walker on the mean-centred series. Requires more than
 * 10 * p values (SeriesTooShort); near-constant input raises SingularToeplitz.
 */
[[nodiscard]] ArimaFit fit_ar_yule_walker(std::span<const double> values, std::size_t p);

struct CssOptions {
    NelderMeadOptions optimizer{.max_iters = 5000, .x_tol = 1e-7, .f_tol = 1e-10, .initial_step = 0.1};
    /// Extra Nelder-Mead passes restarted from the previous optimum.
    std::size_t restarts = 1;
    double root_margin = 1.001;
    double penalty_weight = 1e6;
};

/// Conditional sum of squares of one-step residuals for the given packed parameters
/// [phi, theta, Phi, Theta, intercept?] on an already differenced series.
[[nodiscard]] double css_objective(std::span<const double> differenced, const ArimaOrder& order,
                                   const Eigen::VectorXd& packed, bool with_intercept);

/**
 * Seasonal ARIMA estimated by conditional sum of squares. The series is
 * differenced per the order, residuals before lag p + s*P are zero, the MA
 * recursion starts from zero residuals, and a penalty pushes AR and MA roots
 * outside the unit circle. The intercept is estimated only when d + D = 0.
 */
[[nodiscard]] ArimaFit fit_arima_css(std::span<const double> values, const ArimaOrder& order,
                                     const CssOptions& opts = {});

/// h-step forecasts on the original scale (future shocks set to zero).
[[nodiscard]] std::vector<double> forecast(const ArimaFit& fit, std::size_t h);

}  // namespace gpeval
