#pragma once

#include <cstddef>
#include <vector>

namespace gpeval {

/// Everything needed to invert (1 - B)^d (1 - B^s)^D applied to a series.
struct DiffState {
    std::size_t d = 0;
    std::size_t seasonal_d = 0;
    std::size_t period = 1;
    /// stages[i] is the input of the i-th differencing pass (regular passes first).
    std::vector<std::vector<double>> stages;

    /// Lag of the i-th pass.
    [[nodiscard]] std::size_t lag(std::size_t stage) const noexcept { return stage < d ? 1 : period; }
    [[nodiscard]] std::size_t original_size() const noexcept;
    [[nodiscard]] std::size_t differenced_size() const noexcept;
};

struct Differenced {
    std::vector<double> values;
    DiffState state;
};

/// Applies d regular then D seasonal (lag s) differences. Throws SeriesTooShort
/// unless values.size() > d + s * D.
[[nodiscard]] Differenced difference(const std::vector<double>& values, std::size_t d,
                                     std::size_t seasonal_d, std::size_t period);

/// Integrates forecasts of the differenced series that continue past its end.
[[nodiscard]] std::vector<double> undifference(const std::vector<double>& forecasts, const DiffState& state);

/// Rebuilds the original series from its differenced values. Throws
/// StateMismatch when the length does not fit the state.
[[nodiscard]] std::vector<double> integrate(const std::vector<double>& differenced, const DiffState& state);

}  // namespace gpeval
