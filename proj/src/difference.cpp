#include "gpeval/difference.hpp"

#include "gpeval/errors.hpp"

#include <string>

namespace gpeval {

std::size_t DiffState::original_size() const noexcept {
    return stages.empty() ? 0 : stages.front().size();
}

std::size_t DiffState::differenced_size() const noexcept {
    std::size_t size = original_size();
    for (std::size_t i = 0; i < stages.size(); ++i) {
        size -= lag(i);
    }
    return size;
}

Differenced difference(const std::vector<double>& values, std::size_t d, std::size_t seasonal_d,
                       std::size_t period) {
    if (seasonal_d > 0 && period < 1) {
        throw DomainError("seasonal period must be >= 1");
    }
    const std::size_t lost = d + (seasonal_d > 0 ? period * seasonal_d : 0);
    if (values.size() <= lost) {
        throw SeriesTooShort("differencing needs more than " + std::to_string(lost) + " values, got " +
                             std::to_string(values.size()));
    }

    Differenced out;
    out.state.d = d;
    out.state.seasonal_d = seasonal_d;
    out.state.period = period < 1 ? 1 : period;
    std::vector<double> current = values;
    for (std::size_t stage = 0; stage < d + seasonal_d; ++stage) {
        const std::size_t lag = out.state.lag(stage);
        std::vector<double> next(current.size() - lag);
        for (std::size_t t = lag; t < current.size(); ++t) {
            next[t - lag] = current[t] - current[t - lag];
        }
        out.state.stages.push_back(std::move(current));
        current = std::move(next);
    }
    if (out.state.stages.empty()) {
        out.state.stages.push_back(current);
    }
    out.values = std::move(current);
    return out;
}

std::vector<double> undifference(const std::vector<double>& forecasts, const DiffState& state) {
    if (state.stages.empty()) {
        throw StateMismatch("empty differencing state");
    }
    const std::size_t passes = state.d + state.seasonal_d;
    if (passes == 0) {
        return forecasts;
    }
    if (state.stages.size() != passes) {
        throw StateMismatch("differencing state does not match its orders");
    }
    std::vector<double> current = forecasts;
    for (std::size_t stage = passes; stage-- > 0;) {
        const auto& history = state.stages[stage];
        const std::size_t lag = state.lag(stage);
        if (history.size() < lag) {
            throw StateMismatch("differencing state history is too short");
        }
        std::vector<double> extended(history.end() - static_cast<std::ptrdiff_t>(lag), history.end());
        for (double f : current) {
            extended.push_back(f + extended[extended.size() - lag]);
        }
        current.assign(extended.begin() + static_cast<std::ptrdiff_t>(lag), extended.end());
    }
    return current;
}

std::vector<double> integrate(const std::vector<double>& differenced, const DiffState& state) {
    if (state.stages.empty()) {
        throw StateMismatch("empty differencing state");
    }
    const std::size_t passes = state.d + state.seasonal_d;
    if (passes == 0) {
        if (differenced.size() != state.original_size()) {
            throw StateMismatch("series length does not match differencing state");
        }
        return differenced;
    }
    if (state.stages.size() != passes || differenced.size() != state.differenced_size()) {
        throw StateMismatch("series length does not match differencing state");
    }
    std::vector<double> current = differenced;
    for (std::size_t stage = passes; stage-- > 0;) {
        const auto& history = state.stages[stage];
        const std::size_t lag = state.lag(stage);
        std::vector<double> rebuilt(history.begin(), history.begin() + static_cast<std::ptrdiff_t>(lag));
        for (std::size_t t = 0; t < current.size(); ++t) {
            rebuilt.push_back(current[t] + rebuilt[t]);
        }
        current = std::move(rebuilt);
    }
    return current;
}

}  // namespace gpeval
