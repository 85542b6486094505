#include "gpeval/evaluate.hpp"

#include "gpeval/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace gpeval {

namespace {

std::vector<std::size_t> parse_counts(const std::string& text, const std::string& context) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        std::size_t value = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
            throw ValidationError(context + ": '" + item + "' is not a nonnegative integer");
        }
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

double percent_error(double actual, double predicted, double epsilon, bool signed_errors, bool* guarded) {
    const double scale = std::abs(actual);
    *guarded = scale < epsilon;
    if (signed_errors) {
        const double denom = *guarded ? (actual < 0.0 ? -epsilon : epsilon) : actual;
        return (actual - predicted) / denom;
    }
    return std::abs(actual - predicted) / (*guarded ? epsilon : scale);
}

}  // namespace

SecondaryModelSpec SecondaryModelSpec::pure_ar(std::size_t p, ArEstimator estimator) {
    return SecondaryModelSpec{Kind::PureAr, ArimaOrder{.p = p}, estimator, true};
}

SecondaryModelSpec SecondaryModelSpec::seasonal_arima(const ArimaOrder& order) {
    return SecondaryModelSpec{Kind::SeasonalArima, order, ArEstimator::LeastSquares, true};
}

SecondaryModelSpec SecondaryModelSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("secondary: expected 'ar:p', 'yw:p' or 'sarima:p,d,q,P,D,Q,s', got '" + text + "'");
    }
    const std::string kind = text.substr(0, colon);
    const auto counts = parse_counts(text.substr(colon + 1), "secondary");
    SecondaryModelSpec spec;
    if (kind == "ar" || kind == "yw") {
        if (counts.size() != 1) throw ValidationError("secondary: '" + kind + "' takes exactly one order");
        spec = pure_ar(counts[0], kind == "ar" ? ArEstimator::LeastSquares : ArEstimator::YuleWalker);
    } else if (kind == "sarima") {
        if (counts.size() != 7) throw ValidationError("secondary: 'sarima' takes p,d,q,P,D,Q,s");
        spec = seasonal_arima(ArimaOrder{counts[0], counts[1], counts[2], counts[3], counts[4], counts[5], counts[6]});
    } else {
        throw ValidationError("secondary: unknown model kind '" + kind + "'");
    }
    spec.validate();
    return spec;
}

std::string SecondaryModelSpec::to_string() const {
    std::ostringstream os;
    if (kind == Kind::PureAr) {
        os << (estimator == ArEstimator::YuleWalker ? "yw:" : "ar:") << order.p;
    } else {
        os << "sarima:" << order.p << ',' << order.d << ',' << order.q << ',' << order.P << ',' << order.D << ','
           << order.Q << ',' << order.s;
    }
    return os.str();
}

void SecondaryModelSpec::validate() const {
    if (kind == Kind::PureAr) {
        if (order.d + order.q + order.P + order.D + order.Q != 0) {
            throw ValidationError("secondary: a pure AR model only has an AR order");
        }
        if (order.p < 1) throw ValidationError("secondary: AR order must be >= 1");
        return;
    }
    try {
        order.validate();
    } catch (const DomainError& e) {
        throw ValidationError(std::string("secondary: ") + e.what());
    }
}

double mape(std::span<const double> actual, std::span<const double> predicted, double epsilon) {
    if (actual.size() != predicted.size() || actual.empty()) {
        throw LengthMismatch("mape needs equal, nonempty inputs");
    }
    double sum = 0.0;
    bool guarded = false;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        sum += percent_error(actual[i], predicted[i], epsilon, false, &guarded);
    }
    return sum / static_cast<double>(actual.size());
}

double signed_mape(std::span<const double> actual, std::span<const double> predicted, double epsilon) {
    if (actual.size() != predicted.size() || actual.empty()) {
        throw LengthMismatch("mape needs equal, nonempty inputs");
    }
    double sum = 0.0;
    bool guarded = false;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        sum += percent_error(actual[i], predicted[i], epsilon, true, &guarded);
    }
    return sum / static_cast<double>(actual.size());
}

std::optional<double> secondary_forecast(std::span<const double> prefix, const SecondaryModelSpec& spec,
                                         std::size_t h, std::string* reason) {
    try {
        const bool yule_walker = spec.kind == SecondaryModelSpec::Kind::PureAr &&
                                 spec.estimator == SecondaryModelSpec::ArEstimator::YuleWalker;
        const ArimaFit fit = yule_walker ? fit_ar_yule_walker(prefix, spec.order.p) : fit_arima_css(prefix, spec.order);
        const auto path = forecast(fit, h);
        if (!std::isfinite(path.back())) {
            if (reason) *reason = "non-finite forecast";
            return std::nullopt;
        }
        return path.back();
    } catch (const SeriesTooShort& e) {
        if (reason) *reason = e.what();
    } catch (const SingularToeplitz& e) {
        if (reason) *reason = e.what();
    } catch (const OptimizerFailure& e) {
        if (reason) *reason = e.what();
    } catch (const NonFiniteObjective& e) {
        if (reason) *reason = e.what();
    }
    return std::nullopt;
}

EvalReport mape_ar(const TimeSeries& reconstruction, const Observations& obs, const SecondaryModelSpec& spec,
                   const EvalOptions& opts) {
    spec.validate();
    if (opts.horizon < 1) {
        throw DomainError("horizon must be >= 1");
    }
    if (obs.values.size() != obs.indices.size()) {
        throw LengthMismatch("observation indices and values differ in length");
    }
    const auto& values = reconstruction.values;

    EvalReport report;
    report.horizon = opts.horizon;
    report.secondary = spec;
    report.signed_errors = opts.signed_errors;
    report.epsilon = opts.epsilon;

    for (std::size_t idx = 1; idx < obs.size(); ++idx) {
        const std::size_t k = idx + 1;
        const std::size_t grid_index = obs.indices[idx];
        if (grid_index >= values.size()) {
            throw DomainError("observation " + std::to_string(k) + " lies outside the reconstruction grid");
        }
        if (grid_index < opts.horizon) {
            report.skipped.push_back({k, grid_index, "no reconstruction values at least h steps before the observation"});
            continue;
        }
        const std::size_t cutoff = grid_index - opts.horizon;
        const std::span<const double> prefix(values.data(), cutoff + 1);

        PointForecast point;
        point.k = k;
        point.grid_index = grid_index;
        point.time = obs.times[idx];
        point.actual = obs.values[idx];

        std::string reason;
        if (auto predicted = secondary_forecast(prefix, spec, opts.horizon, &reason)) {
            point.predicted = *predicted;
        } else if (spec.naive_fallback) {
            point.predicted = prefix.back();
            point.fallback_used = true;
            point.fallback_reason = reason;
        } else {
            report.skipped.push_back({k, grid_index, reason});
            continue;
        }
        point.ape = percent_error(point.actual, point.predicted, opts.epsilon, opts.signed_errors, &point.epsilon_guard);
        report.per_point.push_back(std::move(point));
    }

    if (report.per_point.empty()) {
        throw NoEvaluablePoints("no observation could be scored");
    }
    double sum = 0.0;
    for (const auto& p : report.per_point) sum += p.ape;
    report.mape_ar = sum / static_cast<double>(report.per_point.size());
    return report;
}

}  // namespace gpeval
