#include "gpeval/arima.hpp"

#include "gpeval/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace gpeval {

namespace {

// Product of two lag polynomials given as coefficient vectors (index = power).
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// 1 + sign * sum_i c_i B^(i * stride)
std::vector<double> lag_poly(std::span<const double> coeffs, double sign, std::size_t stride) {
    std::vector<double> out(coeffs.size() * stride + 1, 0.0);
    out[0] = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out[(i + 1) * stride] = sign * coeffs[i];
    }
    return out;
}

struct Unpacked {
    std::span<const double> ar, ma, sar, sma;
    double intercept = 0.0;
};

Unpacked unpack(const ArimaOrder& order, const Eigen::VectorXd& packed, bool with_intercept) {
    const double* base = packed.data();
    Unpacked u;
    u.ar = {base, order.p};
    u.ma = {base + order.p, order.q};
    u.sar = {base + order.p + order.q, order.P};
    u.sma = {base + order.p + order.q + order.P, order.Q};
    u.intercept = with_intercept ? packed[static_cast<Eigen::Index>(order.coefficient_count())] : 0.0;
    return u;
}

std::vector<double> expand_ar(const ArimaOrder& order, std::span<const double> ar, std::span<const double> sar) {
    const auto prod = poly_mul(lag_poly(ar, -1.0, 1), lag_poly(sar, -1.0, order.s));
    std::vector<double> a(prod.size() - 1);
    for (std::size_t i = 1; i < prod.size(); ++i) a[i - 1] = -prod[i];
    return a;
}

std::vector<double> expand_ma(const ArimaOrder& order, std::span<const double> ma, std::span<const double> sma) {
    const auto prod = poly_mul(lag_poly(ma, 1.0, 1), lag_poly(sma, 1.0, order.s));
    return {prod.begin() + 1, prod.end()};
}

// One-step residuals; entries before ar_lag are zero.
std::vector<double> residuals(std::span<const double> w, const std::vector<double>& a,
                              const std::vector<double>& m, double intercept, std::size_t start) {
    std::vector<double> e(w.size(), 0.0);
    for (std::size_t t = start; t < w.size(); ++t) {
        double pred = intercept;
        for (std::size_t i = 1; i <= a.size() && i <= t; ++i) pred += a[i - 1] * w[t - i];
        for (std::size_t j = 1; j <= m.size() && j <= t; ++j) pred += m[j - 1] * e[t - j];
        e[t] = w[t] - pred;
    }
    return e;
}

}  // namespace

void ArimaOrder::validate() const {
    if (seasonal() && s <= 1) {
        throw DomainError("seasonal period s must be > 1 when P, D or Q is nonzero");
    }
    if (s < 1) {
        throw DomainError("seasonal period s must be >= 1");
    }
}

std::string ArimaOrder::to_string() const {
    std::ostringstream os;
    os << "ARIMA(" << p << ',' << d << ',' << q << ")(" << P << ',' << D << ',' << Q << ")_" << s;
    return os.str();
}

std::vector<double> expanded_ar(const ArimaFit& fit) {
    return expand_ar(fit.order, fit.ar, fit.sar);
}

std::vector<double> expanded_ma(const ArimaFit& fit) {
    return expand_ma(fit.order, fit.ma, fit.sma);
}

double min_root_modulus(std::span<const double> coeffs, double sign) {
    std::size_t degree = coeffs.size();
    while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
    if (degree == 0) {
        return std::numeric_limits<double>::infinity();
    }
    // Roots z of 1 + sign*sum c_i z^i are reciprocals of the companion eigenvalues.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                      static_cast<Eigen::Index>(degree));
    for (std::size_t i = 0; i < degree; ++i) {
        companion(0, static_cast<Eigen::Index>(i)) = -sign * coeffs[i];
    }
    for (std::size_t i = 1; i < degree; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    const double spectral_radius = companion.eigenvalues().cwiseAbs().maxCoeff();
    if (!std::isfinite(spectral_radius)) return 0.0;
    return spectral_radius == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / spectral_radius;
}

double css_objective(std::span<const double> differenced, const ArimaOrder& order, const Eigen::VectorXd& packed,
                     bool with_intercept) {
    const auto u = unpack(order, packed, with_intercept);
    const auto a = expand_ar(order, u.ar, u.sar);
    const auto m = expand_ma(order, u.ma, u.sma);
    const auto e = residuals(differenced, a, m, u.intercept, order.ar_lag());
    double sum = 0.0;
    for (std::size_t t = order.ar_lag(); t < e.size(); ++t) sum += e[t] * e[t];
    return sum;
}

ArimaFit fit_arima_css(std::span<const double> values, const ArimaOrder& order, const CssOptions& opts) {
    order.validate();
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("series contains non-finite values");
    }
    auto diffed = difference(std::vector<double>(values.begin(), values.end()), order.d, order.D, order.s);
    const auto& w = diffed.values;
    const std::size_t k = order.coefficient_count();
    if (w.size() <= 8 * k || (order.seasonal() && w.size() <= 2 * order.s) ||
        w.size() <= order.ar_lag() + order.q + order.s * order.Q + 1) {
        throw SeriesTooShort(order.to_string() + " cannot be fitted on " + std::to_string(w.size()) +
                             " differenced values");
    }

    const bool with_intercept = order.d + order.D == 0;
    const std::size_t dims = k + (with_intercept ? 1 : 0);
    Eigen::VectorXd start = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dims));
    if (with_intercept) {
        start[static_cast<Eigen::Index>(k)] = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    }

    auto penalised = [&](const Eigen::VectorXd& x) {
        const auto u = unpack(order, x, with_intercept);
        const double modulus = std::min({min_root_modulus(u.ar, -1.0), min_root_modulus(u.sar, -1.0),
                                         min_root_modulus(u.ma, 1.0), min_root_modulus(u.sma, 1.0)});
        const double gap = std::max(0.0, opts.root_margin - modulus);
        return css_objective(w, order, x, with_intercept) + opts.penalty_weight * gap * gap;
    };

    Eigen::VectorXd best = start;
    if (dims > 0) {
        auto result = nelder_mead(penalised, start, opts.optimizer);
        for (std::size_t r = 0; r < opts.restarts; ++r) {
            result = nelder_mead(penalised, result.argmin, opts.optimizer);
        }
        best = result.argmin;
    }
    const double css = css_objective(w, order, best, with_intercept);
    if (!std::isfinite(css)) {
        throw OptimizerFailure("conditional sum of squares is not finite at the optimum");
    }

    ArimaFit fit;
    fit.order = order;
    const auto u = unpack(order, best, with_intercept);
    fit.ar.assign(u.ar.begin(), u.ar.end());
    fit.ma.assign(u.ma.begin(), u.ma.end());
    fit.sar.assign(u.sar.begin(), u.sar.end());
    fit.sma.assign(u.sma.begin(), u.sma.end());
    fit.intercept = u.intercept;
    fit.css = css;
    fit.sigma2_resid = css / static_cast<double>(w.size() - order.ar_lag());

    const auto e = residuals(w, expanded_ar(fit), expanded_ma(fit), fit.intercept, order.ar_lag());
    fit.tail_values.assign(w.end() - static_cast<std::ptrdiff_t>(order.ar_lag()), w.end());
    fit.tail_residuals.assign(e.end() - static_cast<std::ptrdiff_t>(order.ma_lag()), e.end());
    fit.diff_state = std::move(diffed.state);
    return fit;
}

std::vector<double> forecast(const ArimaFit& fit, std::size_t h) {
    if (h < 1) {
        throw DomainError("forecast horizon must be >= 1");
    }
    const auto a = expanded_ar(fit);
    const auto m = expanded_ma(fit);
    if (fit.tail_values.size() < a.size() || fit.tail_residuals.size() < m.size()) {
        throw StateMismatch("fit tail is shorter than the model's lags");
    }
    std::vector<double> w = fit.tail_values;
    std::vector<double> e = fit.tail_residuals;
    std::vector<double> out;
    out.reserve(h);
    for (std::size_t step = 0; step < h; ++step) {
        double next = fit.intercept;
        for (std::size_t i = 1; i <= a.size(); ++i) next += a[i - 1] * w[w.size() - i];
        for (std::size_t j = 1; j <= m.size(); ++j) next += m[j - 1] * e[e.size() - j];
        w.push_back(next);
        e.push_back(0.0);
        out.push_back(next);
    }
    return undifference(out, fit.diff_state);
}

}  // namespace gpeval
