#include "gpeval/kernel.hpp"

#include "gpeval/errors.hpp"

#include <cmath>
#include <string>

namespace gpeval {

namespace {

std::string indexed(const char* field, std::size_t i) {
    return std::string(field) + "[" + std::to_string(i) + "]";
}

void require_dim(const KernelParams& params, std::size_t dim) {
    if (dim != params.dim()) {
        throw DimensionMismatch("point dimension " + std::to_string(dim) +
                                " does not match kernel dimension " +
                                std::to_string(params.dim()));
    }
}

// Assumes dimensions were already checked.
double evaluate(const KernelParams& params, const Point& a, const Point& b) {
    double exponent = 0.0;
    for (std::size_t k = 0; k < params.dim(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        const double scaled = std::abs(a[idx] - b[idx]) / params.lengthscales[k];
        if (scaled != 0.0) {
            exponent += std::pow(scaled, params.exponents[k]);
        }
    }
    return params.sigma2 * std::exp(-params.beta * exponent);
}

}  // namespace

const KernelParams& validate_params(const KernelParams& params) {
    if (!(params.sigma2 > 0.0) || !std::isfinite(params.sigma2)) {
        throw DomainError("sigma2 must be finite and > 0");
    }
    if (!(params.beta > 0.0) || !std::isfinite(params.beta)) {
        throw DomainError("beta must be finite and > 0");
    }
    if (params.lengthscales.empty()) {
        throw DomainError("lengthscales must have at least one entry");
    }
    if (params.lengthscales.size() != params.exponents.size()) {
        throw DomainError("lengthscales and exponents must have equal length");
    }
    for (std::size_t k = 0; k < params.dim(); ++k) {
        const double l = params.lengthscales[k];
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw DomainError(indexed("lengthscales", k) + " must be finite and > 0");
        }
        const double alpha = params.exponents[k];
        if (!(alpha > 0.0 && alpha <= 2.0)) {
            throw DomainError(indexed("exponents", k) + " = " + std::to_string(alpha) +
                              " is outside (0, 2]; the kernel would not be positive semidefinite");
        }
    }
    return params;
}

double kernel_value(const KernelParams& params, const Point& a, const Point& b) {
    require_dim(params, static_cast<std::size_t>(a.size()));
    require_dim(params, static_cast<std::size_t>(b.size()));
    return evaluate(params, a, b);
}

double kernel_value(const KernelParams& params, double a, double b) {
    require_dim(params, 1);
    const double scaled = std::abs(a - b) / params.lengthscales[0];
    const double exponent = scaled == 0.0 ? 0.0 : std::pow(scaled, params.exponents[0]);
    return params.sigma2 * std::exp(-params.beta * exponent);
}

Eigen::MatrixXd kernel_matrix(const KernelParams& params,
                              std::span<const Point> rows,
                              std::span<const Point> cols) {
    for (const auto& p : rows) require_dim(params, static_cast<std::size_t>(p.size()));
    for (const auto& p : cols) require_dim(params, static_cast<std::size_t>(p.size()));

    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                evaluate(params, rows[i], cols[j]);
        }
    }
    return out;
}

Eigen::MatrixXd kernel_matrix(const KernelParams& params,
                              std::span<const double> rows,
                              std::span<const double> cols) {
    require_dim(params, 1);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                kernel_value(params, rows[i], cols[j]);
        }
    }
    return out;
}

}  // namespace gpeval
