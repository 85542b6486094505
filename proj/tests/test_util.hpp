#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace gpeval::test {

/// Test-only generator; independent of the library's RNG plumbing.
inline std::mt19937_64& engine() {
    static std::mt19937_64 eng(20240601);
    return eng;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine());
}

/// Symmetric-matrix minimum eigenvalue via the self-adjoint solver.
inline double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

/// AR(1)/MA(1) style simulation with a test-local generator (burn-in discarded).
inline std::vector<double> simulate_arma11(double phi, double theta, std::size_t n, std::uint64_t seed,
                                           double intercept = 0.0) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t burn = 500;
    std::vector<double> out;
    double prev = 0.0;
    double prev_e = 0.0;
    for (std::size_t t = 0; t < n + burn; ++t) {
        const double e = normal(eng);
        const double y = intercept + phi * prev + e + theta * prev_e;
        prev = y;
        prev_e = e;
        if (t >= burn) out.push_back(y);
    }
    return out;
}

}  // namespace gpeval::test
