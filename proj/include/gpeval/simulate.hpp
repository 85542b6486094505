#pragma once

#include "gpeval/kernel.hpp"
#include "gpeval/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gpeval {

/// Regular time grid t_i = t0 + i * dt, i = 0..n-1.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.02;
    std::size_t n = 351;

    [[nodiscard]] double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
    [[nodiscard]] std::vector<double> times() const;
};

/// Values on a regular grid: the fine-scale truth or a GP reconstruction of it.
struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values;
};

/// Sparse irregular subset of a gridded series, keeping the grid indices.
struct Observations {
    std::vector<std::size_t> indices;
    std::vector<double> times;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return indices.size(); }
};

/// Throws DomainError on dt <= 0, non-finite t0/dt, or n < 2.
[[nodiscard]] TimeGrid make_grid(double t0, double dt, std::size_t n);

/**
 * Draws `count` sample paths from the zero-mean GP prior on the grid:
 * chol(K + jitter I) * z + noise_sd * eps, z and eps standard normal.
 * The same seed always yields the same paths.
 */
[[nodiscard]] std::vector<TimeSeries> sample_gp_prior(const KernelParams& params,
                                                      const TimeGrid& grid,
                                                      double noise_sd,
                                                      std::uint64_t seed,
                                                      std::size_t count,
                                                      const JitterPolicy& jitter = {});

/// floor(fraction * n + 0.5)
[[nodiscard]] std::size_t sparse_count(double fraction, std::size_t n);

/**
 * Selects round_half_up(fraction * n) grid points uniformly at random among
 * all index sets whose consecutive gaps are at least min_gap.
 *
 * Throws InfeasibleSparsity when fewer than two points would be kept or when
 * (m - 1) * min_gap > n - 1.
 */
[[nodiscard]] Observations sparsify(const TimeSeries& series,
                                    double fraction,
                                    std::size_t min_gap,
                                    std::uint64_t seed);

/// Picks the grid points at the given strictly increasing indices.
[[nodiscard]] Observations observe_at(const TimeSeries& series, std::vector<std::size_t> indices);

}  // namespace gpeval
