#include "gpeval/simulate.hpp"

#include "gpeval/errors.hpp"
#include "gpeval/random.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace gpeval {

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = time(i);
    }
    return out;
}

TimeGrid make_grid(double t0, double dt, std::size_t n) {
    if (!std::isfinite(t0)) {
        throw DomainError("grid t0 must be finite");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("grid dt must be finite and > 0");
    }
    if (n < 2) {
        throw DomainError("grid needs at least 2 points");
    }
    return TimeGrid{t0, dt, n};
}

std::vector<TimeSeries> sample_gp_prior(const KernelParams& params,
                                        const TimeGrid& grid,
                                        double noise_sd,
                                        std::uint64_t seed,
                                        std::size_t count,
                                        const JitterPolicy& jitter) {
    validate_params(params);
    if (params.dim() != 1) {
        throw DimensionMismatch("prior sampling on a time grid needs a one-dimensional kernel");
    }
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
        throw DomainError("noise_sd must be finite and >= 0");
    }
    if (count < 1) {
        throw DomainError("count must be >= 1");
    }
    const auto times = grid.times();
    const auto factor = cholesky_psd(kernel_matrix(params, times, times), jitter);
    const auto n = static_cast<Eigen::Index>(grid.n);

    Rng rng(seed);
    std::vector<TimeSeries> draws;
    draws.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        Eigen::VectorXd path = factor.lower.triangularView<Eigen::Lower>() * standard_normal(rng, n);
        if (noise_sd > 0.0) {
            path += noise_sd * standard_normal(rng, n);
        }
        draws.push_back(TimeSeries{grid, std::vector<double>(path.data(), path.data() + n)});
    }
    return draws;
}

std::size_t sparse_count(double fraction, std::size_t n) {
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
}

Observations observe_at(const TimeSeries& series, std::vector<std::size_t> indices) {
    Observations obs;
    obs.times.reserve(indices.size());
    obs.values.reserve(indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] >= series.values.size()) {
            throw DomainError("observation index " + std::to_string(indices[j]) + " is off the grid");
        }
        if (j > 0 && indices[j] <= indices[j - 1]) {
            throw DomainError("observation indices must be strictly increasing");
        }
        obs.times.push_back(series.grid.time(indices[j]));
        obs.values.push_back(series.values[indices[j]]);
    }
    obs.indices = std::move(indices);
    return obs;
}

Observations sparsify(const TimeSeries& series, double fraction, std::size_t min_gap, std::uint64_t seed) {
    const std::size_t n = series.values.size();
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw DomainError("sparsity fraction must lie in (0, 1)");
    }
    if (min_gap < 1) {
        throw DomainError("min_gap must be >= 1");
    }
    const std::size_t m = sparse_count(fraction, n);
    if (m < 2) {
        throw InfeasibleSparsity("fraction " + std::to_string(fraction) + " of " + std::to_string(n) +
                                 " points keeps fewer than 2 observations");
    }
    if ((m - 1) * min_gap > n - 1) {
        throw InfeasibleSparsity(std::to_string(m) + " points cannot be " + std::to_string(min_gap) +
                                 " steps apart on a grid of " + std::to_string(n));
    }

    // Gap-constrained index sets are in bijection with plain m-subsets of a
    // shrunken range: i_j = c_j + j * (min_gap - 1), c sorted and distinct in
    // [0, n - (m - 1)(min_gap - 1)). Uniform subsets map to uniform valid sets.
    const std::size_t reduced = n - (m - 1) * (min_gap - 1);
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(m);
    std::unordered_set<std::size_t> taken;
    // Floyd's algorithm for a uniform m-subset of [0, reduced).
    for (std::size_t j = reduced - m; j < reduced; ++j) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, j);
        const std::size_t t = pick(rng);
        const std::size_t value = taken.contains(t) ? j : t;
        taken.insert(value);
        chosen.push_back(value);
    }
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t j = 0; j < m; ++j) {
        chosen[j] += j * (min_gap - 1);
    }
    return observe_at(series, std::move(chosen));
}

}  // namespace gpeval
