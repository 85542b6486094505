#pragma once

#include "gpeval/evaluate.hpp"
#include "gpeval/kernel.hpp"
#include "gpeval/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gpeval {

/// A named data-generating kernel.
struct ProcessSpec {
    std::string name;
    KernelParams kernel;
};

/// Ornstein-Uhlenbeck process: (sigma2, beta, l, alpha) = (1, 1, 2, 1).
[[nodiscard]] ProcessSpec ou_process();
/// Fractional process: (sigma2, beta, l, alpha) = (1, 1, 2, 1.3).
[[nodiscard]] ProcessSpec fractional_process();

struct StageSeeds {
    std::uint64_t simulation = 0;
    std::uint64_t sparsify = 0;
    std::uint64_t sampling = 0;
};

struct ExperimentConfig {
    std::vector<ProcessSpec> processes{ou_process(), fractional_process()};
    TimeGrid grid{0.0, 0.02, 351};
    std::vector<double> sparsity{0.03, 0.05, 0.07};
    std::size_t min_gap = 5;
    double noise_sd = 0.0;
    double gp_noise2 = 1e-6;
    std::size_t horizon = 1;
    SecondaryModelSpec secondary = SecondaryModelSpec::pure_ar(2);
    bool signed_mape = false;
    double epsilon = 1e-8;
    std::size_t posterior_draws = 2;

    std::uint64_t master_seed = 1;
    std::optional<std::uint64_t> simulation_seed;
    std::optional<std::uint64_t> sparsify_seed;
    std::optional<std::uint64_t> sampling_seed;

    std::filesystem::path out_dir = "gpeval-out";

    /// Stage seeds: explicit overrides, otherwise derived from master_seed.
    [[nodiscard]] StageSeeds seeds() const;

    /// Checks every module precondition reachable from the config; throws ValidationError.
    void validate() const;
};

/**
 * Parses the "key = value" config format. Blank lines and '#' comments are
 * ignored; unknown keys are rejected. Throws ParseError (with line number) or
 * ValidationError (naming the field).
 */
[[nodiscard]] ExperimentConfig parse_config(const std::string& text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Comma-separated list of fractions, e.g. "0.03,0.05".
[[nodiscard]] std::vector<double> parse_fractions(const std::string& text);

}  // namespace gpeval
