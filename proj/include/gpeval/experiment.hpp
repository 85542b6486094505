#pragma once

#include "gpeval/config.hpp"
#include "gpeval/evaluate.hpp"
#include "gpeval/gpr.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gpeval {

inline constexpr const char* kVersion = "0.1.0";

/// One (process, sparsity) run of the simulate -> sparsify -> fit -> score pipeline.
struct CellResult {
    std::string process;
    double sparsity = 0.0;
    std::uint64_t simulation_seed = 0;
    std::uint64_t sparsify_seed = 0;
    std::uint64_t sampling_seed = 0;
    TimeSeries truth;
    Observations observations;
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
    Eigen::MatrixXd draws;
    EvalReport report;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<CellResult> cells;  // process-major, sparsity-minor

    [[nodiscard]] const CellResult& cell(std::size_t process, std::size_t sparsity) const;
};

/// Seeds used by cell (process, sparsity); truth depends on the process only.
[[nodiscard]] StageSeeds cell_seeds(const ExperimentConfig& config, std::size_t process, std::size_t sparsity);

/// Noise-free truth path for one process.
[[nodiscard]] TimeSeries simulate_truth(const ExperimentConfig& config, std::size_t process);

[[nodiscard]] CellResult run_cell(const ExperimentConfig& config, std::size_t process, std::size_t sparsity,
                                  bool with_draws = true);

/// Runs every cell concurrently and joins them in process-major order.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config, bool with_draws = true);

/// i.i.d. N(0, sigma2) values on a grid: the uninformed reconstruction baseline.
[[nodiscard]] TimeSeries pure_noise_reconstruction(const TimeGrid& grid, double sigma2, std::uint64_t seed);

/// Directory name of a cell, e.g. "ou_3pct".
[[nodiscard]] std::string cell_name(const std::string& process, double sparsity);

void write_report_json(std::ostream& out, const CellResult& cell);
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
/// Plain-text table: rows are processes, columns sparsity levels.
void write_summary_table(std::ostream& out, const ExperimentResult& result);
void write_manifest(std::ostream& out, const ExperimentConfig& config);

/**
 * Writes the full output tree under config.out_dir. On failure every file
 * written so far is removed (and the directory, if this call created it)
 * before IoError is thrown.
 */
void write_outputs(const ExperimentResult& result);

}  // namespace gpeval
