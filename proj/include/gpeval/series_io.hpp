#pragma once

#include "gpeval/simulate.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gpeval {

/// Shortest decimal form that parses back to the identical double.
[[nodiscard]] std::string format_double(double value);

/// A two-column series read from CSV; `grid` is set when the spacing is uniform.
struct ParsedSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::optional<TimeGrid> grid;

    /// Throws ValidationError when the times are not on a regular grid.
    [[nodiscard]] TimeSeries to_time_series() const;
    /// Maps every time onto `grid`; throws ValidationError for off-grid times.
    [[nodiscard]] Observations to_observations(const TimeGrid& grid) const;
};

/**
 * Parses CSV text whose header starts with "t,<value_column>". Further
 * columns are ignored. Times must be strictly increasing (NonMonotonicTime);
 * malformed rows raise ParseError with the line number.
 */
[[nodiscard]] ParsedSeries parse_series_csv(const std::string& text, const std::string& value_column = "y");
[[nodiscard]] ParsedSeries read_series_csv(const std::filesystem::path& path, const std::string& value_column = "y");

void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_observations_csv(std::ostream& out, const Observations& obs);
/// Header "t,mean,var,draw1,..."; draws holds one path per column.
void write_reconstruction_csv(std::ostream& out, const TimeGrid& grid, const Eigen::VectorXd& mean,
                              const Eigen::VectorXd& variance, const Eigen::MatrixXd& draws);

}  // namespace gpeval
