#include "gpeval/series_io.hpp"

#include "gpeval/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gpeval {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(sep, pos);
        out.push_back(line.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, value);
    if (field.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + field + "' is not a finite number");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

ParsedSeries parse_series_csv(const std::string& text, const std::string& value_column) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    ParsedSeries out;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (!header_seen) {
            if (fields.size() < 2 || fields[0] != "t" || fields[1] != value_column) {
                throw ParseError("line " + std::to_string(line_no) + ": expected header starting with 't," +
                                 value_column + "'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() < 2) {
            throw ParseError("line " + std::to_string(line_no) + ": expected at least 2 fields");
        }
        const double t = parse_number(fields[0], line_no);
        const double y = parse_number(fields[1], line_no);
        if (!out.times.empty() && !(t > out.times.back())) {
            throw NonMonotonicTime("line " + std::to_string(line_no) + ": time " + fields[0] +
                                   " does not increase");
        }
        out.times.push_back(t);
        out.values.push_back(y);
    }
    if (!header_seen) {
        throw ParseError("empty CSV: missing 't," + value_column + "' header");
    }

    if (out.times.size() >= 2) {
        const double dt = (out.times.back() - out.times.front()) / static_cast<double>(out.times.size() - 1);
        bool regular = true;
        for (std::size_t i = 1; i < out.times.size() && regular; ++i) {
            regular = std::abs((out.times[i] - out.times[i - 1]) - dt) <= 1e-9 * dt;
        }
        if (regular) {
            out.grid = TimeGrid{out.times[0], dt, out.times.size()};
        }
    }
    return out;
}

ParsedSeries read_series_csv(const std::filesystem::path& path, const std::string& value_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series_csv(buf.str(), value_column);
}

TimeSeries ParsedSeries::to_time_series() const {
    if (!grid) {
        throw ValidationError("series times are not regularly spaced");
    }
    return TimeSeries{*grid, values};
}

Observations ParsedSeries::to_observations(const TimeGrid& target) const {
    std::vector<std::size_t> indices;
    indices.reserve(times.size());
    for (double t : times) {
        const double position = (t - target.t0) / target.dt;
        const double rounded = std::round(position);
        if (rounded < 0.0 || rounded >= static_cast<double>(target.n) ||
            std::abs(position - rounded) > 1e-6) {
            throw ValidationError("observation time " + format_double(t) + " is not on the grid");
        }
        indices.push_back(static_cast<std::size_t>(rounded));
    }
    Observations obs;
    obs.indices = std::move(indices);
    obs.times = times;
    obs.values = values;
    return obs;
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    out << "t,y\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        out << format_double(series.grid.time(i)) << ',' << format_double(series.values[i]) << '\n';
    }
}

void write_observations_csv(std::ostream& out, const Observations& obs) {
    out << "t,y\n";
    for (std::size_t j = 0; j < obs.size(); ++j) {
        out << format_double(obs.times[j]) << ',' << format_double(obs.values[j]) << '\n';
    }
}

void write_reconstruction_csv(std::ostream& out, const TimeGrid& grid, const Eigen::VectorXd& mean,
                              const Eigen::VectorXd& variance, const Eigen::MatrixXd& draws) {
    out << "t,mean,var";
    for (Eigen::Index c = 0; c < draws.cols(); ++c) out << ",draw" << (c + 1);
    out << '\n';
    for (Eigen::Index i = 0; i < mean.size(); ++i) {
        out << format_double(grid.time(static_cast<std::size_t>(i))) << ',' << format_double(mean[i]) << ','
            << format_double(variance[i]);
        for (Eigen::Index c = 0; c < draws.cols(); ++c) out << ',' << format_double(draws(i, c));
        out << '\n';
    }
}

}  // namespace gpeval
