#include "gpeval/experiment.hpp"

#include "gpeval/errors.hpp"
#include "gpeval/random.hpp"
#include "gpeval/series_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace gpeval {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const CellResult& ExperimentResult::cell(std::size_t process, std::size_t sparsity) const {
    return cells.at(process * config.sparsity.size() + sparsity);
}

StageSeeds cell_seeds(const ExperimentConfig& config, std::size_t process, std::size_t sparsity) {
    const auto base = config.seeds();
    const auto p = static_cast<std::uint32_t>(process);
    const auto s = static_cast<std::uint32_t>(sparsity);
    return StageSeeds{derive_seed(base.simulation, {p}), derive_seed(base.sparsify, {p, s}),
                      derive_seed(base.sampling, {p, s})};
}

TimeSeries simulate_truth(const ExperimentConfig& config, std::size_t process) {
    const auto seeds = cell_seeds(config, process, 0);
    auto draws = sample_gp_prior(config.processes.at(process).kernel, config.grid, config.noise_sd,
                                 seeds.simulation, 1);
    return std::move(draws.front());
}

CellResult run_cell(const ExperimentConfig& config, std::size_t process, std::size_t sparsity, bool with_draws) {
    const auto& proc = config.processes.at(process);
    const double fraction = config.sparsity.at(sparsity);
    const auto seeds = cell_seeds(config, process, sparsity);

    CellResult cell;
    cell.process = proc.name;
    cell.sparsity = fraction;
    cell.simulation_seed = seeds.simulation;
    cell.sparsify_seed = seeds.sparsify;
    cell.sampling_seed = seeds.sampling;
    cell.truth = simulate_truth(config, process);
    cell.observations = sparsify(cell.truth, fraction, config.min_gap, seeds.sparsify);

    const auto model = GPPosterior::fit(cell.observations, proc.kernel, config.gp_noise2);
    const auto times = config.grid.times();
    const auto prediction = model.predict(times);
    cell.mean = prediction.mean;
    cell.variance = prediction.variance();
    if (with_draws) {
        cell.draws = model.sample_posterior(times, config.posterior_draws, seeds.sampling);
    }

    const TimeSeries reconstruction{config.grid, std::vector<double>(cell.mean.data(), cell.mean.data() + cell.mean.size())};
    cell.report = mape_ar(reconstruction, cell.observations, config.secondary,
                          EvalOptions{config.horizon, config.epsilon, config.signed_mape});
    return cell;
}

ExperimentResult run_experiment(const ExperimentConfig& config, bool with_draws) {
    config.validate();
    std::vector<std::future<CellResult>> tasks;
    for (std::size_t p = 0; p < config.processes.size(); ++p) {
        for (std::size_t s = 0; s < config.sparsity.size(); ++s) {
            tasks.push_back(std::async(std::launch::async, [&config, p, s, with_draws] {
                return run_cell(config, p, s, with_draws);
            }));
        }
    }
    ExperimentResult result;
    result.config = config;
    for (auto& task : tasks) {
        result.cells.push_back(task.get());
    }
    return result;
}

TimeSeries pure_noise_reconstruction(const TimeGrid& grid, double sigma2, std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::VectorXd z = std::sqrt(sigma2) * standard_normal(rng, static_cast<Eigen::Index>(grid.n));
    return TimeSeries{grid, std::vector<double>(z.data(), z.data() + z.size())};
}

namespace {

// 0.07 -> "7" rather than "7.000000000000001".
std::string percent_label(double fraction) {
    return format_double(std::round(fraction * 100.0 * 1e6) / 1e6);
}

}  // namespace

std::string cell_name(const std::string& process, double sparsity) {
    std::string pct = percent_label(sparsity);
    for (auto& c : pct) {
        if (c == '.') c = 'p';
    }
    return process + "_" + pct + "pct";
}

void write_report_json(std::ostream& out, const CellResult& cell) {
    const auto& r = cell.report;
    ordered_json j;
    j["process"] = cell.process;
    j["sparsity"] = cell.sparsity;
    j["horizon"] = r.horizon;
    j["secondary"] = r.secondary.to_string();
    j["naive_fallback"] = r.secondary.naive_fallback;
    j["signed_mape"] = r.signed_errors;
    j["epsilon"] = r.epsilon;
    j["seeds"] = {{"simulation", cell.simulation_seed}, {"sparsify", cell.sparsify_seed}, {"sampling", cell.sampling_seed}};
    j["n_observations"] = cell.observations.size();
    j["mape_ar"] = r.mape_ar;
    j["n_points"] = r.per_point.size();
    j["n_skipped"] = r.skipped.size();
    ordered_json points = ordered_json::array();
    for (const auto& p : r.per_point) {
        ordered_json e;
        e["k"] = p.k;
        e["grid_index"] = p.grid_index;
        e["t"] = p.time;
        e["y"] = p.actual;
        e["y_ar"] = p.predicted;
        e["ape"] = p.ape;
        e["fallback_used"] = p.fallback_used;
        e["epsilon_guard"] = p.epsilon_guard;
        if (p.fallback_used) e["fallback_reason"] = p.fallback_reason;
        points.push_back(std::move(e));
    }
    j["per_point"] = std::move(points);
    ordered_json skipped = ordered_json::array();
    for (const auto& s : r.skipped) {
        skipped.push_back({{"k", s.k}, {"grid_index", s.grid_index}, {"reason", s.reason}});
    }
    j["skipped"] = std::move(skipped);
    out << j.dump(2) << '\n';
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
    out << "process,sparsity,mape_ar,n_points,n_skipped\n";
    for (const auto& cell : result.cells) {
        out << cell.process << ',' << format_double(cell.sparsity) << ',' << format_double(cell.report.mape_ar) << ','
            << cell.report.per_point.size() << ',' << cell.report.skipped.size() << '\n';
    }
}

void write_summary_table(std::ostream& out, const ExperimentResult& result) {
    const auto& cfg = result.config;
    out << "MAPE-AR (horizon " << cfg.horizon << ", secondary " << cfg.secondary.to_string() << ")\n";
    out << std::left << std::setw(14) << "process";
    for (double f : cfg.sparsity) {
        out << std::right << std::setw(14) << (percent_label(f) + "% sparsity");
    }
    out << '\n';
    std::ostringstream num;
    for (std::size_t p = 0; p < cfg.processes.size(); ++p) {
        out << std::left << std::setw(14) << cfg.processes[p].name;
        for (std::size_t s = 0; s < cfg.sparsity.size(); ++s) {
            num.str({});
            num << std::fixed << std::setprecision(4) << result.cell(p, s).report.mape_ar;
            out << std::right << std::setw(14) << num.str();
        }
        out << '\n';
    }
}

void write_manifest(std::ostream& out, const ExperimentConfig& config) {
    const auto seeds = config.seeds();
    ordered_json j;
    j["gpeval_version"] = kVersion;
    j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                         std::to_string(EIGEN_MINOR_VERSION);
    j["rng"] = "boost::random::mt19937_64 + boost::random::normal_distribution";
    j["master_seed"] = config.master_seed;
    j["seeds"] = {{"simulation", seeds.simulation}, {"sparsify", seeds.sparsify}, {"sampling", seeds.sampling}};
    ordered_json processes = ordered_json::array();
    for (const auto& p : config.processes) {
        processes.push_back({{"name", p.name},
                             {"sigma2", p.kernel.sigma2},
                             {"beta", p.kernel.beta},
                             {"lengthscale", p.kernel.lengthscales.front()},
                             {"alpha", p.kernel.exponents.front()}});
    }
    j["processes"] = std::move(processes);
    j["grid"] = {{"t0", config.grid.t0}, {"dt", config.grid.dt}, {"n", config.grid.n}};
    j["sparsity"] = config.sparsity;
    j["min_gap"] = config.min_gap;
    j["noise_sd"] = config.noise_sd;
    j["gp_noise2"] = config.gp_noise2;
    j["horizon"] = config.horizon;
    j["secondary"] = config.secondary.to_string();
    j["naive_fallback"] = config.secondary.naive_fallback;
    j["signed_mape"] = config.signed_mape;
    j["epsilon"] = config.epsilon;
    j["draws"] = config.posterior_draws;
    out << j.dump(2) << '\n';
}

namespace {

class OutputTree {
public:
    explicit OutputTree(fs::path root) : root_(std::move(root)) {}

    OutputTree(const OutputTree&) = delete;
    OutputTree& operator=(const OutputTree&) = delete;

    ~OutputTree() {
        if (!committed_) rollback();
    }

    void make_dir(const fs::path& rel) {
        const fs::path dir = rel.empty() ? root_ : root_ / rel;
        std::error_code ec;
        if (fs::exists(dir, ec)) {
            if (!fs::is_directory(dir, ec)) throw IoError(dir.string() + " exists and is not a directory");
            return;
        }
        // Record each directory level we create so rollback can remove it.
        std::vector<fs::path> missing;
        for (fs::path p = dir; !p.empty() && !fs::exists(p, ec); p = p.parent_path()) {
            missing.push_back(p);
            if (p == p.parent_path()) break;
        }
        if (!fs::create_directories(dir, ec) && ec) {
            throw IoError("cannot create " + dir.string() + ": " + ec.message());
        }
        dirs_.insert(dirs_.end(), missing.begin(), missing.end());
    }

    void write(const fs::path& rel, const std::function<void(std::ostream&)>& body) {
        const fs::path file = root_ / rel;
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + file.string());
        files_.push_back(file);
        body(out);
        out.flush();
        if (!out) throw IoError("write failed for " + file.string());
    }

    void commit() { committed_ = true; }

private:
    void rollback() noexcept {
        std::error_code ec;
        for (auto it = files_.rbegin(); it != files_.rend(); ++it) fs::remove(*it, ec);
        auto dirs = dirs_;
        std::sort(dirs.begin(), dirs.end(), [](const fs::path& a, const fs::path& b) {
            return a.native().size() > b.native().size();
        });
        for (const auto& d : dirs) fs::remove(d, ec);
    }

    fs::path root_;
    std::vector<fs::path> files_;
    std::vector<fs::path> dirs_;
    bool committed_ = false;
};

}  // namespace

void write_outputs(const ExperimentResult& result) {
    OutputTree tree(result.config.out_dir);
    tree.make_dir({});
    for (const auto& cell : result.cells) {
        const fs::path dir = cell_name(cell.process, cell.sparsity);
        tree.make_dir(dir);
        tree.write(dir / "truth.csv", [&](std::ostream& o) { write_series_csv(o, cell.truth); });
        tree.write(dir / "observations.csv", [&](std::ostream& o) { write_observations_csv(o, cell.observations); });
        tree.write(dir / "reconstruction.csv", [&](std::ostream& o) {
            write_reconstruction_csv(o, result.config.grid, cell.mean, cell.variance, cell.draws);
        });
        tree.write(dir / "report.json", [&](std::ostream& o) { write_report_json(o, cell); });
    }
    tree.write("summary.csv", [&](std::ostream& o) { write_summary_csv(o, result); });
    tree.write("summary.txt", [&](std::ostream& o) { write_summary_table(o, result); });
    tree.write("manifest.json", [&](std::ostream& o) { write_manifest(o, result.config); });
    tree.commit();
}

}  // namespace gpeval
