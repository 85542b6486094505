// gpeval: simulate sparse irregular series, reconstruct them with GP
// regression and score the reconstruction with rolling MAPE-AR.

#include "gpeval/config.hpp"
#include "gpeval/errors.hpp"
#include "gpeval/evaluate.hpp"
#include "gpeval/experiment.hpp"
#include "gpeval/series_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

constexpr int kExitModuleError = 1;
constexpr int kExitIoError = 2;

struct RunFlags {
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> horizon;
    std::optional<std::string> secondary;
    std::optional<std::string> sparsity;
    bool signed_mape = false;
    bool quiet = false;
};

struct ScoreFlags {
    std::string reconstruction;
    std::string observations;
};

int run(const RunFlags& flags) {
    gpeval::ExperimentConfig config = flags.config ? gpeval::load_config(*flags.config) : gpeval::ExperimentConfig{};
    if (flags.out) config.out_dir = *flags.out;
    if (flags.seed) {
        config.master_seed = *flags.seed;
        config.simulation_seed.reset();
        config.sparsify_seed.reset();
        config.sampling_seed.reset();
    }
    if (flags.horizon) config.horizon = *flags.horizon;
    if (flags.secondary) {
        const bool fallback = config.secondary.naive_fallback;
        config.secondary = gpeval::SecondaryModelSpec::parse(*flags.secondary);
        config.secondary.naive_fallback = fallback;
    }
    if (flags.sparsity) config.sparsity = gpeval::parse_fractions(*flags.sparsity);
    if (flags.signed_mape) config.signed_mape = true;
    config.validate();

    const auto result = gpeval::run_experiment(config);
    gpeval::write_outputs(result);
    if (!flags.quiet) {
        gpeval::write_summary_table(std::cout, result);
        std::cout << "outputs written to " << config.out_dir.string() << '\n';
    }
    return 0;
}

int score(const ScoreFlags& flags, const RunFlags& common) {
    const auto recon = gpeval::read_series_csv(flags.reconstruction, "mean");
    const auto series = recon.to_time_series();
    const auto obs = gpeval::read_series_csv(flags.observations, "y").to_observations(series.grid);
    const auto spec = gpeval::SecondaryModelSpec::parse(common.secondary.value_or("ar:2"));
    gpeval::EvalOptions opts;
    opts.horizon = common.horizon.value_or(1);
    opts.signed_errors = common.signed_mape;
    const auto report = gpeval::mape_ar(series, obs, spec, opts);
    if (!common.quiet) {
        for (const auto& p : report.per_point) {
            std::cout << "k=" << p.k << " t=" << gpeval::format_double(p.time) << " y=" << gpeval::format_double(p.actual)
                      << " y_ar=" << gpeval::format_double(p.predicted) << " ape=" << gpeval::format_double(p.ape)
                      << (p.fallback_used ? " (fallback)" : "") << '\n';
        }
    }
    std::cout << "mape_ar=" << gpeval::format_double(report.mape_ar) << " n_points=" << report.per_point.size()
              << " n_skipped=" << report.skipped.size() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-process reconstruction of sparse irregular time series, scored by MAPE-AR"};
    app.set_version_flag("--version", gpeval::kVersion);

    RunFlags flags;
    app.add_option("--config", flags.config, "key = value experiment configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", flags.out, "output directory");
    app.add_option("--seed", flags.seed, "master seed deriving the simulation, sparsify and sampling seeds");
    app.add_option("--horizon", flags.horizon, "forecast horizon in grid steps")->check(CLI::PositiveNumber);
    app.add_option("--secondary", flags.secondary, "secondary model: ar:p | yw:p | sarima:p,d,q,P,D,Q,s");
    app.add_option("--sparsity", flags.sparsity, "comma-separated observation fractions, e.g. 0.03,0.05,0.07");
    app.add_flag("--signed-mape", flags.signed_mape, "use signed percent errors (y - y_ar) / y");
    app.add_flag("--quiet", flags.quiet, "suppress the summary table");

    ScoreFlags score_flags;
    auto* score_cmd = app.add_subcommand("score", "score an existing reconstruction against observations");
    score_cmd->add_option("--reconstruction", score_flags.reconstruction, "CSV with header t,mean,...")
        ->required()
        ->check(CLI::ExistingFile);
    score_cmd->add_option("--observations", score_flags.observations, "CSV with header t,y")
        ->required()
        ->check(CLI::ExistingFile);
    app.require_subcommand(0, 1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*score_cmd) return score(score_flags, flags);
        return run(flags);
    } catch (const gpeval::IoError& e) {
        std::cerr << "gpeval: I/O error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const gpeval::Error& e) {
        std::cerr << "gpeval: " << e.what() << '\n';
        return kExitModuleError;
    }
}
