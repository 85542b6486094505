#include "gpeval/config.hpp"

#include "gpeval/errors.hpp"
#include "gpeval/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gpeval {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size() || !std::isfinite(out)) {
        throw ValidationError(key + ": '" + value + "' is not a finite number");
    }
    return out;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw ValidationError(key + ": '" + value + "' is not a nonnegative integer");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ValidationError(key + ": '" + value + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

}  // namespace

ProcessSpec ou_process() {
    return {"ou", KernelParams::univariate(1.0, 1.0, 2.0, 1.0)};
}

ProcessSpec fractional_process() {
    return {"fractional", KernelParams::univariate(1.0, 1.0, 2.0, 1.3)};
}

StageSeeds ExperimentConfig::seeds() const {
    return StageSeeds{simulation_seed.value_or(derive_seed(master_seed, {1})),
                      sparsify_seed.value_or(derive_seed(master_seed, {2})),
                      sampling_seed.value_or(derive_seed(master_seed, {3}))};
}

std::vector<double> parse_fractions(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(to_double("sparsity", item));
    if (out.empty()) throw ValidationError("sparsity: at least one fraction is required");
    return out;
}

void ExperimentConfig::validate() const {
    if (processes.empty()) throw ValidationError("process: at least one process is required");
    for (const auto& proc : processes) {
        try {
            validate_params(proc.kernel);
        } catch (const DomainError& e) {
            throw ValidationError("kernel of process '" + proc.name + "': " + e.what());
        }
        if (proc.kernel.dim() != 1) throw ValidationError("kernel of process '" + proc.name + "' must be 1-D");
    }
    try {
        (void)make_grid(grid.t0, grid.dt, grid.n);
    } catch (const DomainError& e) {
        throw ValidationError(std::string("grid: ") + e.what());
    }
    if (sparsity.empty()) throw ValidationError("sparsity: at least one fraction is required");
    if (min_gap < 1) throw ValidationError("min_gap: must be >= 1");
    for (double f : sparsity) {
        if (!(f > 0.0 && f < 1.0)) throw ValidationError("sparsity: " + std::to_string(f) + " is outside (0, 1)");
        const std::size_t m = sparse_count(f, grid.n);
        if (m < 2 || (m - 1) * min_gap > grid.n - 1) {
            throw ValidationError("sparsity: fraction " + std::to_string(f) + " cannot place " + std::to_string(m) +
                                  " points " + std::to_string(min_gap) + " steps apart");
        }
    }
    if (!(noise_sd >= 0.0)) throw ValidationError("noise_sd: must be >= 0");
    if (!(gp_noise2 >= 0.0)) throw ValidationError("gp_noise2: must be >= 0");
    if (horizon < 1) throw ValidationError("horizon: must be >= 1");
    if (!(epsilon > 0.0)) throw ValidationError("epsilon: must be > 0");
    if (posterior_draws < 1) throw ValidationError("draws: must be >= 1");
    secondary.validate();
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> entries;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": missing key");
        if (!entries.emplace(key, value).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }

    KernelParams custom = KernelParams::univariate(1.0, 1.0, 2.0, 1.0);
    bool custom_kernel_keys = false;
    std::string process = "ou,fractional";

    for (const auto& [key, value] : entries) {
        if (key == "process") {
            process = value;
        } else if (key == "sigma2") {
            custom.sigma2 = to_double(key, value);
            custom_kernel_keys = true;
        } else if (key == "beta") {
            custom.beta = to_double(key, value);
            custom_kernel_keys = true;
        } else if (key == "lengthscale") {
            custom.lengthscales = {to_double(key, value)};
            custom_kernel_keys = true;
        } else if (key == "alpha") {
            custom.exponents = {to_double(key, value)};
            custom_kernel_keys = true;
        } else if (key == "t0") {
            cfg.grid.t0 = to_double(key, value);
        } else if (key == "dt") {
            cfg.grid.dt = to_double(key, value);
        } else if (key == "n") {
            cfg.grid.n = to_count(key, value);
        } else if (key == "sparsity") {
            cfg.sparsity = parse_fractions(value);
        } else if (key == "min_gap") {
            cfg.min_gap = to_count(key, value);
        } else if (key == "noise_sd") {
            cfg.noise_sd = to_double(key, value);
        } else if (key == "gp_noise2") {
            cfg.gp_noise2 = to_double(key, value);
        } else if (key == "horizon") {
            cfg.horizon = to_count(key, value);
        } else if (key == "secondary") {
            cfg.secondary = SecondaryModelSpec::parse(value);
        } else if (key == "naive_fallback") {
            cfg.secondary.naive_fallback = to_bool(key, value);
        } else if (key == "signed_mape") {
            cfg.signed_mape = to_bool(key, value);
        } else if (key == "epsilon") {
            cfg.epsilon = to_double(key, value);
        } else if (key == "draws") {
            cfg.posterior_draws = to_count(key, value);
        } else if (key == "seed") {
            cfg.master_seed = to_count(key, value);
        } else if (key == "seed.simulation") {
            cfg.simulation_seed = to_count(key, value);
        } else if (key == "seed.sparsify") {
            cfg.sparsify_seed = to_count(key, value);
        } else if (key == "seed.sampling") {
            cfg.sampling_seed = to_count(key, value);
        } else if (key == "out") {
            cfg.out_dir = value;
        } else {
            throw ValidationError(key + ": unknown configuration key");
        }
    }
    // naive_fallback may precede secondary in the map order; reapply.
    if (auto it = entries.find("naive_fallback"); it != entries.end()) {
        cfg.secondary.naive_fallback = to_bool(it->first, it->second);
    }

    if (custom_kernel_keys && !entries.contains("process")) {
        process = "custom";
    }
    cfg.processes.clear();
    for (const auto& name : split_list(process)) {
        if (name == "ou") {
            cfg.processes.push_back(ou_process());
        } else if (name == "fractional") {
            cfg.processes.push_back(fractional_process());
        } else if (name == "custom") {
            try {
                validate_params(custom);
            } catch (const DomainError& e) {
                const std::string what = e.what();
                const std::string field = what.rfind("exponents", 0) == 0      ? "alpha"
                                          : what.rfind("lengthscales", 0) == 0 ? "lengthscale"
                                          : what.rfind("sigma2", 0) == 0       ? "sigma2"
                                                                               : "beta";
                throw ValidationError(field + " (" + what + ")");
            }
            cfg.processes.push_back({"custom", custom});
        } else {
            throw ValidationError("process: unknown process '" + name + "'");
        }
    }
    if (custom_kernel_keys && std::none_of(cfg.processes.begin(), cfg.processes.end(),
                                           [](const ProcessSpec& p) { return p.name == "custom"; })) {
        throw ValidationError("process: kernel keys (sigma2, beta, lengthscale, alpha) need process = custom");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace gpeval
