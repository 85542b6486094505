#include "gpeval/nelder_mead.hpp"

#include "gpeval/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace gpeval {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, const Eigen::VectorXd& start,
                             const NelderMeadOptions& opts) {
    const double f_start = objective(start);
    if (!std::isfinite(f_start)) {
        throw NonFiniteObjective("objective is not finite at the start point");
    }
    const Eigen::Index k = start.size();
    if (k == 0) {
        return {start, f_start, 0, true};
    }

    auto eval = [&](const Eigen::VectorXd& x) {
        const double f = objective(x);
        return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
    };

    std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(k) + 1, start);
    std::vector<double> values(simplex.size(), f_start);
    for (Eigen::Index i = 0; i < k; ++i) {
        auto& vertex = simplex[static_cast<std::size_t>(i) + 1];
        vertex[i] += start[i] != 0.0 ? opts.initial_step * std::abs(start[i]) : opts.initial_step;
        values[static_cast<std::size_t>(i) + 1] = eval(vertex);
    }

    std::vector<std::size_t> order(simplex.size());
    NelderMeadResult result;
    std::size_t iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto& v : simplex) {
            diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
        }
        const double spread = values[worst] - values[best];
        if (diameter < opts.x_tol && std::isfinite(spread) && spread < opts.f_tol) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i != worst) centroid += simplex[i];
        }
        centroid /= static_cast<double>(k);

        const Eigen::VectorXd reflected = centroid + kReflect * (centroid - simplex[worst]);
        const double f_reflected = eval(reflected);

        if (f_reflected < values[best]) {
            const Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        // Outside contraction when the reflection improved on the worst, inside otherwise.
        const bool outside = f_reflected < values[worst];
        const Eigen::VectorXd contracted =
            outside ? Eigen::VectorXd(centroid + kContract * (reflected - centroid))
                    : Eigen::VectorXd(centroid + kContract * (simplex[worst] - centroid));
        const double f_contracted = eval(contracted);
        if (f_contracted < (outside ? f_reflected : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }

        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i == best) continue;
            simplex[i] = simplex[best] + kShrink * (simplex[i] - simplex[best]);
            values[i] = eval(simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(best_it - values.begin());
    result.iterations = iter;
    if (values[best] <= f_start) {
        result.argmin = simplex[best];
        result.minimum = values[best];
    } else {
        result.argmin = start;
        result.minimum = f_start;
    }
    return result;
}

}  // namespace gpeval
