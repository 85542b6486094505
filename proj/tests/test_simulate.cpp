#include "gpeval/errors.hpp"
#include "gpeval/simulate.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace gpeval;

namespace {

const KernelParams kOu = KernelParams::univariate(1.0, 1.0, 2.0, 1.0);

TimeSeries ramp(std::size_t n) {
    TimeSeries s{make_grid(0.0, 0.02, n), {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(static_cast<double>(i) * 0.5 - 3.0);
    return s;
}

}  // namespace

TEST_CASE("make_grid") {
    const auto g = make_grid(0.0, 0.02, 351);
    CHECK(g.n == 351);
    CHECK(g.time(350) == doctest::Approx(7.0).epsilon(1e-14));
    const auto two = make_grid(0.0, 1.0, 2).times();
    CHECK(two == std::vector<double>{0.0, 1.0});
    CHECK(make_grid(5.0, 0.5, 3).times() == std::vector<double>{5.0, 5.5, 6.0});
    CHECK_THROWS_AS((void)make_grid(0.0, 0.0, 10), DomainError);
    CHECK_THROWS_AS((void)make_grid(0.0, -0.1, 10), DomainError);
    CHECK_THROWS_AS((void)make_grid(0.0, 0.1, 1), DomainError);
}

TEST_CASE("prior sampling is deterministic given the seed") {
    const auto grid = make_grid(0.0, 0.02, 351);
    const auto a = sample_gp_prior(kOu, grid, 0.1, 99, 3);
    const auto b = sample_gp_prior(kOu, grid, 0.1, 99, 3);
    const auto c = sample_gp_prior(kOu, grid, 0.1, 100, 3);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a[i].values == b[i].values);
    CHECK(a[0].values != c[0].values);
    CHECK(a[0].values != a[1].values);
}

TEST_CASE("prior sample statistics match the kernel") {
    const auto grid = make_grid(0.0, 0.02, 351);
    const std::size_t draws = 2000;
    const auto paths = sample_gp_prior(kOu, grid, 0.0, 7, draws);
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(draws), 351);
    for (std::size_t d = 0; d < draws; ++d) {
        for (std::size_t i = 0; i < 351; ++i) {
            samples(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)) = paths[d].values[i];
        }
    }
    const Eigen::RowVectorXd mean = samples.colwise().mean();
    const Eigen::MatrixXd centred = samples.rowwise() - mean;
    const Eigen::MatrixXd cov = centred.transpose() * centred / static_cast<double>(draws - 1);

    for (Eigen::Index i = 0; i < 351; ++i) {
        CHECK(cov(i, i) >= 0.9);
        CHECK(cov(i, i) <= 1.1);
    }
    const double expected = std::exp(-0.01);
    for (Eigen::Index i = 0; i + 1 < 351; i += 25) {
        const double corr = cov(i, i + 1) / std::sqrt(cov(i, i) * cov(i + 1, i + 1));
        CHECK(std::abs(corr - expected) <= 0.05);
    }
    const auto times = grid.times();
    const auto K = kernel_matrix(kOu, times, times);
    CHECK((cov - K).cwiseAbs().maxCoeff() <= 0.1);
}

TEST_CASE("noise injection adds independent variance") {
    const auto grid = make_grid(0.0, 0.02, 60);
    const auto clean = sample_gp_prior(kOu, grid, 0.0, 5, 1);
    const auto noisy = sample_gp_prior(kOu, grid, 0.5, 5, 1);
    // Same latent draw z, so the difference is pure noise of sd 0.5.
    double ss = 0.0;
    for (std::size_t i = 0; i < 60; ++i) {
        const double diff = noisy[0].values[i] - clean[0].values[i];
        ss += diff * diff;
    }
    CHECK(std::sqrt(ss / 60.0) == doctest::Approx(0.5).epsilon(0.3));
}

TEST_CASE("prior sampling validates its inputs") {
    const auto grid = make_grid(0.0, 0.02, 10);
    CHECK_THROWS_AS((void)sample_gp_prior(kOu, grid, -1.0, 1, 1), DomainError);
    CHECK_THROWS_AS((void)sample_gp_prior(kOu, grid, 0.0, 1, 0), DomainError);
    CHECK_THROWS_AS((void)sample_gp_prior(KernelParams::univariate(1, 1, 1, 3.0), grid, 0.0, 1, 1), DomainError);
    CHECK_THROWS_AS((void)sample_gp_prior(KernelParams{1, 1, {1, 1}, {1, 1}}, grid, 0.0, 1, 1), DimensionMismatch);
}

TEST_CASE("sparse_count rounds half up") {
    CHECK(sparse_count(0.03, 351) == 11);
    CHECK(sparse_count(0.05, 351) == 18);
    CHECK(sparse_count(0.07, 351) == 25);
    CHECK(sparse_count(0.5, 5) == 3);
}

TEST_CASE("sparsify respects count, gap and subset properties") {
    const auto series = ramp(351);
    for (double fraction : {0.03, 0.05, 0.07}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto obs = sparsify(series, fraction, 5, seed);
            REQUIRE(obs.size() == sparse_count(fraction, 351));
            for (std::size_t j = 0; j < obs.size(); ++j) {
                CHECK(obs.values[j] == series.values[obs.indices[j]]);
                CHECK(obs.times[j] == series.grid.time(obs.indices[j]));
                CHECK(obs.indices[j] < 351);
                if (j > 0) CHECK(obs.indices[j] - obs.indices[j - 1] >= 5);
            }
        }
    }
    const auto a = sparsify(series, 0.07, 5, 3);
    const auto b = sparsify(series, 0.07, 5, 3);
    CHECK(a.indices == b.indices);
}

TEST_CASE("sparsify rejects infeasible requests") {
    CHECK_THROWS_AS((void)sparsify(ramp(10), 0.9, 5, 1), InfeasibleSparsity);
    CHECK_THROWS_AS((void)sparsify(ramp(351), 0.001, 5, 1), InfeasibleSparsity);
    CHECK_THROWS_AS((void)sparsify(ramp(351), 0.0, 5, 1), DomainError);
    // Exactly tight: 3 points, gap 4, on 9 slots -> {0, 4, 8} only.
    const auto tight = sparsify(ramp(9), 1.0 / 3.0, 4, 11);
    CHECK(tight.indices == std::vector<std::size_t>{0, 4, 8});
}

TEST_CASE("sparsify is uniform over gap-constrained index sets") {
    // n = 7, m = 2, gap 3: valid pairs (i, j) with j - i >= 3 number C(7 - 2, 2) = 10.
    const auto series = ramp(7);
    std::map<std::pair<std::size_t, std::size_t>, int> counts;
    const int trials = 20000;
    for (int s = 0; s < trials; ++s) {
        const auto obs = sparsify(series, 2.0 / 7.0, 3, static_cast<std::uint64_t>(s));
        counts[{obs.indices[0], obs.indices[1]}]++;
    }
    CHECK(counts.size() == 10);
    for (const auto& [pair, count] : counts) {
        CHECK(pair.second - pair.first >= 3);
        CHECK(std::abs(count - trials / 10) < 200);  // ~4.7 standard deviations
    }
}
