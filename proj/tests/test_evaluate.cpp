#include "gpeval/errors.hpp"
#include "gpeval/evaluate.hpp"
#include "gpeval/experiment.hpp"
#include "gpeval/gpr.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace gpeval;

namespace {

TimeSeries sine_series(std::size_t n, double offset = 3.0) {
    TimeSeries s{make_grid(0.0, 0.02, n), {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(offset + std::sin(0.05 * static_cast<double>(i)));
    return s;
}

}  // namespace

TEST_CASE("mape examples") {
    const std::vector<double> a{1, 2}, p{1, 2};
    CHECK(mape(a, p) == 0.0);
    const std::vector<double> a1{2}, p1{1};
    CHECK(mape(a1, p1) == 0.5);
    const std::vector<double> a0{0}, p0{1};
    CHECK(mape(a0, p0, 1e-8) == doctest::Approx(1e8));
    const std::vector<double> a2{2, 4}, p2{3, 3};
    CHECK(signed_mape(a2, p2) == doctest::Approx((-0.5 + 0.25) / 2.0));
    CHECK(mape(a2, p2) == doctest::Approx((0.5 + 0.25) / 2.0));
    const std::vector<double> shorter{1};
    CHECK_THROWS_AS((void)mape(a, shorter), LengthMismatch);
    CHECK_THROWS_AS((void)mape(std::vector<double>{}, std::vector<double>{}), LengthMismatch);
}

TEST_CASE("secondary spec parsing") {
    const auto ar = SecondaryModelSpec::parse("ar:2");
    CHECK(ar.kind == SecondaryModelSpec::Kind::PureAr);
    CHECK(ar.order.p == 2);
    CHECK(ar.estimator == SecondaryModelSpec::ArEstimator::LeastSquares);
    CHECK(ar.to_string() == "ar:2");
    const auto yw = SecondaryModelSpec::parse("yw:3");
    CHECK(yw.estimator == SecondaryModelSpec::ArEstimator::YuleWalker);
    CHECK(yw.to_string() == "yw:3");
    const auto sarima = SecondaryModelSpec::parse("sarima:1,1,1,1,1,1,12");
    CHECK(sarima.kind == SecondaryModelSpec::Kind::SeasonalArima);
    CHECK(sarima.order.s == 12);
    CHECK(sarima.to_string() == "sarima:1,1,1,1,1,1,12");
    CHECK_THROWS_AS((void)SecondaryModelSpec::parse("ar"), ValidationError);
    CHECK_THROWS_AS((void)SecondaryModelSpec::parse("ar:0"), ValidationError);
    CHECK_THROWS_AS((void)SecondaryModelSpec::parse("ar:x"), ValidationError);
    CHECK_THROWS_AS((void)SecondaryModelSpec::parse("sarima:1,1,1,1,1,1,1"), ValidationError);
    CHECK_THROWS_AS((void)SecondaryModelSpec::parse("garch:1"), ValidationError);
}

TEST_CASE("constant series scores zero") {
    TimeSeries truth{make_grid(0.0, 0.02, 200), std::vector<double>(200, 4.0)};
    const auto obs = observe_at(truth, {10, 40, 90, 150, 199});
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(1));
    CHECK(report.mape_ar == 0.0);
    CHECK(report.per_point.size() == 4);
    const auto yw = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(1, SecondaryModelSpec::ArEstimator::YuleWalker));
    CHECK(yw.mape_ar == 0.0);
    for (const auto& p : yw.per_point) CHECK(p.fallback_used);  // zero variance -> naive forecast
}

TEST_CASE("per_point covers k = 2..m and the mean is exact") {
    const auto truth = sine_series(351);
    const auto obs = sparsify(truth, 0.05, 5, 9);
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2));
    REQUIRE(report.per_point.size() == obs.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < report.per_point.size(); ++i) {
        const auto& p = report.per_point[i];
        CHECK(p.k == i + 2);
        CHECK(p.grid_index == obs.indices[i + 1]);
        CHECK(p.actual == obs.values[i + 1]);
        CHECK(p.ape == doctest::Approx(std::abs(p.actual - p.predicted) / std::abs(p.actual)));
        sum += p.ape;
    }
    CHECK(std::abs(sum / static_cast<double>(report.per_point.size()) - report.mape_ar) <= 1e-12);
}

TEST_CASE("two observations give a single scored point") {
    const auto truth = sine_series(100);
    const auto obs = observe_at(truth, {5, 60});
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2));
    REQUIRE(report.per_point.size() == 1);
    CHECK(report.mape_ar == report.per_point[0].ape);
}

TEST_CASE("short prefixes fall back to the last value") {
    const auto truth = sine_series(100);
    const auto obs = observe_at(truth, {2, 8, 80});
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2));
    REQUIRE(report.per_point.size() == 2);
    CHECK(report.per_point[0].fallback_used);
    CHECK(report.per_point[0].predicted == truth.values[7]);
    CHECK_FALSE(report.per_point[1].fallback_used);

    auto strict = SecondaryModelSpec::pure_ar(2);
    strict.naive_fallback = false;
    const auto skipped = mape_ar(truth, obs, strict);
    CHECK(skipped.per_point.size() == 1);
    CHECK(skipped.skipped.size() == 1);
}

TEST_CASE("observations without a prefix are skipped") {
    const auto truth = sine_series(100);
    const auto obs = observe_at(truth, {0, 3, 50});
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(1), EvalOptions{.horizon = 4});
    CHECK(report.skipped.size() == 1);
    CHECK(report.skipped[0].k == 2);
    CHECK(report.per_point.size() == 1);
    const auto early = observe_at(truth, {0, 2});
    CHECK_THROWS_AS((void)mape_ar(truth, early, SecondaryModelSpec::pure_ar(1), EvalOptions{.horizon = 4}),
                    NoEvaluablePoints);
}

TEST_CASE("horizon h lands the h-th forecast on the observation") {
    const auto truth = sine_series(200);
    const auto obs = observe_at(truth, {20, 120});
    const std::span<const double> prefix(truth.values.data(), 118);
    const auto yw = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2, SecondaryModelSpec::ArEstimator::YuleWalker),
                            EvalOptions{.horizon = 3});
    CHECK(yw.per_point[0].predicted == forecast(fit_ar_yule_walker(prefix, 2), 3)[2]);
    const auto ls = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2), EvalOptions{.horizon = 3});
    CHECK(ls.per_point[0].predicted == forecast(fit_arima_css(prefix, ArimaOrder{.p = 2}), 3)[2]);
}

TEST_CASE("the epsilon guard flags near-zero observations") {
    TimeSeries truth = sine_series(150, 0.0);
    truth.values[100] = 0.0;
    const auto obs = observe_at(truth, {30, 100});
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(1));
    CHECK(report.per_point[0].epsilon_guard);
    CHECK(report.per_point[0].ape == doctest::Approx(std::abs(report.per_point[0].predicted) / 1e-8));
}

TEST_CASE("signed errors keep their sign") {
    const auto truth = sine_series(351);
    const auto obs = sparsify(truth, 0.05, 5, 4);
    const auto plain = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2));
    const auto with_sign = mape_ar(truth, obs, SecondaryModelSpec::pure_ar(2), EvalOptions{.signed_errors = true});
    for (std::size_t i = 0; i < plain.per_point.size(); ++i) {
        CHECK(std::abs(with_sign.per_point[i].ape) == doctest::Approx(plain.per_point[i].ape));
        const double raw = (with_sign.per_point[i].actual - with_sign.per_point[i].predicted) / with_sign.per_point[i].actual;
        CHECK(with_sign.per_point[i].ape == doctest::Approx(raw));
    }
}

TEST_CASE("no look-ahead: values after the cutoff do not change forecasts") {
    const auto truth = sine_series(351);
    const auto obs = sparsify(truth, 0.07, 5, 12);
    const auto spec = SecondaryModelSpec::pure_ar(2);
    const auto base = mape_ar(truth, obs, spec);
    for (std::size_t i = 0; i < base.per_point.size(); ++i) {
        const std::size_t cutoff = base.per_point[i].grid_index - 1;
        TimeSeries mutated = truth;
        for (std::size_t j = cutoff + 1; j < mutated.values.size(); ++j) mutated.values[j] += 100.0 * std::cos(static_cast<double>(j));
        const auto again = mape_ar(mutated, obs, spec);
        CHECK(again.per_point[i].predicted == base.per_point[i].predicted);
    }
}

TEST_CASE("MAPE-AR is scale free for pure AR models") {
    const auto truth = sine_series(351);
    const auto obs = sparsify(truth, 0.05, 5, 8);
    const double c = 37.5;
    TimeSeries scaled = truth;
    for (auto& v : scaled.values) v *= c;
    Observations scaled_obs = obs;
    for (auto& v : scaled_obs.values) v *= c;
    const auto spec = SecondaryModelSpec::pure_ar(2, SecondaryModelSpec::ArEstimator::YuleWalker);
    const auto a = mape_ar(truth, obs, spec);
    const auto b = mape_ar(scaled, scaled_obs, spec);
    CHECK(b.mape_ar == doctest::Approx(a.mape_ar).epsilon(1e-9));
}

TEST_CASE("seasonal ARIMA secondary runs with fallback on short prefixes") {
    const auto truth = sine_series(351);
    const auto obs = sparsify(truth, 0.05, 5, 2);
    const auto report = mape_ar(truth, obs, SecondaryModelSpec::parse("sarima:1,1,1,1,1,1,12"));
    CHECK(report.per_point.size() == obs.size() - 1);
    bool any_fitted = false;
    for (const auto& p : report.per_point) {
        if (p.grid_index <= 45) CHECK(p.fallback_used);  // 13 lost to differencing, 8 * 4 needed
        any_fitted = any_fitted || !p.fallback_used;
        CHECK(std::isfinite(p.predicted));
    }
    CHECK(any_fitted);
    CHECK(report.mape_ar < 0.05);
}

TEST_CASE("GP reconstruction beats a pure-noise reconstruction on average") {
    const auto kernel = KernelParams::univariate(1.0, 1.0, 2.0, 1.0);
    const auto grid = make_grid(0.0, 0.02, 351);
    double gp_total = 0.0, noise_total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto truth = sample_gp_prior(kernel, grid, 0.0, 1000 + seed, 1).front();
        const auto obs = sparsify(truth, 0.05, 5, 2000 + seed);
        const auto mean = GPPosterior::fit(obs, kernel, 1e-6).predict_mean(grid.times());
        const TimeSeries recon{grid, std::vector<double>(mean.data(), mean.data() + mean.size())};
        gp_total += mape_ar(recon, obs, SecondaryModelSpec::pure_ar(2)).mape_ar;
        noise_total += mape_ar(pure_noise_reconstruction(grid, 1.0, 3000 + seed), obs, SecondaryModelSpec::pure_ar(2)).mape_ar;
    }
    CHECK(gp_total <= noise_total);
}
