#include "gpeval/errors.hpp"
#include "gpeval/series_io.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <sstream>

using namespace gpeval;

TEST_CASE("parse a two-point regular series") {
    const auto s = parse_series_csv("t,y\n0,1\n0.02,2");
    REQUIRE(s.times.size() == 2);
    CHECK(s.values == std::vector<double>{1, 2});
    REQUIRE(s.grid.has_value());
    CHECK(s.grid->dt == doctest::Approx(0.02));
    CHECK(s.grid->n == 2);
}

TEST_CASE("irregular times have no grid") {
    const auto s = parse_series_csv("t,y\n0,1\n0.1,2\n0.5,3\n");
    CHECK_FALSE(s.grid.has_value());
    CHECK_THROWS_AS((void)s.to_time_series(), ValidationError);
    const auto obs = s.to_observations(make_grid(0.0, 0.1, 10));
    CHECK(obs.indices == std::vector<std::size_t>{0, 1, 5});
    CHECK_THROWS_AS((void)s.to_observations(make_grid(0.0, 0.3, 10)), ValidationError);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS((void)parse_series_csv("t,y\n0,1\n0,2\n"), NonMonotonicTime);
    CHECK_THROWS_AS((void)parse_series_csv("t,y\n1,1\n0.5,2\n"), NonMonotonicTime);
    CHECK_THROWS_AS((void)parse_series_csv("time,y\n0,1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_series_csv(""), ParseError);
    try {
        (void)parse_series_csv("t,y\n0,1\n0.1,abc\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_series_csv("t,y\n0\n"), ParseError);
    CHECK_THROWS_AS((void)read_series_csv("/nonexistent/file.csv"), IoError);
}

TEST_CASE("value column selection and extra columns") {
    const auto s = parse_series_csv("t,mean,var,draw1\n0,1.5,0.1,2\n1,2.5,0.2,3\n", "mean");
    CHECK(s.values == std::vector<double>{1.5, 2.5});
    CHECK_THROWS_AS((void)parse_series_csv("t,mean\n0,1\n", "y"), ParseError);
}

TEST_CASE("write then read returns identical doubles") {
    using test::uniform;
    TimeSeries series{make_grid(0.0, 0.02, 351), {}};
    for (std::size_t i = 0; i < 351; ++i) series.values.push_back(uniform(-3.0, 3.0) * std::pow(10.0, uniform(-12, 12)));
    std::ostringstream out;
    write_series_csv(out, series);
    const auto back = parse_series_csv(out.str());
    CHECK(back.values == series.values);
    CHECK(back.times == series.grid.times());
    REQUIRE(back.grid.has_value());
    CHECK(back.grid->n == 351);
    CHECK(back.to_time_series().values == series.values);
}

TEST_CASE("reconstruction CSV layout") {
    const auto grid = make_grid(0.0, 0.5, 3);
    Eigen::VectorXd mean(3), var(3);
    mean << 1, 2, 3;
    var << 0, 0.25, 0.5;
    Eigen::MatrixXd draws(3, 2);
    draws << 1, 1.5, 2, 2.5, 3, 3.5;
    std::ostringstream out;
    write_reconstruction_csv(out, grid, mean, var, draws);
    CHECK(out.str() == "t,mean,var,draw1,draw2\n0,1,0,1,1.5\n0.5,2,0.25,2,2.5\n1,3,0.5,3,3.5\n");
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.02) == "0.02");
    CHECK(format_double(7.0) == "7");
    const double awkward = 0.1 + 0.2;
    CHECK(std::stod(format_double(awkward)) == awkward);
}
