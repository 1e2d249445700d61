#include <doctest.h>

#include <cmath>
#include <vector>

#include "phidim/dimension_function.hpp"
#include "phidim/errors.hpp"

using namespace phidim;

TEST_CASE("constant function returns its value everywhere") {
    auto phi = DimensionFunction::constant(0.5);
    CHECK(phi(0.9) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi(1e-12) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi.at_log(-300.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(DimensionFunction::constant(-0.1), ConfigError);
}

TEST_CASE("reciprocal log matches c / |log x|") {
    auto phi = DimensionFunction::reciprocal_log(1.0);
    // x = e^{-10}: value 1/10
    CHECK(phi.at_log(-10.0) == doctest::Approx(0.1).epsilon(1e-14));
    auto phi2 = DimensionFunction::reciprocal_log(3.0);
    CHECK(phi2.at_log(-6.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(DimensionFunction::reciprocal_log(0.0), ConfigError);
}

TEST_CASE("power log matches |log x|^{p-1}") {
    auto phi = DimensionFunction::power_log(0.5);
    CHECK(phi.at_log(-16.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(phi.at_log(-100.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(DimensionFunction::power_log(1.0), ConfigError);
    CHECK_THROWS_AS(DimensionFunction::power_log(0.0), ConfigError);
}

TEST_CASE("log log matches log|log x| / |log x| for small x") {
    auto phi = DimensionFunction::log_log();
    double L = 50.0;
    CHECK(phi.at_log(-L) == doctest::Approx(std::log(L) / L).epsilon(1e-14));
    // Below the maximum at L = e the value is continued flat, so the
    // defining monotonicity of x^{1 + phi(x)} is preserved.
    CHECK(phi.at_log(-1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(phi.at_log(-0.01) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("table lookup interpolates linearly in log x") {
    std::vector<double> lx = {-1.0, -2.0, -4.0};
    std::vector<double> val = {0.5, 0.4, 0.2};
    auto phi = DimensionFunction::table(lx, val, DimensionFunction::Interp::LinearInLog);
    CHECK(phi.at_log(-1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(phi.at_log(-2.0) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(phi.at_log(-3.0) == doctest::Approx(0.3).epsilon(1e-13));
    // Clamped outside the grid.
    CHECK(phi.at_log(-0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(phi.at_log(-9.0) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("piecewise on levels is right-continuous step data") {
    // Thresholds are log s_n values, decreasing; value j applies on
    // [threshold_j, threshold_{j-1}).
    std::vector<double> lt = {-1.0, -2.5, -7.0};
    std::vector<double> val = {0.9, 0.7, 0.3};
    auto phi = DimensionFunction::piecewise_on_levels(lt, val);
    CHECK(phi.at_log(-1.0) == doctest::Approx(0.9));
    CHECK(phi.at_log(-2.0) == doctest::Approx(0.9));
    CHECK(phi.at_log(-2.5) == doctest::Approx(0.7));
    CHECK(phi.at_log(-6.9) == doctest::Approx(0.7));
    CHECK(phi.at_log(-7.0) == doctest::Approx(0.3));
    CHECK(phi.at_log(-40.0) == doctest::Approx(0.3));
}

TEST_CASE("scaled wrapper multiplies values") {
    auto phi = DimensionFunction::power_log(0.5).scaled(0.4);
    CHECK(phi.at_log(-16.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(DimensionFunction::constant(1.0).scaled(0.0), ConfigError);
    CHECK_THROWS_AS(DimensionFunction::constant(1.0).scaled(1.5), ConfigError);
}

TEST_CASE("validation accepts admissible functions on a sample grid") {
    std::vector<double> grid;
    for (int n = 1; n <= 400; ++n)
        grid.push_back(-0.3 * n);
    for (auto phi : {DimensionFunction::constant(0.0),
                     DimensionFunction::constant(1.0),
                     DimensionFunction::reciprocal_log(1.0),
                     DimensionFunction::power_log(0.5),
                     DimensionFunction::log_log()}) {
        auto issues = validate_dimension_function(phi, grid);
        CHECK_MESSAGE(issues.empty(), phi.label());
    }
}

TEST_CASE("validation flags x^{1+phi} increasing as x decreases") {
    // Values falling too fast along a decreasing grid break the defining
    // monotonicity: h(x) = (1 + phi(x)) log x must not increase with depth.
    std::vector<double> lx = {-1.0, -2.0, -3.0};
    std::vector<double> val = {5.0, 5.0, 0.1};
    auto bad = DimensionFunction::table(lx, val, DimensionFunction::Interp::StepLeft);
    auto issues = validate_dimension_function(bad, lx);
    REQUIRE_FALSE(issues.empty());
    CHECK(issues.front().log_x == doctest::Approx(-3.0));
}
