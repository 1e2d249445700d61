#include <doctest.h>

#include <cmath>
#include <vector>

#include "phidim/dimension_function.hpp"
#include "phidim/errors.hpp"
#include "phidim/gap_sequence.hpp"
#include "phidim/level_stats.hpp"

using namespace phidim;

namespace {

const double kLog3 = std::log(3.0);

// s_n for the middle-third set is exactly 3^{-n}: level n has 2^n intervals
// of length 3^{-n}, and the tail-sum identity reproduces it.
LevelStats middle_third_levels(int levels) {
    RatioSchedule sched;
    sched.log_r.assign(static_cast<std::size_t>(levels), -kLog3);
    return level_sums_from_ratios(sched);
}

} // namespace

TEST_CASE("middle-third level sums are powers of 1/3") {
    auto stats = middle_third_levels(64);
    REQUIRE(stats.max_level() == 64);
    CHECK(stats.log_s[0] == doctest::Approx(0.0).epsilon(1e-15));
    for (int n = 1; n <= 64; ++n)
        CHECK(stats.log_s[static_cast<std::size_t>(n)] ==
              doctest::Approx(-kLog3 * n).epsilon(1e-13));
}

TEST_CASE("gap-sequence and ratio paths agree on the middle-third set") {
    // Gap lengths 3^{-n} on dyadic blocks, continued geometrically so the
    // level tail sums are exact, total mass 1.
    std::vector<double> log_alpha;
    for (int m = 1; m <= 40; ++m)
        log_alpha.push_back(-kLog3 * m);
    auto gaps = GapSequence::block_constant(log_alpha, -kLog3);
    auto from_gaps = level_sums(gaps, 39);
    auto from_ratios = middle_third_levels(39);
    for (int n = 0; n <= 39; ++n)
        CHECK(from_gaps.log_s[static_cast<std::size_t>(n)] ==
              doctest::Approx(from_ratios.log_s[static_cast<std::size_t>(n)])
                  .epsilon(1e-12));
}

TEST_CASE("ratio schedule rejects ratios at or above one half") {
    RatioSchedule sched;
    sched.log_r = {std::log(0.5)};
    CHECK_THROWS_AS(level_sums_from_ratios(sched), RatioOutOfRange);
    sched.log_r = {std::log(0.499), std::log(0.7)};
    CHECK_THROWS_AS(level_sums_from_ratios(sched), RatioOutOfRange);
}

TEST_CASE("level-comparable bounds bracket every ratio") {
    RatioSchedule sched;
    sched.log_r = {std::log(0.3), std::log(0.25), std::log(0.45), std::log(0.3)};
    auto stats = level_sums_from_ratios(sched);
    auto bounds = level_comparable_bounds(stats);
    CHECK(bounds.tau == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(bounds.lambda == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("depth is zero everywhere when phi is zero") {
    auto stats = middle_third_levels(100);
    auto depth = depth_table(stats, DimensionFunction::constant(0.0), 1, 99);
    for (std::int64_t n = 1; n <= 99; ++n)
        CHECK(depth.at(n) == 0);
    CHECK(depth.unresolved_count == 0);
}

TEST_CASE("depth for phi = 1 on the middle-third set is n") {
    // Need log s_{n+j} <= 2 log s_n, i.e. 3^{-(n+j)} <= 9^{-n}, so j = n.
    auto stats = middle_third_levels(128);
    auto depth = depth_table(stats, DimensionFunction::constant(1.0), 1, 60);
    for (std::int64_t n = 1; n <= 60; ++n)
        CHECK(depth.at(n) == n);
}

TEST_CASE("depth for phi(x) = 1/|log x| on the middle-third set is one") {
    // (1 + phi(s_n)) log s_n = log s_n - 1, and one extra level drops the
    // level sum by log 3 > 1.
    auto stats = middle_third_levels(64);
    auto depth = depth_table(stats, DimensionFunction::reciprocal_log(1.0), 1, 60);
    for (std::int64_t n = 1; n <= 60; ++n)
        CHECK(depth.at(n) == 1);
}

TEST_CASE("depth ties resolve to the shallower level") {
    // phi(s_n) chosen so the target lands exactly on log s_{n+1}: the
    // relative tolerance must accept the boundary level.
    auto stats = middle_third_levels(32);
    // target = 2 log s_n = log s_{2n} exactly; at n = 4 this is level 8.
    auto depth = depth_table(stats, DimensionFunction::constant(1.0), 4, 4);
    CHECK(depth.at(4) == 4);
}

TEST_CASE("unresolved depth is flagged, not invented") {
    auto stats = middle_third_levels(16);
    // phi = 3 needs log s_{n+j} <= 4 log s_n, i.e. j = 3n; from n = 6 that
    // exceeds the known levels.
    auto depth = depth_table(stats, DimensionFunction::constant(3.0), 1, 10);
    for (std::int64_t n = 1; n <= 4; ++n)
        CHECK(depth.at(n) == 3 * n);
    for (std::int64_t n = 6; n <= 10; ++n)
        CHECK(depth.at(n) == kDepthUnresolved);
    CHECK(depth.unresolved_count >= 5);
}

TEST_CASE("depth satisfies the shift inequality n + m + phi(n+m) >= n + phi(n)") {
    // Holds for any admissible phi because the depth target is monotone.
    RatioSchedule sched;
    for (int i = 0; i < 200; ++i)
        sched.log_r.push_back(std::log(0.2 + 0.25 * ((i * 7) % 10) / 10.0));
    auto stats = level_sums_from_ratios(sched);
    auto phi = DimensionFunction::power_log(0.5);
    auto depth = depth_table(stats, phi, 1, 60);
    for (std::int64_t n = 1; n <= 40; ++n) {
        if (depth.at(n) == kDepthUnresolved)
            continue;
        for (std::int64_t m = 1; n + m <= 60; ++m) {
            if (depth.at(n + m) == kDepthUnresolved)
                continue;
            CHECK(n + m + depth.at(n + m) >= n + depth.at(n));
        }
    }
}
