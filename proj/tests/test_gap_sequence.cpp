#include <doctest.h>

#include <cmath>
#include <vector>

#include "phidim/errors.hpp"
#include "phidim/gap_sequence.hpp"
#include "phidim/level_stats.hpp"

using namespace phidim;

TEST_CASE("explicit prefix: a_j = 2^{-j} gives s_1 = 1/4") {
    // s_1 = (1/2) * sum_{j >= 2} 2^{-j} = (1/2)(1/2) = 1/4.
    std::vector<double> gaps;
    for (int j = 1; j <= 50; ++j)
        gaps.push_back(std::pow(2.0, -j));
    auto seq = GapSequence::explicit_prefix(gaps, 1.0);
    auto stats = level_sums(seq, 4);
    CHECK(stats.log_s[1] == doctest::Approx(std::log(0.25)).epsilon(1e-12));
    // s_2 = (1/4) * sum_{j >= 4} 2^{-j} = (1/4)(1/8) = 1/32.
    CHECK(stats.log_s[2] == doctest::Approx(std::log(1.0 / 32)).epsilon(1e-12));
}

TEST_CASE("explicit prefix rejects increasing gaps") {
    CHECK_THROWS_AS(GapSequence::explicit_prefix({0.25, 0.5}, 1.0), HypothesisViolated);
}

TEST_CASE("tail sums agree with direct summation") {
    std::vector<double> gaps;
    double total = 0;
    for (int j = 1; j <= 64; ++j) {
        gaps.push_back(1.0 / (j * j + 10.0));
        total += gaps.back();
    }
    auto seq = GapSequence::explicit_prefix(gaps, total);
    for (int k = 1; k <= 64; k += 7) {
        double want = 0;
        for (int j = k; j <= 64; ++j)
            want += 1.0 / (j * j + 10.0);
        CHECK(seq.tail_sum(k) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(seq.tail_sum(66), InsufficientTail);
}

TEST_CASE("block constant indexing matches a_{2^m + t} = alpha_m") {
    std::vector<double> log_alpha = {std::log(0.2), std::log(0.05), std::log(0.01)};
    auto seq = GapSequence::block_constant(log_alpha, std::nullopt);
    CHECK(seq.gap(1) == doctest::Approx(0.2));
    CHECK(seq.gap(2) == doctest::Approx(0.05));
    CHECK(seq.gap(3) == doctest::Approx(0.05));
    CHECK(seq.gap(4) == doctest::Approx(0.01));
    CHECK(seq.gap(7) == doctest::Approx(0.01));
    CHECK_THROWS_AS(seq.gap(8), InsufficientTail);
}

TEST_CASE("block constant tail extrapolates geometrically") {
    std::vector<double> log_alpha = {std::log(0.2), std::log(0.05)};
    auto seq = GapSequence::block_constant(log_alpha, std::log(0.25));
    CHECK(seq.gap(4) == doctest::Approx(0.05 * 0.25));
    CHECK(seq.gap(9) == doctest::Approx(0.05 * 0.25 * 0.25));
    CHECK_THROWS_AS(GapSequence::block_constant(log_alpha, std::log(0.6)),
                    ConfigError);
}

TEST_CASE("central Cantor ratios reproduce their own gaps") {
    // Ratios r_k = s_k / s_{k-1}; the level-k construction gap is
    // s_{k-1} - 2 s_k, constant across the 2^{k-1} gaps of that step.
    RatioSchedule sched;
    sched.log_r = {std::log(0.3), std::log(0.4), std::log(0.25), std::log(0.35)};
    auto stats = level_sums_from_ratios(sched);
    auto seq = GapSequence::from_central_ratios(stats);
    double s0 = 1.0, s1 = 0.3, s2 = 0.12, s3 = 0.03, s4 = 0.0105;
    CHECK(seq.gap(1) == doctest::Approx(s0 - 2 * s1).epsilon(1e-12));
    CHECK(seq.gap(2) == doctest::Approx(s1 - 2 * s2).epsilon(1e-12));
    CHECK(seq.gap(3) == doctest::Approx(s1 - 2 * s2).epsilon(1e-12));
    CHECK(seq.gap(4) == doctest::Approx(s2 - 2 * s3).epsilon(1e-12));
    CHECK(seq.gap(8) == doctest::Approx(s3 - 2 * s4).epsilon(1e-12));
    CHECK(seq.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("central ratios above one half leave no gap and are rejected") {
    RatioSchedule sched;
    sched.log_r = {std::log(0.3), std::log(0.4)};
    auto stats = level_sums_from_ratios(sched);
    // Append a fake level raising s: gap would be negative.
    stats.log_s.push_back(stats.log_s.back() + std::log(0.51));
    CHECK_THROWS(GapSequence::from_central_ratios(stats));
}

TEST_CASE("observed kappa bounds a_n / a_{2n}") {
    // Doubling-comparable sequence: a_n = n^{-2} has a_n / a_{2n} = 4.
    std::vector<double> gaps;
    double total = 0;
    for (int j = 1; j <= 256; ++j) {
        gaps.push_back(1.0 / (static_cast<double>(j) * j));
        total += gaps.back();
    }
    auto seq = GapSequence::explicit_prefix(gaps, total + 1.0 / 255.0);
    double kappa = seq.observed_kappa(128);
    CHECK(kappa == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("snap to blocks samples an explicit prefix at dyadic leaders") {
    // a_j = 2^{-j} for j = 1..15 snaps to blocks alpha_m = a_{2^m}.
    std::vector<double> gaps;
    for (int j = 1; j <= 15; ++j)
        gaps.push_back(std::pow(2.0, -j));
    auto seq = GapSequence::explicit_prefix(gaps, 1.0);
    auto snapped = seq.snap_to_blocks();
    CHECK(snapped.is_block_constant());
    REQUIRE(snapped.blocks() == 4);
    CHECK(snapped.log_block(0) == doctest::Approx(std::log(0.5)));
    CHECK(snapped.log_block(3) == doctest::Approx(-8.0 * std::log(2.0)));
}
