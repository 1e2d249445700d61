#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "phidim/constructions.hpp"
#include "phidim/errors.hpp"
#include "phidim/estimators.hpp"
#include "phidim/gap_sequence.hpp"
#include "phidim/level_stats.hpp"

using namespace phidim;

namespace {

const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);

bool any_note_contains(const std::vector<std::string>& notes,
                       const std::string& needle) {
    for (const auto& n : notes)
        if (n.find(needle) != std::string::npos)
            return true;
    return false;
}

GapSequence inverse_square_gaps(std::int64_t count) {
    const double zeta2 = 1.6449340668482264;
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    double mass = 0;
    for (std::int64_t n = 1; n <= count; ++n) {
        g.push_back(1.0 / (static_cast<double>(n) * static_cast<double>(n)) / zeta2);
        mass += g.back();
    }
    return GapSequence::explicit_prefix(std::move(g), mass);
}

} // namespace

TEST_CASE("middle-third gaps have the closed-form level sums") {
    auto g = middle_third_gaps(30);
    CHECK(g.is_block_constant());
    CHECK(g.gap(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g.gap(2) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(g.gap(3) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(g.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    auto stats = level_sums(g, 40);
    for (std::int64_t n = 0; n <= 40; ++n)
        CHECK(stats.log_s[static_cast<std::size_t>(n)] ==
              doctest::Approx(-static_cast<double>(n) * kLog3).epsilon(1e-12));
    CHECK_THROWS_AS((void)middle_third_gaps(0), ConfigError);
}

TEST_CASE("decreasing rearrangement lays tail sums out as points") {
    auto g = middle_third_gaps(10);
    auto fa = decreasing_rearrangement(g, 3, "mt");
    REQUIRE(fa.intervals.size() == 4);
    CHECK(fa.intervals[0].lo == 0.0);
    CHECK(fa.intervals[1].lo == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(fa.intervals[2].lo == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(fa.intervals[3].lo == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fa.intervals[3].hi == fa.intervals[3].lo);
    CHECK_THROWS_AS((void)decreasing_rearrangement(g, 0, "mt"), ConfigError);
}

TEST_CASE("log-squared decay points and dimension values") {
    CHECK(log_squared_decay_point(1) == 1.0);
    CHECK(log_squared_decay_point(2) ==
          doctest::Approx(std::exp(-kLog2 * kLog2)).epsilon(1e-15));
    CHECK(log_squared_decay_point(2) == doctest::Approx(0.618503).epsilon(1e-6));
    CHECK(log_squared_decay_phi(2) == doctest::Approx(9.3616).epsilon(1e-4));

    // the defining scale rule: x_n^{1+phi} equals 2 (4n)^{-(1+ln 4n)} ln(4n)
    for (std::int64_t n : {2, 3, 10, 100, 5000}) {
        double L = std::log(static_cast<double>(n));
        double M = std::log(4.0 * static_cast<double>(n));
        double lhs = (1.0 + log_squared_decay_phi(n)) * (-L * L);
        double rhs = kLog2 - (1.0 + M) * M + std::log(M);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }

    // phi(x_n) ln n approaches 1 + 2 ln 4 = 3.77259; the correction term
    // (ln^2 4 + ln 4 - ln 2 - ln ln(4n)) / ln n shrinks and changes sign
    double lim = 1.0 + 2.0 * std::log(4.0);
    double p4 = log_squared_decay_phi(10000) * std::log(1e4);
    double p6 = log_squared_decay_phi(1000000) * std::log(1e6);
    CHECK(p4 == doctest::Approx(3.80022).epsilon(1e-5));
    CHECK(p6 == doctest::Approx(3.76488).epsilon(1e-5));
    CHECK(std::abs(p6 - lim) < std::abs(p4 - lim));
    CHECK(p6 == doctest::Approx(lim).epsilon(3e-3));
    CHECK_THROWS_AS((void)log_squared_decay_phi(1), ConfigError);
}

TEST_CASE("log-squared decay gaps stay monotone far out") {
    CHECK(first_nonmonotone_decay_gap(100) == 0);
    CHECK(first_nonmonotone_decay_gap(100000) == 0);
}

TEST_CASE("log-squared decay set carries a valid dimension function") {
    auto set = log_squared_decay_set(400);
    CHECK(set.points.intervals.size() == 401);
    CHECK(set.points.intervals.back().hi == 1.0);
    CHECK(set.phi_floor == doctest::Approx(1.0 / (1.0 + 2.0 * std::log(4.0))));
    CHECK(set.phi_ceil == doctest::Approx(1.0 / (1.0 + kLog3)));

    std::vector<double> grid;
    for (std::int64_t n = 2; n <= 400; ++n) {
        double L = std::log(static_cast<double>(n));
        grid.push_back(-L * L);
    }
    CHECK(validate_dimension_function(set.phi, grid).empty());
    for (std::int64_t n : {2, 17, 399}) {
        double L = std::log(static_cast<double>(n));
        CHECK(set.phi.at_log(-L * L) ==
              doctest::Approx(log_squared_decay_phi(n)).epsilon(1e-12));
    }
}

TEST_CASE("dimension gap schedule places one burst and audits its depth") {
    auto phi1 = DimensionFunction::constant(0.02);
    auto phi2 = DimensionFunction::constant(0.01);
    auto rep = dimension_gap_schedule(phi1, phi2, 0.29, 0.30, 1.0, 11944, 14000);
    CHECK(rep.schedule.levels() == 14000);
    CHECK(rep.constants.at("N0") == 1493.0);
    CHECK(rep.constants.at("N1") == 20.0);
    CHECK(rep.constants.at("bursts") == 1.0);
    CHECK(rep.constants.at("last_burst_start") == 11944.0);
    CHECK(rep.constants.at("last_burst_len") == 123.0);
    CHECK(rep.constants.at("eps") == doctest::Approx(0.0717968).epsilon(1e-5));
    REQUIRE(rep.trail.size() == 3);
    CHECK(rep.trail[0].rule == "base");
    CHECK(rep.trail[0].len == 11944);
    CHECK(rep.trail[1].rule == "burst");
    CHECK(rep.trail[1].start == 11945);
    CHECK(rep.trail[1].len == 123);
    CHECK(rep.trail[2].len == 1933);
    CHECK(rep.targets.at("phi2_dim") == doctest::Approx(kLog2 / -std::log(0.30)));
    CHECK(rep.targets.at("phi1_dim_bound") ==
          doctest::Approx(0.570363).epsilon(1e-5));
    CHECK(any_note_contains(rep.notes, "does not fit"));

    // the burst length equals the realized depth of phi2 at its start
    auto stats = level_sums_from_ratios(rep.schedule);
    CHECK(depth_table(stats, phi2, 11944, 11944).at(11944) == 123);
}

TEST_CASE("dimension gap schedule rejects bad hypotheses") {
    auto phi1 = DimensionFunction::constant(0.02);
    auto phi2 = DimensionFunction::constant(0.01);
    CHECK_THROWS_AS(
        (void)dimension_gap_schedule(phi1, phi2, 0.31, 0.30, 1.0, 100, 200),
        ConfigError);
    // ratio spread beyond 1 + eps
    CHECK_THROWS_AS(
        (void)dimension_gap_schedule(phi1, phi2, 0.20, 0.30, 1.0, 11944, 14000),
        HypothesisViolated);
    // separation narrower than 1 + xi
    CHECK_THROWS_AS((void)dimension_gap_schedule(DimensionFunction::constant(0.015),
                                                 phi2, 0.29, 0.30, 1.0, 11944, 14000),
                    HypothesisViolated);
    // first burst below the sparsity gate
    CHECK_THROWS_AS(
        (void)dimension_gap_schedule(phi1, phi2, 0.29, 0.30, 1.0, 5000, 14000),
        HypothesisViolated);
}

TEST_CASE("family schedule hits one target with the instantiated constants") {
    auto rep = family_target_schedule({{0.5, 0.6}}, 0.55, 0.6, 36000, false);
    CHECK(rep.schedule.levels() == 36000);
    CHECK(rep.constants.at("I[p=0.5]") == 6.0);
    CHECK(rep.constants.at("J[p=0.5]") == 1055.0);
    CHECK(rep.constants.at("n_1") == 8440.0);
    CHECK(rep.constants.at("len_1") == 127.0);
    CHECK(rep.constants.at("m_1") == 34268.0);
    CHECK(rep.constants.at("pair_gate") == doctest::Approx(76.1688).epsilon(1e-4));
    CHECK(rep.targets.at("dim[p=0.5]") == 0.6);
    REQUIRE(rep.trail.size() == 3);
    CHECK(rep.trail[1].rule == "target");
    CHECK(rep.trail[1].start == 8441);
    CHECK(rep.trail[1].len == 127);
    CHECK(any_note_contains(rep.notes, "no constrained exponent pairs"));

    auto stats = level_sums_from_ratios(rep.schedule);
    auto phi = DimensionFunction::power_log(0.5);
    CHECK(depth_table(stats, phi, 8440, 8440).at(8440) == 127);
}

TEST_CASE("family schedule audits separation between ordered exponents") {
    auto rep = family_target_schedule({{0.6, 0.55}, {0.3, 0.58}}, 0.55, 0.6,
                                      1700000, false);
    CHECK(rep.constants.at("blocks") == 2.0);
    CHECK(rep.constants.at("J[p=0.6]") == 6233.0);
    CHECK(rep.constants.at("n_1") == 49864.0);
    CHECK(rep.constants.at("len_1") == 911.0);
    CHECK(rep.constants.at("n_2") == 1624800.0);
    CHECK(rep.constants.at("len_2") == 81.0);
    // the constrained-pair audits ran (and passed) for this ordering
    CHECK_FALSE(any_note_contains(rep.notes, "no constrained exponent pairs"));
}

TEST_CASE("family schedule pins runs of the base ratio when asked") {
    auto rep = family_target_schedule({{0.5, 0.6}}, 0.55, 0.6, 200000, true);
    CHECK(rep.constants.at("pin_runs") == 1.0);
    CHECK(rep.targets.at("quasi_assouad") == 0.55);
    bool found = false;
    for (const auto& row : rep.trail)
        if (row.rule == "pin") {
            found = true;
            CHECK(row.start == 68537);
            CHECK(row.len == 68536);
            CHECK(row.value == doctest::Approx(std::exp(-kLog2 / 0.55)));
        }
    CHECK(found);
}

TEST_CASE("family schedule validates targets and budget") {
    CHECK_THROWS_AS((void)family_target_schedule({}, 0.55, 0.6, 36000, false),
                    ConfigError);
    CHECK_THROWS_AS(
        (void)family_target_schedule({{0.5, 0.7}}, 0.55, 0.6, 36000, false),
        ConfigError); // target dimension above beta
    CHECK_THROWS_AS(
        (void)family_target_schedule({{1.5, 0.6}}, 0.55, 0.6, 36000, false),
        ConfigError);
    CHECK_THROWS_AS((void)family_target_schedule({{0.5, 0.6}, {0.5, 0.58}}, 0.55,
                                                 0.6, 36000, false),
                    ConfigError); // one exponent, two dimensions
    CHECK_THROWS_AS((void)family_target_schedule({{0.2, 0.56}, {0.4, 0.58}}, 0.55,
                                                 0.6, 36000, false),
                    ConfigError); // dimensions increase with the exponent
    CHECK_THROWS_AS(
        (void)family_target_schedule({{0.5, 0.6}}, 0.55, 0.6, 8000, false),
        BudgetExceeded); // first block cannot start below N
}

TEST_CASE("sparse burst schedule spaces bursts against the depth rule") {
    auto rule = [](std::int64_t n) {
        return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), 0.7)));
    };
    auto flen = [](std::int64_t n) {
        return std::max<std::int64_t>(
            2, static_cast<std::int64_t>(std::ceil(std::cbrt(static_cast<double>(n)) / 48.0)));
    };
    auto sb = sparse_burst_schedule(rule, flen, 200000);
    CHECK(sb.levels == 200000);
    CHECK(sb.report.constants.at("bursts") == 2.0);
    CHECK(sb.report.constants.at("N_1") == 161.0);
    CHECK(sb.report.constants.at("n_1") == 8760.0);
    CHECK(sb.report.constants.at("f_1") == 2.0);
    CHECK(sb.report.constants.at("n_2") == 70080.0);
    CHECK(sb.report.constants.at("levels_built") == 205146.0);
    CHECK(sb.report.constants.at("C") == doctest::Approx(1.0 / 18.0));
    CHECK(sb.report.targets.at("assouad_dim") == doctest::Approx(kLog2 / kLog3));
    CHECK(sb.report.targets.at("scaled_bound") ==
          doctest::Approx(kLog2 / (2 * kLog3)));

    // the derived dimension function reproduces the depth rule on the levels
    auto stats = level_sums_from_ratios(sb.report.schedule);
    for (std::int64_t n : {1, 100, 8760, 70081, 200000}) {
        double ls_n = stats.log_s[static_cast<std::size_t>(n)];
        double expect =
            stats.log_s[static_cast<std::size_t>(n + rule(n))] / ls_n - 1.0;
        CHECK(sb.phi.at_log(ls_n) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("depth-rule dimension function rejects rules that break scaling") {
    RatioSchedule sched;
    sched.log_r.assign(20, -kLog3);
    auto stats = level_sums_from_ratios(sched);
    auto phi = dimension_function_from_depth_rule(
        stats, [](std::int64_t) { return std::int64_t{2}; }, 1, 10);
    for (std::int64_t n = 1; n <= 10; ++n)
        CHECK(phi.at_log(-static_cast<double>(n) * kLog3) ==
              doctest::Approx(2.0 / static_cast<double>(n)).epsilon(1e-12));
    CHECK_THROWS_AS((void)dimension_function_from_depth_rule(
                        stats, [](std::int64_t n) { return n == 1 ? 5 : 1; }, 1, 10),
                    HypothesisViolated);
    CHECK_THROWS_AS((void)dimension_function_from_depth_rule(
                        stats, [](std::int64_t) { return std::int64_t{2}; }, 1, 19),
                    InsufficientTail);
}

TEST_CASE("block tree arrangement reproduces the level chain") {
    auto bt = block_tree_arrangement(middle_third_gaps(30), 0.75, 10, 0, 10);
    CHECK(bt.beta == doctest::Approx(std::pow(2.0, -4.0 / 3.0)).epsilon(1e-15));
    REQUIRE(bt.block_index.size() == 19);
    // i(j) = ceil(j * (4/3) log2 / log3), the dyadic offset reaching beta^j
    std::vector<std::int64_t> expect_i{1, 2,  3,  4,  5,  6,  6,  7,  8, 9,
                                       10, 11, 11, 12, 13, 14, 15, 16, 16};
    std::vector<std::int64_t> expect_J{1, 1, 1, 2, 2, 2, 1, 1, 1, 1,
                                       2, 2, 1, 1, 1, 1, 2, 2, 1};
    CHECK(bt.block_index == expect_i);
    CHECK(bt.block_repeat == expect_J);

    // separator mass per level against the frozen chain
    double diam = 0;
    for (std::size_t j = 1; j <= 19; ++j)
        diam += static_cast<double>(std::int64_t{1} << (j - 1)) *
                static_cast<double>(expect_J[j - 1]) *
                std::pow(3.0, -static_cast<double>(11 + expect_i[j - 1]));
    CHECK(bt.cluster_diameter == doctest::Approx(diam).epsilon(1e-12));
    CHECK(bt.cluster_diameter ==
          doctest::Approx(bt.cluster.intervals.back().hi -
                          bt.cluster.intervals.front().lo)
              .epsilon(1e-12));

    CHECK(bt.whole.intervals.size() == 1024 + (std::size_t{1} << 19));
    CHECK(bt.cluster.intervals.size() == (std::size_t{1} << 19));
    CHECK(bt.whole.intervals.back().hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bt.report.constants.at("separator") == doctest::Approx(1.0 / 3.0));
    CHECK(bt.report.constants.at("gamma") >= bt.report.constants.at("c1"));
    CHECK(bt.report.constants.at("min_separation") ==
          doctest::Approx(std::pow(3.0, -27.0)).epsilon(1e-12));
    CHECK(bt.gaps_used.at(16) == 524288);
    CHECK(bt.report.constants.at("residual_leaf") > 0);
    CHECK(any_note_contains(bt.report.notes, "resolution floor"));

    // cluster points are separated by at least the deepest spacer, up to
    // a few ulps at coordinate magnitude one (the cluster sits near 1.0)
    const auto& pts = bt.cluster.intervals;
    double min_gap = 1.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        min_gap = std::min(min_gap, pts[i].lo - pts[i - 1].hi);
    CHECK(min_gap >= std::pow(3.0, -27.0) - 1e-15);
    CHECK(min_gap > 0);
}

TEST_CASE("block tree arrangement enforces resolution and budget limits") {
    CHECK_THROWS_AS(
        (void)block_tree_arrangement(middle_third_gaps(30), 0.75, 10, 21, 10),
        ResolutionExceeded);
    CHECK_THROWS_AS(
        (void)block_tree_arrangement(middle_third_gaps(30), 0.3, 10, 0, 10),
        HypothesisViolated); // below the block-ratio dimension floor

    // slowly decaying blocks exhaust a dyadic block's gap budget
    const double lq = std::log(1.0 / 2.2);
    const double scale = std::log(1.0 / 5.0);
    std::vector<double> la;
    for (int m = 0; m < 20; ++m)
        la.push_back(static_cast<double>(m + 1) * lq + scale);
    auto slow = GapSequence::block_constant(la, lq);
    CHECK_THROWS_AS((void)block_tree_arrangement(slow, 0.95, 1, 14, 8),
                    GapBudgetExceeded);
    auto ok = block_tree_arrangement(slow, 0.95, 1, 13, 8);
    CHECK(ok.whole.intervals.size() == 256 + (std::size_t{1} << 13));
    CHECK(ok.whole.intervals.back().hi == doctest::Approx(1.0).epsilon(1e-9));

    // explicit block range too short for the chain
    std::vector<double> short_la;
    for (int m = 0; m < 12; ++m)
        short_la.push_back(-static_cast<double>(m + 1) * kLog3);
    auto short_gaps = GapSequence::block_constant(short_la, std::nullopt);
    CHECK_THROWS_AS((void)block_tree_arrangement(short_gaps, 0.75, 10, 5, 8),
                    InsufficientTail);
}

TEST_CASE("subsequence split keeps towers and samples at the power law") {
    auto gaps = inverse_square_gaps(std::int64_t{1} << 20);
    auto sp = subsequence_split(gaps, 0.6, 0.5, 6);
    // sigma is near ln n / (2 ln n + ln zeta(2)) at the window top n = 2^20
    CHECK(sp.sigma == doctest::Approx(0.4912186).epsilon(2e-4));
    CHECK(sp.gamma == doctest::Approx(0.6107260).epsilon(2e-4));
    CHECK(sp.gamma * sp.sigma == doctest::Approx(0.3).epsilon(1e-12));
    std::vector<std::int64_t> expect{2, 4, 6, 9, 16, 18};
    CHECK(sp.consumed == expect);
    CHECK(sp.report.constants.at("towers_hit") == 3.0);
    CHECK(sp.b.gap(1) == doctest::Approx(0.151982).epsilon(1e-5));
    CHECK(sp.report.targets.at("box_dim_b") == doctest::Approx(0.3).epsilon(1e-12));
    // index 1 is never consumed, so the remainder starts at a_1
    CHECK(sp.remainder.gap(1) == doctest::Approx(gaps.gap(1)).epsilon(1e-15));

    auto sp2 = subsequence_split(gaps, 0.6, 0.5, 10000);
    CHECK(sp2.report.constants.at("samples") > 4500);
    CHECK(sp2.report.constants.at("samples") < 5000);
    CHECK(sp2.report.constants.at("towers_hit") == 4.0);
    CHECK(any_note_contains(sp2.report.notes, "truncated"));
    CHECK(sp2.report.constants.at("comparability") > 0.25);

    CHECK_THROWS_AS((void)subsequence_split(gaps, 0.99, 0.5, 10),
                    HypothesisViolated); // d beyond sigma/(1-theta)
    CHECK_THROWS_AS((void)subsequence_split(gaps, 0.6, 1.5, 10), ConfigError);
}

TEST_CASE("random rearrangement is a seeded permutation") {
    auto a = random_rearrangement(42, 6);
    auto b = random_rearrangement(42, 6);
    auto c = random_rearrangement(43, 6);
    CHECK(a.order == b.order);
    CHECK(a.order != c.order);
    CHECK(a.order.size() == 63);
    std::vector<bool> seen(64, false);
    for (auto idx : a.order) {
        REQUIRE(idx >= 1);
        REQUIRE(idx <= 63);
        CHECK_FALSE(seen[static_cast<std::size_t>(idx)]);
        seen[static_cast<std::size_t>(idx)] = true;
    }
    CHECK_THROWS_AS((void)random_rearrangement(1, 0), ConfigError);
}

TEST_CASE("tree realizations conserve mass for any permutation") {
    auto g = middle_third_gaps(12);
    auto canonical = cantor_tree_approximation(g, 6, "mt");
    REQUIRE(canonical.intervals.size() == 64);
    CHECK(canonical.intervals.front().lo == 0.0);
    CHECK(canonical.intervals.back().hi == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& iv : canonical.intervals)
        CHECK(iv.length() == doctest::Approx(std::pow(3.0, -6.0)).epsilon(1e-12));

    // canonical tree of middle-third gaps is the central construction
    auto central = central_cantor_approximation(level_sums(g, 6), 6, "mt");
    REQUIRE(central.intervals.size() == 64);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(canonical.intervals[i].lo ==
              doctest::Approx(central.intervals[i].lo).epsilon(1e-12));
        CHECK(canonical.intervals[i].hi ==
              doctest::Approx(central.intervals[i].hi).epsilon(1e-12));
    }

    auto arr = random_rearrangement(7, 6);
    auto shuffled = realize_arrangement(g, arr, 6, "mt");
    REQUIRE(shuffled.intervals.size() == 64);
    CHECK(shuffled.intervals.back().hi == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& iv : shuffled.intervals)
        CHECK(iv.length() == doctest::Approx(std::pow(3.0, -6.0)).epsilon(1e-12));

    Arrangement dec;
    dec.kind = Arrangement::Kind::DecreasingOrder;
    auto by_size = realize_arrangement(g, dec, 6, "mt");
    auto direct = decreasing_rearrangement(g, 64, "mt");
    REQUIRE(by_size.intervals.size() == direct.intervals.size());
    CHECK(by_size.intervals[1].lo == doctest::Approx(direct.intervals[1].lo));

    Arrangement block;
    block.kind = Arrangement::Kind::BlockTree;
    CHECK_THROWS_AS((void)realize_arrangement(g, block, 6, "mt"), ConfigError);

    auto expl = inverse_square_gaps(100);
    CHECK_THROWS_AS((void)cantor_tree_approximation(expl, 4, "sq"), ConfigError);
}

TEST_CASE("central approximation guards stage limits") {
    RatioSchedule sched;
    sched.log_r.assign(25, std::log(0.25));
    auto stats = level_sums_from_ratios(sched);
    CHECK_THROWS_AS((void)central_cantor_approximation(stats, 23, "q"), ConfigError);
    CHECK_THROWS_AS((void)central_cantor_approximation(stats, 22, "q"),
                    ResolutionExceeded);
    auto fa = central_cantor_approximation(stats, 4, "q");
    CHECK(fa.intervals.size() == 16);
    CHECK(fa.intervals.back().hi == doctest::Approx(1.0).epsilon(1e-12));
    RatioSchedule shallow;
    shallow.log_r.assign(3, std::log(0.25));
    CHECK_THROWS_AS((void)central_cantor_approximation(
                        level_sums_from_ratios(shallow), 4, "q"),
                    InsufficientTail);
}

TEST_CASE("trail partition check rejects gaps and overlaps") {
    ConstructionReport rep;
    rep.name = "unit";
    rep.trail = {{1, 3, "a", 0.1}, {5, 2, "b", 0.2}};
    CHECK_THROWS_AS(rep.check_trail_partition(), HypothesisViolated);
    rep.trail = {{1, 3, "a", 0.1}, {4, 2, "b", 0.2}};
    CHECK_NOTHROW(rep.check_trail_partition());
    rep.schedule.log_r.assign(7, std::log(0.3));
    CHECK_THROWS_AS(rep.check_trail_partition(), HypothesisViolated);
    rep.trail.push_back({6, 2, "c", 0.3});
    CHECK_NOTHROW(rep.check_trail_partition());
}
