#pragma once

// Randomized invariant suites shared by the unit tests and the verification
// binary. Each suite draws seeded instances and counts violations; a clean
// run returns zero for every suite. Instance shapes stay small so a full
// thousand-instance sweep finishes in seconds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phidim/dimension_function.hpp"
#include "phidim/estimators.hpp"
#include "phidim/level_stats.hpp"
#include "phidim/oracle.hpp"

namespace phidim_properties {

struct SuiteOutcome {
    std::string name;
    std::int64_t instances = 0;
    std::int64_t violations = 0;
    std::string first_failure; // empty when the suite was clean
};

namespace detail {

using namespace phidim;

inline RatioSchedule random_schedule(std::mt19937_64& rng, std::int64_t levels,
                                     double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    RatioSchedule s;
    s.log_r.reserve(static_cast<std::size_t>(levels));
    for (std::int64_t i = 0; i < levels; ++i)
        s.log_r.push_back(u(rng));
    return s;
}

inline DimensionFunction random_phi(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> uc(0.05, 1.5);
    std::uniform_real_distribution<double> up(0.25, 0.85);
    std::uniform_real_distribution<double> us(0.3, 1.0);
    switch (kind(rng)) {
    case 0: return DimensionFunction::constant(uc(rng));
    case 1: return DimensionFunction::power_log(up(rng));
    default: return DimensionFunction::power_log(up(rng)).scaled(us(rng));
    }
}

inline FiniteApproximation random_approximation(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(3, 40);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution point(0.5);
    int n = count(rng);
    std::vector<double> ends;
    ends.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i)
        ends.push_back(u(rng));
    std::sort(ends.begin(), ends.end());
    std::vector<Interval> ivs;
    for (int i = 0; i < n; ++i) {
        double lo = ends[static_cast<std::size_t>(2 * i)];
        double hi = ends[static_cast<std::size_t>(2 * i + 1)];
        if (point(rng))
            hi = lo;
        if (!ivs.empty() && lo <= ivs.back().hi)
            continue; // keep interiors disjoint under the random draw
        ivs.push_back({lo, hi});
    }
    return make_approximation(std::move(ivs), 0, "random", "explicit");
}

template <typename Body>
SuiteOutcome run_suite(const std::string& name, std::uint64_t base_seed,
                       std::int64_t instances, Body&& body) {
    SuiteOutcome out;
    out.name = name;
    out.instances = instances;
    for (std::int64_t i = 0; i < instances; ++i) {
        std::mt19937_64 rng(base_seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
        std::string why = body(rng);
        if (!why.empty()) {
            ++out.violations;
            if (out.first_failure.empty())
                out.first_failure = "instance " + std::to_string(i) + ": " + why;
        }
    }
    return out;
}

// Suite 1: pointwise-larger dimension functions admit fewer (k, n) pairs,
// so the upper estimate can only drop and the lower estimate only rise.
inline SuiteOutcome suite_pair_monotonicity(std::uint64_t seed, std::int64_t m) {
    return run_suite("pair-set monotonicity", seed, m, [](std::mt19937_64& rng) -> std::string {
        std::uniform_int_distribution<std::int64_t> nlev(80, 300);
        std::uniform_real_distribution<double> shrink(0.4, 0.95);
        std::int64_t N = nlev(rng);
        auto stats = level_sums_from_ratios(random_schedule(rng, N, 0.2, 0.45));
        auto w = ScanWindow::defaults(N);
        auto phi2 = random_phi(rng);
        auto phi1 = phi2.scaled(shrink(rng)); // phi1 <= phi2 pointwise
        auto d1 = depth_table(stats, phi1, w.k0, w.K);
        auto d2 = depth_table(stats, phi2, w.k0, w.K);
        auto up1 = upper_phi_dim(stats, d1, w);
        auto up2 = upper_phi_dim(stats, d2, w);
        auto lo1 = lower_phi_dim(stats, d1, w);
        auto lo2 = lower_phi_dim(stats, d2, w);
        if (up1.value < up2.value - 1e-12)
            return "upper rose from " + std::to_string(up1.value) + " to " +
                   std::to_string(up2.value);
        if (lo1.value > lo2.value + 1e-12)
            return "lower fell from " + std::to_string(lo1.value) + " to " +
                   std::to_string(lo2.value);
        return {};
    });
}

// Suite 2: min over the same admissible pair set never exceeds the max.
inline SuiteOutcome suite_lower_leq_upper(std::uint64_t seed, std::int64_t m) {
    return run_suite("lower <= upper", seed, m, [](std::mt19937_64& rng) -> std::string {
        std::uniform_int_distribution<std::int64_t> nlev(80, 300);
        std::int64_t N = nlev(rng);
        auto stats = level_sums_from_ratios(random_schedule(rng, N, 0.15, 0.48));
        auto w = ScanWindow::defaults(N);
        auto phi = random_phi(rng);
        auto d = depth_table(stats, phi, w.k0, w.K);
        auto lo = lower_phi_dim(stats, d, w);
        auto up = upper_phi_dim(stats, d, w);
        if (lo.value > up.value)
            return "lower " + std::to_string(lo.value) + " above upper " +
                   std::to_string(up.value);
        return {};
    });
}

// Suite 3: on constant-ratio schedules every beta(k, n) and every box
// quotient equals log 2 / |log q|, so the sandwich chain is an equality.
inline SuiteOutcome suite_box_sandwich(std::uint64_t seed, std::int64_t m) {
    return run_suite("box sandwich", seed, m, [](std::mt19937_64& rng) -> std::string {
        std::uniform_int_distribution<std::int64_t> nlev(100, 400);
        std::uniform_real_distribution<double> uq(0.1, 0.45);
        std::int64_t N = nlev(rng);
        double q = uq(rng);
        RatioSchedule sched;
        sched.log_r.assign(static_cast<std::size_t>(N), std::log(q));
        auto stats = level_sums_from_ratios(sched);
        auto w = ScanWindow::defaults(N);
        auto phi = random_phi(rng);
        auto d = depth_table(stats, phi, w.k0, w.K);
        auto lo = lower_phi_dim(stats, d, w);
        auto up = upper_phi_dim(stats, d, w);
        auto box = box_dims_cantor(stats, w);
        const double tol = 1e-9;
        if (!(lo.value <= box.lower + tol && box.lower <= box.upper + tol &&
              box.upper <= up.value + tol))
            return "chain broke: " + std::to_string(lo.value) + " / " +
                   std::to_string(box.lower) + " / " + std::to_string(box.upper) +
                   " / " + std::to_string(up.value);
        double expect = std::log(2.0) / -std::log(q);
        if (std::abs(up.value - expect) > 1e-9)
            return "upper off closed form by " + std::to_string(up.value - expect);
        return {};
    });
}

// Suite 4: covering counts shrink in r, grow in R, and are subadditive
// over a split of the interval family.
inline SuiteOutcome suite_covering_monotone(std::uint64_t seed, std::int64_t m) {
    return run_suite("covering monotonicity and subadditivity", seed, m,
                     [](std::mt19937_64& rng) -> std::string {
        auto approx = random_approximation(rng);
        std::uniform_real_distribution<double> uz(0.0, 1.0);
        std::uniform_real_distribution<double> uR(0.05, 0.6);
        std::uniform_real_distribution<double> ur(0.002, 0.2);
        double z = uz(rng);
        double R2 = uR(rng);
        double R1 = R2 * 0.6;
        double ra = ur(rng), rb = ur(rng);
        double r1 = std::min(ra, rb), r2 = std::max(ra, rb);
        if (covering_number(approx, z, R2, r1) < covering_number(approx, z, R2, r2))
            return "count grew as r grew";
        if (covering_number(approx, z, R1, r1) > covering_number(approx, z, R2, r1))
            return "count fell as R grew";
        std::vector<Interval> odd, even;
        for (std::size_t i = 0; i < approx.intervals.size(); ++i)
            (i % 2 ? odd : even).push_back(approx.intervals[i]);
        if (odd.empty() || even.empty())
            return {};
        auto A = make_approximation(std::move(even), 0, "random", "even");
        auto B = make_approximation(std::move(odd), 0, "random", "odd");
        if (covering_number(approx, z, R2, r1) >
            covering_number(A, z, R2, r1) + covering_number(B, z, R2, r1))
            return "union count above the split sum";
        return {};
    });
}

// Suite 5: packing and covering comparability with M = 2,
// N_r / 2 <= P_r <= 2 N_{r/2}.
inline SuiteOutcome suite_packing_covering(std::uint64_t seed, std::int64_t m) {
    return run_suite("packing/covering comparability", seed, m,
                     [](std::mt19937_64& rng) -> std::string {
        auto approx = random_approximation(rng);
        std::uniform_real_distribution<double> uz(0.0, 1.0);
        std::uniform_real_distribution<double> uR(0.05, 0.6);
        std::uniform_real_distribution<double> ur(0.002, 0.2);
        double z = uz(rng), R = uR(rng), r = ur(rng);
        auto cover = covering_number(approx, z, R, r);
        auto pack = packing_number(approx, z, R, r);
        auto cover_half = covering_number(approx, z, R, r / 2);
        if (2 * pack < cover)
            return "packing below half the covering";
        if (pack > 2 * cover_half)
            return "packing above twice the half-radius covering";
        return {};
    });
}

// Suite 6: depth shift, n + m + depth(n + m) >= n + depth(n). Checking
// m = 1 everywhere implies the general form; a sampled larger m is checked
// directly as well.
inline SuiteOutcome suite_depth_shift(std::uint64_t seed, std::int64_t m) {
    return run_suite("depth shift", seed, m, [](std::mt19937_64& rng) -> std::string {
        std::uniform_int_distribution<std::int64_t> nlev(60, 240);
        std::int64_t N = nlev(rng);
        auto stats = level_sums_from_ratios(random_schedule(rng, N, 0.15, 0.48));
        auto phi = random_phi(rng);
        std::int64_t last = N / 2;
        auto d = depth_table(stats, phi, 1, last);
        std::uniform_int_distribution<std::int64_t> um(2, last / 2);
        std::int64_t big_m = um(rng);
        for (std::int64_t n = 1; n + 1 <= last; ++n) {
            auto dn = d.at(n);
            auto dn1 = d.at(n + 1);
            if (dn == kDepthUnresolved || dn1 == kDepthUnresolved)
                continue;
            if (n + 1 + dn1 < n + dn)
                return "depth dropped by more than the shift at n = " +
                       std::to_string(n);
            if (n + big_m <= last && d.at(n + big_m) != kDepthUnresolved &&
                n + big_m + d.at(n + big_m) < n + dn)
                return "depth shift failed for m = " + std::to_string(big_m);
        }
        return {};
    });
}

// Suite 7: when every ratio lies in [tau, rho], the realized depth brackets
// the dimension function,
// (depth(n)-1)/n * log(rho)/log(tau) <= Phi(s_n) <= depth(n)/n * log(tau)/log(rho).
inline SuiteOutcome suite_depth_bracket(std::uint64_t seed, std::int64_t m) {
    return run_suite("depth bracket", seed, m, [](std::mt19937_64& rng) -> std::string {
        std::uniform_int_distribution<std::int64_t> nlev(80, 240);
        std::uniform_real_distribution<double> utau(0.1, 0.3);
        std::uniform_real_distribution<double> uspread(1.05, 1.5);
        std::int64_t N = nlev(rng);
        double tau = utau(rng);
        double rho = std::min(0.49, tau * uspread(rng));
        auto stats = level_sums_from_ratios(random_schedule(rng, N, tau, rho));
        auto phi = random_phi(rng);
        std::int64_t last = N / 2;
        auto d = depth_table(stats, phi, 1, last);
        double lr = std::log(rho), lt = std::log(tau);
        for (std::int64_t n = 1; n <= last; ++n) {
            auto dn = d.at(n);
            if (dn == kDepthUnresolved)
                continue;
            double val = phi.at_log(stats.log_s[static_cast<std::size_t>(n)]);
            double below = (static_cast<double>(dn - 1) / static_cast<double>(n)) * (lr / lt);
            double above = (static_cast<double>(dn) / static_cast<double>(n)) * (lt / lr);
            if (val < below - 1e-9 || val > above + 1e-9)
                return "bracket missed at n = " + std::to_string(n);
        }
        return {};
    });
}

} // namespace detail

inline std::vector<SuiteOutcome> run_property_suites(std::uint64_t base_seed,
                                                     std::int64_t instances) {
    using namespace detail;
    return {
        suite_pair_monotonicity(base_seed + 1, instances),
        suite_lower_leq_upper(base_seed + 2, instances),
        suite_box_sandwich(base_seed + 3, instances),
        suite_covering_monotone(base_seed + 4, instances),
        suite_packing_covering(base_seed + 5, instances),
        suite_depth_shift(base_seed + 6, instances),
        suite_depth_bracket(base_seed + 7, instances),
    };
}

} // namespace phidim_properties
