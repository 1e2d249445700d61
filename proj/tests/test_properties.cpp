#include <doctest.h>

#include <cmath>
#include <vector>

#include "phidim/estimators.hpp"
#include "phidim/level_stats.hpp"
#include "phidim/oracle.hpp"
#include "phidim/property_suites.hpp"

using namespace phidim;

TEST_CASE("randomized invariant suites run clean") {
    auto outcomes = phidim_properties::run_property_suites(0x5eed, 1000);
    REQUIRE(outcomes.size() == 7);
    for (const auto& s : outcomes) {
        CAPTURE(s.name);
        CAPTURE(s.first_failure);
        CHECK(s.instances == 1000);
        CHECK(s.violations == 0);
    }
}

namespace {

FiniteApproximation scaled_central_stage(double ratio, std::int64_t stage,
                                         double scale, double shift,
                                         const char* id) {
    std::vector<Interval> cur{{0.0, 1.0}};
    double len = 1.0;
    for (std::int64_t k = 0; k < stage; ++k) {
        len *= ratio;
        std::vector<Interval> next;
        next.reserve(cur.size() * 2);
        for (const auto& iv : cur) {
            next.push_back({iv.lo, iv.lo + len});
            next.push_back({iv.hi - len, iv.hi});
        }
        cur = std::move(next);
    }
    for (auto& iv : cur) {
        iv.lo = shift + scale * iv.lo;
        iv.hi = shift + scale * iv.hi;
    }
    return make_approximation(std::move(cur), stage, id, "central");
}

} // namespace

TEST_CASE("empirical estimate of a separated union is the max of the parts") {
    auto E = scaled_central_stage(1.0 / 3.0, 4, 0.4, 0.0, "third");
    auto F = scaled_central_stage(1.0 / 4.0, 4, 0.4, 0.6, "quarter");
    std::vector<Interval> both;
    for (const auto& iv : E.intervals)
        both.push_back(iv);
    for (const auto& iv : F.intervals)
        both.push_back(iv);
    auto U = make_approximation(std::move(both), 4, "third+quarter", "union");

    auto phi = DimensionFunction::constant(0.15);
    std::vector<double> grid{0.08, 0.05, 0.03, 0.02};
    auto eE = empirical_phi_dim(E, phi, grid, ZSampleRule::AllEndpoints,
                                BoundMode::Upper);
    auto eF = empirical_phi_dim(F, phi, grid, ZSampleRule::AllEndpoints,
                                BoundMode::Upper);
    auto eU = empirical_phi_dim(U, phi, grid, ZSampleRule::AllEndpoints,
                                BoundMode::Upper);
    CHECK(eE.dropped_R.empty());
    CHECK(eF.dropped_R.empty());
    CHECK(eU.dropped_R.empty());
    CHECK(eU.value == doctest::Approx(std::max(eE.value, eF.value)).epsilon(1e-12));
    // the denser component dominates the union estimate
    CHECK(eU.value == doctest::Approx(eE.value).epsilon(1e-12));
    CHECK(eE.value > eF.value);
}
