#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "phidim/dimension_function.hpp"
#include "phidim/types.hpp"

namespace phidim {

/// A finite stage of a subset of the ambient interval: sorted closed
/// intervals with disjoint interiors. Degenerate intervals (lo == hi)
/// represent isolated points.
struct FiniteApproximation {
    std::vector<Interval> intervals;
    std::int64_t level = 0;
    std::string gap_id;      // which gap sequence the stage came from
    std::string arrangement; // layout descriptor (tree order, decreasing, ...)

    /// Twice the smallest positive feature (interval length or gap between
    /// consecutive intervals). Radii below this produce saturated counts
    /// that say nothing about the underlying set; callers should drop them.
    double resolution_floor() const;
    double leftmost() const;
    double rightmost() const;
};

/// Validates ordering, interior-disjointness and ambient containment.
FiniteApproximation make_approximation(std::vector<Interval> intervals,
                                       std::int64_t level,
                                       std::string gap_id,
                                       std::string arrangement);

/// Least number of closed balls of radius r covering approx intersected
/// with the closed ball [z-R, z+R]. Greedy left-to-right placement (each
/// ball's left edge sits at the leftmost uncovered point), which is optimal
/// on the line. Empty intersection gives 0.
std::int64_t covering_number(const FiniteApproximation& approx, double z,
                             double R, double r);

/// Covering number of the whole approximation (no window).
std::int64_t covering_number_global(const FiniteApproximation& approx, double r);

/// Maximal number of points of approx within [z-R, z+R] that are pairwise
/// more than 2r apart (equivalently: disjoint closed r-balls centred in the
/// window). Greedy leftmost selection.
std::int64_t packing_number(const FiniteApproximation& approx, double z,
                            double R, double r);

/// Minimal covering by explicit search over a dominating family of ball
/// placements (ball left edge at the leftmost uncovered point or flush with
/// an interval's right end). Exists to cross-check the greedy sweep; only
/// accepts small instances.
std::int64_t covering_number_exhaustive(const FiniteApproximation& approx,
                                        double z, double R, double r);

enum class ZSampleRule {
    AllEndpoints,     // every interval endpoint is a candidate centre
    SampledEndpoints, // seeded uniform subsample of the endpoints
};

struct ScatterRow {
    double R = 0;
    double r = 0;
    double log_R_over_r = 0;
    std::int64_t stat = 0;
    BoundMode mode = BoundMode::Upper;
};

struct EmpiricalEstimate {
    double value = 0; // extremal log(stat)/log(R/r) over scatter rows
    double slope = 0; // least-squares slope of log(stat) on log(R/r)
    std::vector<ScatterRow> scatter;
    // Grid entries that produced no scatter row: below the resolution floor,
    // or with every admissible partner radius below it.
    std::vector<double> dropped_R;
    BoundMode mode = BoundMode::Upper;
};

/// Empirical dimension estimate from covering counts. For each window
/// radius R from the descending grid, admissible ball radii r are the grid
/// entries at most R^{1+phi(R)} together with that cap itself; the per-pair
/// statistic is the extremal covering count over candidate centres. Pairs
/// with log(R/r) < 1e-9 carry no slope information and are skipped.
EmpiricalEstimate empirical_phi_dim(const FiniteApproximation& approx,
                                    const DimensionFunction& phi,
                                    const std::vector<double>& R_grid,
                                    ZSampleRule rule, BoundMode mode,
                                    std::uint64_t seed = 0,
                                    std::int64_t sample_count = 64);

struct ViolationRow {
    double z = 0;
    double R = 0;
    double r = 0;
    double lhs = 0;
    double rhs = 0;
};

/// Checks N_r(E ∩ B(z,R)) <= 64 N_r(D ∩ B(0,R)) on the given triples,
/// where D is the decreasing arrangement of the same gap sequence.
/// Returns one row per violated triple (empty means the inequality held).
std::vector<ViolationRow> check_prop_dec(
    const FiniteApproximation& E, const FiniteApproximation& D,
    const std::vector<std::array<double, 3>>& triples);

/// Checks 1/16 <= N_r(F)/N_r(G) <= 16 for global covering numbers of two
/// arrangements of the same gap sequence, per radius in the grid.
std::vector<ViolationRow> check_lemma_box(const FiniteApproximation& F,
                                          const FiniteApproximation& G,
                                          const std::vector<double>& r_grid);

} // namespace phidim
